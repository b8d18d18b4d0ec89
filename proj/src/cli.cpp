#include "qgossip/cli.hpp"

#include <cstdlib>
#include <filesystem>

#include "qgossip/evolution.hpp"
#include "qgossip/io.hpp"

namespace qgossip::cli {

namespace fs = std::filesystem;

std::string resolve_out_path(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv("QGOSSIP_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(dir) / p).string();
}

namespace {

// "out.csv" -> "out.k3.csv" when several series go to one base path.
std::string path_with_k(const std::string& path, int k) {
  fs::path p(path);
  const std::string ext = p.extension().string();
  fs::path stem = p;
  stem.replace_extension();
  return stem.string() + ".k" + std::to_string(k) + ext;
}

int fail(std::ostream& err, const std::string& message) {
  err << "error: " << message << "\n";
  return 1;
}

std::vector<QubitState> init_states_or_throw(const ExperimentConfig& config) {
  if (config.init_spec.empty()) throw std::invalid_argument("--init is required");
  return io::parse_init_spec(config.init_spec);
}

Schedule deterministic_schedule_from_graph(const GeneralizedGraph& g) {
  std::vector<ScheduleItem> items;
  for (const auto& edge : g.edges()) items.push_back({edge, 0});
  return Schedule::deterministic(g.node_count(), std::move(items));
}

// --schedule wins over --graph/--k/--seed; --graph builds the round-robin
// schedule over the graph's edges with canonical cycles.
std::optional<Schedule> explicit_schedule(const ExperimentConfig& config, int n) {
  if (!config.schedule_path.empty()) {
    Schedule s = io::load_schedule(config.schedule_path);
    if (s.n != n) throw std::invalid_argument("schedule 'n' disagrees with the init spec");
    return s;
  }
  if (!config.graph_path.empty()) {
    const auto graph = io::load_graph(config.graph_path);
    if (graph.node_count() != n)
      throw std::invalid_argument("graph node count disagrees with the init spec");
    return deterministic_schedule_from_graph(graph);
  }
  return std::nullopt;
}

}  // namespace

int cmd_simulate_reduced(const ExperimentConfig& config, std::ostream& err) {
  try {
    const auto init = init_states_or_throw(config);
    const int n = static_cast<int>(init.size());
    if (config.n != 0 && config.n != n)
      throw std::invalid_argument("--n disagrees with the init spec length");
    if (config.out_path.empty()) throw std::invalid_argument("--out is required");
    if (config.steps < 0) throw std::invalid_argument("--steps must be non-negative");

    std::vector<std::pair<std::string, std::string>> outputs;
    const auto schedule = explicit_schedule(config, n);

    if (schedule && schedule->mode == Schedule::Mode::deterministic) {
      MetricSpec metric;
      metric.kind = MetricSpec::Kind::reduced_dispersion;
      metric.record_every = config.record_every;
      const Trajectory traj = run_reduced(*schedule, init, config.steps, metric);
      Series series;
      series.t = traj.steps;
      series.value = traj.values;
      series.stderr_.assign(traj.values.size(), 0.0);
      outputs.emplace_back(resolve_out_path(config.out_path), io::series_to_csv(series));
    } else {
      std::vector<int> k_values = config.k_values;
      std::optional<std::uint64_t> seed = config.seed;
      if (schedule) {  // random-model schedule file
        k_values = {schedule->k};
        seed = schedule->seed;
      }
      if (k_values.empty()) throw std::invalid_argument("--k is required");
      if (!config.exact && !seed)
        throw std::invalid_argument("--seed is required in Monte Carlo mode");
      const bool multi = k_values.size() > 1;
      for (int k : k_values) {
        Series series =
            config.exact
                ? exact_dispersion_series(init, k, config.steps)
                : mc_dispersion_series(init, k, config.steps, config.trials, *seed,
                                       config.record_every);
        const std::string path = multi ? path_with_k(config.out_path, k) : config.out_path;
        outputs.emplace_back(resolve_out_path(path), io::series_to_csv(series));
      }
    }

    for (const auto& [path, content] : outputs) io::write_file(path, content);
    return 0;
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

int cmd_simulate_full(const ExperimentConfig& config, std::ostream& err) {
  try {
    const auto init = init_states_or_throw(config);
    const int n = static_cast<int>(init.size());
    if (config.n != 0 && config.n != n)
      throw std::invalid_argument("--n disagrees with the init spec length");
    if (config.out_path.empty()) throw std::invalid_argument("--out is required");
    if (n > config.qubit_cap)
      throw std::invalid_argument("qubit count exceeds the full-state cap (--cap-n)");
    const auto rho0 = product_state(init, config.qubit_cap);

    std::vector<std::pair<std::string, std::string>> outputs;
    io::json sidecar;
    sidecar["n"] = n;
    sidecar["steps"] = config.steps;

    const auto schedule = explicit_schedule(config, n);
    if (schedule && schedule->mode == Schedule::Mode::deterministic) {
      // Deterministic dynamics: error against the generated-subgroup limit.
      std::vector<Permutation> generators;
      for (const auto& item : schedule->items)
        generators.push_back(k_cycle_by_rank(item.edge, n, item.cycle_index));
      const auto group = generate_subgroup(generators);
      const auto rho_inf = limit_state(rho0, group);

      MetricSpec metric;
      metric.kind = MetricSpec::Kind::distance_to_reference;
      metric.reference = rho_inf.matrix();
      metric.record_every = config.record_every;
      const Trajectory traj = run_full(*schedule, rho0, config.steps, metric);
      Series series;
      series.t = traj.steps;
      series.value = traj.values;
      series.stderr_.assign(traj.values.size(), 0.0);

      sidecar["mode"] = "deterministic";
      sidecar["schedule"] = io::schedule_to_json(*schedule);
      sidecar["group_order"] = group.order();
      sidecar["generators"] = io::json::array();
      for (const auto& g : generators) sidecar["generators"].push_back(io::permutation_to_json(g));
      sidecar["limit_state"] = io::density_to_json(rho_inf, n <= 5);

      outputs.emplace_back(resolve_out_path(config.out_path), io::series_to_csv(series));
    } else {
      std::vector<int> k_values = config.k_values;
      std::optional<std::uint64_t> seed = config.seed;
      if (schedule) {  // random-model schedule file
        k_values = {schedule->k};
        seed = schedule->seed;
      }
      if (k_values.size() != 1)
        throw std::invalid_argument("simulate-full needs exactly one --k");
      if (!seed) throw std::invalid_argument("--seed is required");
      if (config.trials < 1) throw std::invalid_argument("--trials must be positive");
      const int k = k_values.front();

      const auto group = generate_subgroup(enumerate_k_cycles(n, k));
      const auto rho_inf = limit_state(rho0, group);
      const auto per_trial = mc_error_trajectories(rho0, k, config.steps, config.trials,
                                                   *seed, rho_inf, config.record_every);
      const auto points = series_record_points(config.steps, config.record_every);
      const Series series = series_from_trials(points, per_trial);

      sidecar["mode"] = "random";
      sidecar["k"] = k;
      sidecar["seed"] = *seed;
      sidecar["trials"] = config.trials;
      sidecar["group_order"] = group.order();
      sidecar["limit_state"] = io::density_to_json(rho_inf, n <= 5);

      outputs.emplace_back(resolve_out_path(config.out_path), io::series_to_csv(series));
      if (!config.trajectories_out.empty()) {
        std::vector<Trajectory> trajs(per_trial.size());
        for (std::size_t trial = 0; trial < per_trial.size(); ++trial) {
          trajs[trial].steps = series.t;
          trajs[trial].values = per_trial[trial];
        }
        outputs.emplace_back(resolve_out_path(config.trajectories_out),
                             io::trajectories_to_csv("g", trajs));
      }
    }

    outputs.emplace_back(resolve_out_path(config.out_path) + ".meta.json", sidecar.dump(2) + "\n");
    for (const auto& [path, content] : outputs) io::write_file(path, content);
    return 0;
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

int cmd_rates(const ExperimentConfig& config, std::ostream& err) {
  try {
    if (config.n < 2) throw std::invalid_argument("--n is required (>= 2)");
    if (config.k_values.size() != 1)
      throw std::invalid_argument("rates needs exactly one --k");
    if (config.out_path.empty()) throw std::invalid_argument("--out is required");
    const int n = config.n;
    const int k = config.k_values.front();

    RateReport report;
    report.n = n;
    report.k = k;
    // k = n reaches reduced-state consensus in one deterministic step.
    report.nu_reduced_value = (k == n) ? 0.0 : nu_reduced(n, k);

    if (config.want_nu_star) {
      if (n <= config.rate_cap) {
        const Eigen::MatrixXd m = mean_square_update_matrix(n, k, config.rate_cap);
        const SpectralRate rate = nu_star(m);
        report.nu_star_value = rate.value;
        report.nu_star_degenerate = rate.degenerate;
        report.eigenvalue_table = rate.table;
      } else {
        report.nu_star_note = "nu_star infeasible: n exceeds the full-state cap of " +
                              std::to_string(config.rate_cap);
      }
    }

    if (!config.init_spec.empty()) {
      const auto init = io::parse_init_spec(config.init_spec);
      if (static_cast<int>(init.size()) != n)
        throw std::invalid_argument("--init length disagrees with --n");
      report.series = exact_dispersion_series(init, k, config.steps);
      report.fitted_slope = fit_decay_rate(report.series, config.burn_in);
    }

    io::json j = io::rate_report_to_json(report);
    if (!config.graph_path.empty()) {
      const auto graph = io::load_graph(config.graph_path);
      j["consensus_condition"] = reduced_consensus_condition(graph);
      j["period_gap"] = deterministic_period_gap(graph);
    }

    std::vector<std::pair<std::string, std::string>> outputs;
    outputs.emplace_back(resolve_out_path(config.out_path), j.dump(2) + "\n");
    if (!config.eigen_out.empty() && !report.eigenvalue_table.empty())
      outputs.emplace_back(resolve_out_path(config.eigen_out),
                           io::eigenvalue_table_to_csv(report.eigenvalue_table));
    for (const auto& [path, content] : outputs) io::write_file(path, content);
    return 0;
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

int cmd_feasibility(const ExperimentConfig& config, std::ostream& err) {
  try {
    if (config.n < 2) throw std::invalid_argument("--n is required (>= 2)");
    if (config.k_values.size() != 1)
      throw std::invalid_argument("feasibility needs exactly one --k");
    if (config.out_path.empty()) throw std::invalid_argument("--out is required");
    const FiniteTimeReport report = finite_time_feasible(config.n, config.k_values.front());
    io::write_file(resolve_out_path(config.out_path),
                   io::finite_time_report_to_json(report).dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

int cmd_schema_check(const ExperimentConfig& config, std::ostream& err) {
  try {
    if (config.schema_kind.empty() || config.schema_path.empty())
      throw std::invalid_argument("schema-check needs a kind and a file path");
    const std::string text = io::read_file(config.schema_path);
    std::string problem;
    const std::string& kind = config.schema_kind;
    if (kind == "graph" || kind == "schedule" || kind == "rate-report" || kind == "finite-time") {
      io::json j;
      try {
        j = io::json::parse(text);
      } catch (const std::exception& parse_error) {
        return fail(err, std::string("invalid JSON: ") + parse_error.what());
      }
      if (kind == "graph") problem = io::check_graph_json(j);
      else if (kind == "schedule") problem = io::check_schedule_json(j);
      else if (kind == "rate-report") problem = io::check_rate_report_json(j);
      else problem = io::check_finite_time_json(j);
    } else if (kind == "series-csv") {
      problem = io::check_series_csv(text);
    } else if (kind == "trajectory-csv") {
      problem = io::check_trajectory_csv(text);
    } else if (kind == "eigenvalue-csv") {
      problem = io::check_eigenvalue_csv(text);
    } else {
      throw std::invalid_argument("unknown schema kind: " + kind);
    }
    if (!problem.empty()) return fail(err, config.schema_path + ": " + problem);
    return 0;
  } catch (const std::exception& e) {
    return fail(err, e.what());
  }
}

}  // namespace qgossip::cli
