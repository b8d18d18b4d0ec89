#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qgossip/cli.hpp"

using qgossip::cli::ExperimentConfig;

int main(int argc, char** argv) {
  CLI::App app{"qgossip: quantum clique-gossip simulation and rate analysis"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* cmd, bool with_seed) -> CLI::Option* {
    cmd->add_option("--n", config.n, "number of qubits");
    cmd->add_option("--k", config.k_values, "clique size (repeatable where supported)");
    cmd->add_option("--steps", config.steps, "number of steps");
    cmd->add_option("--trials", config.trials, "Monte Carlo trials");
    cmd->add_option("--graph", config.graph_path, "graph JSON for deterministic schedules");
    cmd->add_option("--schedule", config.schedule_path, "schedule JSON (overrides --graph/--k)");
    cmd->add_option("--init", config.init_spec, "initial state spec, e.g. (0,1,+,-,0)x2");
    cmd->add_option("--out", config.out_path, "output path");
    auto* cap = cmd->add_option("--cap-n", config.qubit_cap, "full-state qubit cap");
    cmd->add_option("--record-every", config.record_every, "record every this many steps");
    if (with_seed) {
      auto* opt = cmd->add_option("--seed", seed_value, "master seed");
      cmd->callback([&, opt] {
        if (opt->count() > 0) config.seed = seed_value;
      });
    }
    return cap;
  };

  auto* reduced = app.add_subcommand("simulate-reduced", "reduced-state dispersion series h(t)");
  add_common(reduced, true);
  bool exact_flag = false, mc_flag = false;
  auto* exact_opt = reduced->add_flag("--exact", exact_flag, "exact expectation (default)");
  auto* mc_opt = reduced->add_flag("--mc", mc_flag, "Monte Carlo expectation");
  exact_opt->excludes(mc_opt);
  mc_opt->excludes(exact_opt);

  auto* full = app.add_subcommand("simulate-full", "full-state error series g(t)");
  add_common(full, true);
  full->add_option("--trajectories", config.trajectories_out, "per-trial trajectory CSV");

  auto* rates = app.add_subcommand("rates", "convergence rates and spectra");
  auto* rates_cap = add_common(rates, false);
  rates->add_flag("--nu-star", config.want_nu_star, "also compute the full-state rate");
  rates->add_option("--eigen-out", config.eigen_out, "eigenvalue table CSV");
  rates->add_option("--burn-in", config.burn_in, "burn-in steps for slope fits");
  // On this subcommand the cap bounds the 4^n rate matrix, not the density.
  rates->callback([&, rates_cap] {
    if (rates_cap->count() > 0) config.rate_cap = config.qubit_cap;
  });

  auto* feasibility = app.add_subcommand("feasibility", "finite-time averaging feasibility");
  add_common(feasibility, false);

  auto* schema = app.add_subcommand("schema-check", "validate an output or input file");
  schema->add_option("kind", config.schema_kind,
                     "graph | schedule | rate-report | finite-time | series-csv | "
                     "trajectory-csv | eigenvalue-csv")
      ->required();
  schema->add_option("path", config.schema_path, "file to validate")->required();

  CLI11_PARSE(app, argc, argv);

  if (mc_flag) config.exact = false;

  if (reduced->parsed()) return qgossip::cli::cmd_simulate_reduced(config);
  if (full->parsed()) return qgossip::cli::cmd_simulate_full(config);
  if (rates->parsed()) return qgossip::cli::cmd_rates(config);
  if (feasibility->parsed()) return qgossip::cli::cmd_feasibility(config);
  if (schema->parsed()) return qgossip::cli::cmd_schema_check(config);
  return 1;
}
