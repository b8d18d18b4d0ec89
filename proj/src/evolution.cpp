#include "qgossip/evolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace qgossip {

Schedule Schedule::deterministic(int n, std::vector<ScheduleItem> items) {
  if (items.empty()) throw std::invalid_argument("deterministic schedule must be non-empty");
  Schedule s;
  s.mode = Mode::deterministic;
  s.n = n;
  s.items = std::move(items);
  for (auto& item : s.items) {
    std::sort(item.edge.begin(), item.edge.end());
    if (item.edge.size() < 2) throw std::invalid_argument("schedule edge needs at least 2 nodes");
    for (std::size_t i = 0; i < item.edge.size(); ++i) {
      if (item.edge[i] < 0 || item.edge[i] >= n)
        throw std::invalid_argument("schedule edge node out of range");
      if (i > 0 && item.edge[i] == item.edge[i - 1])
        throw std::invalid_argument("schedule edge has duplicate nodes");
    }
    const std::int64_t cycles = factorial(static_cast<int>(item.edge.size()) - 1);
    if (item.cycle_index < 0 || item.cycle_index >= cycles)
      throw std::invalid_argument("cycle index out of range for edge size");
  }
  return s;
}

Schedule Schedule::random(int n, int k, std::uint64_t seed) {
  if (k < 2 || k > n) throw std::invalid_argument("random schedule requires 2 <= k <= n");
  Schedule s;
  s.mode = Mode::random;
  s.n = n;
  s.k = k;
  s.seed = seed;
  return s;
}

DensityMatrix det_step(const DensityMatrix& rho, const std::vector<int>& edge,
                       const Permutation& cycle) {
  if (cycle.size() != rho.num_qubits())
    throw std::invalid_argument("det_step: permutation size mismatch");
  if (!cycle.is_cycle_on(edge))
    throw std::invalid_argument("det_step: permutation is not a cycle exactly on the edge");

  const auto k = static_cast<int>(edge.size());
  const Eigen::Index dim = rho.dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  Permutation p = cycle;
  for (int tau = 1; tau <= k; ++tau) {
    if (tau == k) {
      acc += rho.matrix();  // cycle^k is the identity
      break;
    }
    const auto sigma = basis_index_map(p);
    for (Eigen::Index a = 0; a < dim; ++a)
      for (Eigen::Index b = 0; b < dim; ++b)
        acc(a, b) += rho.matrix()(sigma[static_cast<std::size_t>(a)],
                                  sigma[static_cast<std::size_t>(b)]);
    p = compose(p, cycle);
  }
  return DensityMatrix(rho.num_qubits(), acc / static_cast<double>(k));
}

namespace {

StepSample draw_step(int n, int k, RngStream& rng) {
  const std::int64_t edge_rank = static_cast<std::int64_t>(
      rng.next_below(static_cast<std::uint64_t>(binomial(n, k))));
  const std::int64_t cycle_rank = static_cast<std::int64_t>(
      rng.next_below(static_cast<std::uint64_t>(factorial(k - 1))));
  std::vector<int> edge = unrank_combination(n, k, edge_rank);
  Permutation cycle = k_cycle_by_rank(edge, n, cycle_rank);
  return StepSample{std::move(edge), std::move(cycle)};
}

}  // namespace

std::pair<DensityMatrix, StepSample> random_step(const DensityMatrix& rho, int k,
                                                 RngStream& rng) {
  const int n = rho.num_qubits();
  if (k < 2 || k > n) throw std::invalid_argument("random_step requires 2 <= k <= n");
  StepSample sample = draw_step(n, k, rng);
  DensityMatrix next = det_step(rho, sample.edge, sample.cycle);
  return {std::move(next), std::move(sample)};
}

std::vector<QubitState> reduced_step(const std::vector<QubitState>& states,
                                     const std::vector<int>& edge) {
  const int n = static_cast<int>(states.size());
  if (edge.size() < 2) throw std::invalid_argument("reduced_step edge needs at least 2 nodes");
  for (int v : edge)
    if (v < 0 || v >= n) throw std::invalid_argument("reduced_step edge node out of range");

  QubitState avg = QubitState::Zero();
  for (int v : edge) avg += states[static_cast<std::size_t>(v)];
  avg /= static_cast<double>(edge.size());

  std::vector<QubitState> out = states;
  for (int v : edge) out[static_cast<std::size_t>(v)] = avg;
  return out;
}

namespace {

double reduced_dispersion(const std::vector<QubitState>& states, const QubitState& mean0) {
  double total = 0.0;
  for (const auto& s : states) total += (s - mean0).squaredNorm();
  return total;
}

QubitState mean_state(const std::vector<QubitState>& states) {
  QubitState mean = QubitState::Zero();
  for (const auto& s : states) mean += s;
  return mean / static_cast<double>(states.size());
}

}  // namespace

Trajectory run_full(const Schedule& schedule, const DensityMatrix& rho0, int steps,
                    const MetricSpec& metric, DensityMatrix* final_state) {
  if (steps < 0) throw std::invalid_argument("run_full: steps must be non-negative");
  if (schedule.n != rho0.num_qubits())
    throw std::invalid_argument("run_full: schedule and state disagree on qubit count");
  if (metric.kind == MetricSpec::Kind::distance_to_reference &&
      (metric.reference.rows() != rho0.dim() || metric.reference.cols() != rho0.dim()))
    throw std::invalid_argument("run_full: reference state dimension mismatch");

  const int every = metric.record_every < 1 ? 1 : metric.record_every;
  RngStream rng(schedule.seed);
  DensityMatrix rho = rho0;
  const QubitState mean0 = mean_state(reduced_states(rho0));

  auto measure = [&](const DensityMatrix& state) -> double {
    switch (metric.kind) {
      case MetricSpec::Kind::reduced_dispersion:
        return reduced_dispersion(reduced_states(state), mean0);
      case MetricSpec::Kind::distance_to_reference:
        return (state.matrix() - metric.reference).squaredNorm();
      case MetricSpec::Kind::none:
        return 0.0;
    }
    return 0.0;
  };

  Trajectory traj;
  traj.steps.push_back(0);
  traj.values.push_back(measure(rho));
  for (int t = 1; t <= steps; ++t) {
    if (schedule.mode == Schedule::Mode::deterministic) {
      const auto& item = schedule.items[static_cast<std::size_t>((t - 1) %
                                        static_cast<int>(schedule.items.size()))];
      rho = det_step(rho, item.edge, k_cycle_by_rank(item.edge, schedule.n, item.cycle_index));
    } else {
      rho = random_step(rho, schedule.k, rng).first;
    }
    if (t % every == 0 || t == steps) {
      traj.steps.push_back(t);
      traj.values.push_back(measure(rho));
    }
  }
  if (final_state) *final_state = rho;
  return traj;
}

Trajectory run_reduced(const Schedule& schedule, const std::vector<QubitState>& init,
                       int steps, const MetricSpec& metric,
                       std::vector<QubitState>* final_states) {
  if (steps < 0) throw std::invalid_argument("run_reduced: steps must be non-negative");
  if (schedule.n != static_cast<int>(init.size()))
    throw std::invalid_argument("run_reduced: schedule and state disagree on qubit count");

  const int every = metric.record_every < 1 ? 1 : metric.record_every;
  RngStream rng(schedule.seed);
  std::vector<QubitState> states = init;
  const QubitState mean0 = mean_state(init);

  auto measure = [&]() -> double {
    if (metric.kind == MetricSpec::Kind::reduced_dispersion)
      return reduced_dispersion(states, mean0);
    return 0.0;
  };

  Trajectory traj;
  traj.steps.push_back(0);
  traj.values.push_back(measure());
  for (int t = 1; t <= steps; ++t) {
    if (schedule.mode == Schedule::Mode::deterministic) {
      const auto& item = schedule.items[static_cast<std::size_t>((t - 1) %
                                        static_cast<int>(schedule.items.size()))];
      states = reduced_step(states, item.edge);
    } else {
      // Same draw sequence as the full dynamics; the cycle draw is consumed
      // even though the reduced update only needs the edge.
      StepSample sample = draw_step(schedule.n, schedule.k, rng);
      states = reduced_step(states, sample.edge);
    }
    if (t % every == 0 || t == steps) {
      traj.steps.push_back(t);
      traj.values.push_back(measure());
    }
  }
  if (final_states) *final_states = states;
  return traj;
}

DensityMatrix limit_state(const DensityMatrix& rho0, const PermutationGroup& group,
                          std::size_t budget) {
  if (group.order() == 0) throw std::invalid_argument("limit_state: empty group");
  if (group.order() > budget)
    throw std::runtime_error(
        "limit_state: group order exceeds the enumeration budget; "
        "use a Monte Carlo estimate of the limit instead");
  const Eigen::Index dim = rho0.dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& p : group.elements) {
    const auto sigma = basis_index_map(p);
    for (Eigen::Index a = 0; a < dim; ++a)
      for (Eigen::Index b = 0; b < dim; ++b)
        acc(a, b) += rho0.matrix()(sigma[static_cast<std::size_t>(a)],
                                   sigma[static_cast<std::size_t>(b)]);
  }
  return DensityMatrix(rho0.num_qubits(), acc / static_cast<double>(group.order()));
}

}  // namespace qgossip
