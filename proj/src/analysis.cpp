#include "qgossip/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qgossip/evolution.hpp"
#include "qgossip/parallel.hpp"
#include "qgossip/perm.hpp"
#include "qgossip/rng.hpp"

namespace qgossip {

Eigen::MatrixXd gossip_matrix(const std::vector<int>& edge, int n) {
  if (edge.size() < 2) throw std::invalid_argument("gossip_matrix edge needs at least 2 nodes");
  std::vector<int> sorted(edge);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= n)
      throw std::invalid_argument("gossip_matrix edge node out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("gossip_matrix edge has duplicate nodes");
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
  const auto k = static_cast<double>(edge.size());
  for (int i : edge)
    for (int j : edge) w(i, j) = 1.0 / k;
  return w;
}

Eigen::MatrixXd mean_gossip_matrix(int n, int k) {
  if (k < 2 || k > n) throw std::invalid_argument("mean_gossip_matrix requires 2 <= k <= n");
  const double off = static_cast<double>(k - 1) / (static_cast<double>(n) * (n - 1));
  const double diag_extra = static_cast<double>(n - k + 1) / n - off;
  return Eigen::MatrixXd::Constant(n, n, off) + diag_extra * Eigen::MatrixXd::Identity(n, n);
}

double nu_reduced(int n, int k) {
  if (k < 2 || k > n - 1) throw std::invalid_argument("nu_reduced requires 2 <= k <= n-1");
  return static_cast<double>(n - k) / (n - 1);
}

namespace {

// Mean of W (x) W over all C(n,k) edges: the exact one-step operator of the
// per-coordinate second moment of the reduced deviations.
Eigen::MatrixXd mean_kron_gossip(int n, int k) {
  const std::int64_t edges = binomial(n, k);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n * n, n * n);
  for (std::int64_t s = 0; s < edges; ++s) {
    const Eigen::MatrixXd w = gossip_matrix(unrank_combination(n, k, s), n);
    for (int r1 = 0; r1 < n; ++r1)
      for (int c1 = 0; c1 < n; ++c1) {
        if (w(r1, c1) == 0.0) continue;
        acc.block(r1 * n, c1 * n, n, n) += w(r1, c1) * w;
      }
  }
  return acc / static_cast<double>(edges);
}

QubitState mean_of(const std::vector<QubitState>& states) {
  QubitState mean = QubitState::Zero();
  for (const auto& s : states) mean += s;
  return mean / static_cast<double>(states.size());
}

}  // namespace

Series exact_dispersion_series(const std::vector<QubitState>& init, int k, int steps) {
  const int n = static_cast<int>(init.size());
  if (k < 2 || k > n - 1)
    throw std::invalid_argument("exact_dispersion_series requires 2 <= k <= n-1");
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");

  const Eigen::MatrixXd op = mean_kron_gossip(n, k);
  const QubitState mean0 = mean_of(init);

  // One deviation second-moment matrix per matrix-entry coordinate, stored
  // column-stacked. D^{ab}(0) = x x^H with x_i = (rho_i(0) - mean)(a, b).
  std::array<Eigen::VectorXcd, 4> moments;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Eigen::VectorXcd x(n);
      for (int i = 0; i < n; ++i) x(i) = (init[static_cast<std::size_t>(i)] - mean0)(a, b);
      Eigen::MatrixXcd d = x * x.adjoint();
      moments[static_cast<std::size_t>(2 * a + b)] =
          Eigen::Map<Eigen::VectorXcd>(d.data(), n * n);
    }

  auto trace_sum = [&]() {
    double total = 0.0;
    for (const auto& vecd : moments)
      for (int i = 0; i < n; ++i) total += vecd(i * n + i).real();
    return total;
  };

  Series series;
  series.t.push_back(0);
  series.value.push_back(trace_sum());
  series.stderr_.push_back(0.0);
  for (int t = 1; t <= steps; ++t) {
    for (auto& vecd : moments) {
      Eigen::VectorXcd next(n * n);
      next.real() = op * vecd.real();
      next.imag() = op * vecd.imag();
      vecd = std::move(next);
    }
    series.t.push_back(t);
    series.value.push_back(trace_sum());
    series.stderr_.push_back(0.0);
  }
  return series;
}

std::vector<int> series_record_points(int steps, int record_every) {
  const int every = record_every < 1 ? 1 : record_every;
  std::vector<int> points;
  points.push_back(0);
  for (int t = 1; t <= steps; ++t)
    if (t % every == 0 || t == steps) points.push_back(t);
  return points;
}

Series series_from_trials(const std::vector<int>& points,
                          const std::vector<std::vector<double>>& per_trial) {
  const auto trials = static_cast<int>(per_trial.size());
  Series series;
  series.t = points;
  series.value.resize(points.size());
  series.stderr_.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& traj : per_trial) {
      sum += traj[i];
      sum_sq += traj[i] * traj[i];
    }
    const double mean = sum / trials;
    series.value[i] = mean;
    if (trials > 1) {
      const double var = (sum_sq - trials * mean * mean) / (trials - 1);
      series.stderr_[i] = std::sqrt(std::max(var, 0.0) / trials);
    } else {
      series.stderr_[i] = 0.0;
    }
  }
  return series;
}

Series mc_dispersion_series(const std::vector<QubitState>& init, int k, int steps,
                            int trials, std::uint64_t seed, int record_every) {
  const int n = static_cast<int>(init.size());
  if (k < 2 || k > n) throw std::invalid_argument("mc_dispersion_series requires 2 <= k <= n");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  const std::vector<int> points = series_record_points(steps, record_every);
  const QubitState mean0 = mean_of(init);

  std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(trials));
  for_each_trial_chunk(trials, [&](int, int first, int last) {
    for (int trial = first; trial < last; ++trial) {
      RngStream rng = RngStream::for_trial(seed, static_cast<std::uint64_t>(trial));
      std::vector<QubitState> states = init;
      std::vector<double>& values = per_trial[static_cast<std::size_t>(trial)];
      values.reserve(points.size());
      std::size_t next_point = 0;
      auto record = [&](int t) {
        if (next_point < points.size() && points[next_point] == t) {
          double value = 0.0;
          for (const auto& s : states) value += (s - mean0).squaredNorm();
          values.push_back(value);
          ++next_point;
        }
      };
      record(0);
      for (int t = 1; t <= steps; ++t) {
        const std::int64_t edge_rank = static_cast<std::int64_t>(
            rng.next_below(static_cast<std::uint64_t>(binomial(n, k))));
        rng.next_below(static_cast<std::uint64_t>(factorial(k - 1)));  // cycle draw, unused here
        states = reduced_step(states, unrank_combination(n, k, edge_rank));
        record(t);
      }
    }
  });
  return series_from_trials(points, per_trial);
}

Eigen::MatrixXd mean_square_update_matrix(int n, int k, int qubit_cap) {
  if (k < 2 || k > n) throw std::invalid_argument("mean_square_update_matrix requires 2 <= k <= n");
  if (n > qubit_cap)
    throw std::invalid_argument("mean_square_update_matrix: qubit count exceeds the cap");

  const std::size_t dim = std::size_t{1} << n;        // 2^n
  const std::size_t vdim = dim * dim;                 // 4^n
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vdim),
                                            static_cast<Eigen::Index>(vdim));

  const std::vector<Permutation> cycles = enumerate_k_cycles(n, k);
  const double weight = 1.0 / (static_cast<double>(k) * k * static_cast<double>(cycles.size()));

  for (const auto& pi : cycles) {
    // Index maps of U_{pi^tau} (x) U_{pi^tau} on vec indices c*2^n + r.
    std::vector<std::vector<std::size_t>> kappa;
    kappa.reserve(static_cast<std::size_t>(k));
    Permutation p = pi;
    for (int tau = 1; tau <= k; ++tau) {
      const auto sigma = basis_index_map(p);
      std::vector<std::size_t> map(vdim);
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r)
          map[c * dim + r] = static_cast<std::size_t>(sigma[c]) * dim + sigma[r];
      kappa.push_back(std::move(map));
      p = compose(p, pi);
    }
    // (sum_tau P_tau / k)(sum_tau P_tau / k)^T accumulated entrywise:
    // column v contributes at (kappa_t1(v), kappa_t2(v)) for every pair.
    for (std::size_t v = 0; v < vdim; ++v)
      for (int t1 = 0; t1 < k; ++t1)
        for (int t2 = 0; t2 < k; ++t2)
          m(static_cast<Eigen::Index>(kappa[static_cast<std::size_t>(t1)][v]),
            static_cast<Eigen::Index>(kappa[static_cast<std::size_t>(t2)][v])) += weight;
  }
  return m;
}

SpectralRate nu_star(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("nu_star needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();

  constexpr double kOneTol = 1e-9;
  SpectralRate rate;
  rate.degenerate = true;
  std::vector<double> magnitudes;
  magnitudes.reserve(static_cast<std::size_t>(eigenvalues.size()));
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = eigenvalues(i);
    magnitudes.push_back(std::abs(lambda));
    if (std::abs(lambda - 1.0) <= kOneTol) continue;
    rate.degenerate = false;
    rate.value = std::max(rate.value, std::abs(lambda));
  }

  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  for (double mag : magnitudes) {
    if (!rate.table.empty() && rate.table.back().magnitude - mag <= kOneTol) {
      ++rate.table.back().multiplicity;
    } else {
      rate.table.push_back({mag, 1});
    }
  }
  return rate;
}

Series mc_error_series(const DensityMatrix& rho0, int k, int steps, int trials,
                       std::uint64_t seed, int record_every) {
  const PermutationGroup group = generate_subgroup(enumerate_k_cycles(rho0.num_qubits(), k));
  return mc_error_series(rho0, k, steps, trials, seed, limit_state(rho0, group), record_every);
}

std::vector<std::vector<double>> mc_error_trajectories(
    const DensityMatrix& rho0, int k, int steps, int trials, std::uint64_t seed,
    const DensityMatrix& rho_inf, int record_every) {
  const int n = rho0.num_qubits();
  if (k < 2 || k > n) throw std::invalid_argument("mc_error_trajectories requires 2 <= k <= n");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (rho_inf.dim() != rho0.dim()) throw std::invalid_argument("limit state dimension mismatch");

  const std::vector<int> points = series_record_points(steps, record_every);
  std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(trials));
  for_each_trial_chunk(trials, [&](int, int first, int last) {
    for (int trial = first; trial < last; ++trial) {
      RngStream rng = RngStream::for_trial(seed, static_cast<std::uint64_t>(trial));
      DensityMatrix rho = rho0;
      std::vector<double>& values = per_trial[static_cast<std::size_t>(trial)];
      values.reserve(points.size());
      std::size_t next_point = 0;
      auto record = [&](int t) {
        if (next_point < points.size() && points[next_point] == t) {
          values.push_back((rho.matrix() - rho_inf.matrix()).squaredNorm());
          ++next_point;
        }
      };
      record(0);
      for (int t = 1; t <= steps; ++t) {
        rho = random_step(rho, k, rng).first;
        record(t);
      }
    }
  });
  return per_trial;
}

Series mc_error_series(const DensityMatrix& rho0, int k, int steps, int trials,
                       std::uint64_t seed, const DensityMatrix& rho_inf, int record_every) {
  const auto per_trial =
      mc_error_trajectories(rho0, k, steps, trials, seed, rho_inf, record_every);
  return series_from_trials(series_record_points(steps, record_every), per_trial);
}

double fit_decay_rate(const Series& series, int burn_in) {
  double sum_t = 0, sum_y = 0, sum_tt = 0, sum_ty = 0;
  int count = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.t[i] < burn_in) continue;
    if (!(series.value[i] > 0.0))
      throw std::invalid_argument("fit_decay_rate: non-positive value after burn-in");
    const double t = series.t[i];
    const double y = std::log(series.value[i]);
    sum_t += t;
    sum_y += y;
    sum_tt += t * t;
    sum_ty += t * y;
    ++count;
  }
  if (count < 2) throw std::invalid_argument("fit_decay_rate: need at least two points");
  const double denom = count * sum_tt - sum_t * sum_t;
  if (denom == 0.0) throw std::invalid_argument("fit_decay_rate: degenerate time window");
  const double slope = (count * sum_ty - sum_t * sum_y) / denom;
  return std::exp(slope);
}

double deterministic_period_gap(const GeneralizedGraph& g, std::vector<int> order) {
  const int n = g.node_count();
  const auto& edges = g.edges();
  if (edges.empty()) throw std::invalid_argument("deterministic_period_gap needs edges");
  if (order.empty()) {
    order.resize(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) order[i] = static_cast<int>(i);
  }
  Eigen::MatrixXd period = Eigen::MatrixXd::Identity(n, n);
  for (int idx : order) {
    if (idx < 0 || idx >= static_cast<int>(edges.size()))
      throw std::invalid_argument("deterministic_period_gap: edge index out of range");
    period = gossip_matrix(edges[static_cast<std::size_t>(idx)], n) * period;
  }

  // Orthonormal basis of the complement of the all-ones vector.
  Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(n, 1, 1.0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd basis = q.rightCols(n - 1);

  const Eigen::MatrixXd restricted = basis.transpose() * period * basis;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(restricted, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace qgossip
