#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgossip/hypergraph.hpp"
#include "qgossip/qstate.hpp"

namespace qgossip {

// Averaging matrix of one clique: 1/k on the edge block, identity elsewhere.
// Symmetric, doubly stochastic, idempotent.
Eigen::MatrixXd gossip_matrix(const std::vector<int>& edge, int n);

// Closed form of the uniform average of gossip_matrix over all C(n,k)
// k-subsets. Its spectrum is {1} once and (n-k)/(n-1) with multiplicity n-1.
Eigen::MatrixXd mean_gossip_matrix(int n, int k);

// Reduced-state convergence rate under random k-clique gossip, (n-k)/(n-1).
double nu_reduced(int n, int k);

struct Series {
  std::vector<int> t;
  std::vector<double> value;
  std::vector<double> stderr_;  // zeros for exact series

  std::size_t size() const { return t.size(); }
};

// Exact expected dispersion h(t) = E{ sum_i ||rho_i(t) - mean_j rho_j(0)||^2 }
// under random k-clique gossip, propagated per matrix-entry coordinate with
// the n^2 x n^2 second-moment operator (mean of W (x) W over all edges).
// No sampling error; stderr column is zero.
Series exact_dispersion_series(const std::vector<QubitState>& init, int k, int steps);

// Monte Carlo counterpart of exact_dispersion_series, trial-parallel with
// per-trial streams derived from the master seed.
Series mc_dispersion_series(const std::vector<QubitState>& init, int k, int steps,
                            int trials, std::uint64_t seed, int record_every = 1);

inline constexpr int kDefaultFullRateCap = 5;

// Mean-square error update matrix of the randomized full-state dynamics:
// the average over all k-cycle permutations pi of
//   (sum_tau U (x) U / k) (sum_tau U^T (x) U^T / k),  U = U_{pi^tau}.
// 4^n x 4^n, symmetric, positive semidefinite, spectrum within [0, 1].
Eigen::MatrixXd mean_square_update_matrix(int n, int k, int qubit_cap = kDefaultFullRateCap);

struct EigenvalueEntry {
  double magnitude = 0.0;
  int multiplicity = 0;
};

struct SpectralRate {
  double value = 0.0;      // largest eigenvalue magnitude away from 1
  bool degenerate = false; // no eigenvalue away from 1 exists
  std::vector<EigenvalueEntry> table;  // magnitudes descending
};

// Spectrum-based full-state rate: largest |eigenvalue| of M after excluding
// every eigenvalue within 1e-9 of 1 (the whole fixed subspace, whatever its
// multiplicity).
SpectralRate nu_star(const Eigen::MatrixXd& m);

// Monte Carlo g(t) = E{ ||rho(t) - rho_inf||^2 } where rho_inf is the group
// average over the subgroup generated by all k-cycles (the parity rule limit).
Series mc_error_series(const DensityMatrix& rho0, int k, int steps, int trials,
                       std::uint64_t seed, int record_every = 1);

// Same, against a caller-supplied limit state.
Series mc_error_series(const DensityMatrix& rho0, int k, int steps, int trials,
                       std::uint64_t seed, const DensityMatrix& rho_inf,
                       int record_every = 1);

// Per-trial error trajectories behind mc_error_series. Trials run in
// parallel on independent streams; the result is ordered by trial index and
// bit-identical for any thread count.
std::vector<std::vector<double>> mc_error_trajectories(
    const DensityMatrix& rho0, int k, int steps, int trials, std::uint64_t seed,
    const DensityMatrix& rho_inf, int record_every = 1);

// Step indices recorded by the Monte Carlo estimators: 0, every record_every
// steps, and the final step.
std::vector<int> series_record_points(int steps, int record_every);

// Mean and standard error over per-trial values, reduced in trial order.
Series series_from_trials(const std::vector<int>& points,
                          const std::vector<std::vector<double>>& per_trial);

// Least-squares slope of log(value) against t on the window t >= burn_in,
// exponentiated. Requires at least two positive points in the window.
double fit_decay_rate(const Series& series, int burn_in);

// Spectral radius, on the disagreement subspace (orthogonal complement of
// the all-ones vector), of the product of the gossip matrices over one
// period of the deterministic schedule. `order` lists edge indices in
// application order; empty means listed order.
double deterministic_period_gap(const GeneralizedGraph& g, std::vector<int> order = {});

struct RateReport {
  int n = 0;
  int k = 0;
  double nu_reduced_value = 0.0;
  std::optional<double> nu_star_value;
  bool nu_star_degenerate = false;
  std::vector<EigenvalueEntry> eigenvalue_table;
  std::optional<double> fitted_slope;
  Series series;              // optional exact dispersion series
  std::string nu_star_note;   // set when nu_star was requested but infeasible
};

}  // namespace qgossip
