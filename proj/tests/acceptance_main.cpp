// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qgossip/analysis.hpp"
#include "qgossip/evolution.hpp"
#include "qgossip/hypergraph.hpp"
#include "qgossip/parallel.hpp"
#include "qgossip/perm.hpp"
#include "qgossip/qstate.hpp"
#include "qgossip/rng.hpp"

using namespace qgossip;

namespace {

struct Criterion {
  std::string name;
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<QubitState> state_a() {
  return {standard_state(StandardState::ket0), standard_state(StandardState::ket1),
          standard_state(StandardState::plus), standard_state(StandardState::minus),
          standard_state(StandardState::ket0)};
}

std::vector<QubitState> state_a_doubled() {
  auto a = state_a();
  auto aa = a;
  aa.insert(aa.end(), a.begin(), a.end());
  return aa;
}

DensityMatrix random_density(int n, RngStream& rng) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      g(r, c) = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(n, std::move(rho));
}

char buffer[512];

std::string fmt(const char* format, auto... args) {
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

// --------------------------------------------------------------------------
// 1. Exact reduced-state rates at n = 10: fitted decay of the exact h(t)
//    recursion equals (10-k)/9 within 1e-4 for k = 2..5, under 1 s per k.
Criterion criterion_reduced_rates() {
  Criterion c;
  c.name = "1. exact reduced-state rate (n=10, k=2..5)";
  const auto init = state_a_doubled();
  std::vector<double> fitted;
  for (int k = 2; k <= 5; ++k) {
    const auto start = std::chrono::steady_clock::now();
    const auto series = exact_dispersion_series(init, k, 40);
    const double rate = fit_decay_rate(series, 5);
    const double elapsed = seconds_since(start);
    const double expected = (10.0 - k) / 9.0;
    fitted.push_back(rate);
    c.note(fmt("k=%d fitted=%.10f expected=%.10f (%.3fs)", k, rate, expected, elapsed));
    c.require(std::abs(rate - expected) < 1e-4,
              fmt("k=%d rate %.8f differs from %.8f by more than 1e-4", k, rate, expected));
    c.require(elapsed < 1.0, fmt("k=%d exceeded the 1 s budget (%.3fs)", k, elapsed));
  }
  for (std::size_t i = 0; i + 1 < fitted.size(); ++i)
    c.require(fitted[i] > fitted[i + 1], "rates are not strictly ordered in k");
  return c;
}

// --------------------------------------------------------------------------
// 2. Moment identity: the closed-form mean gossip matrix equals the uniform
//    average over all C(n,k) edges to 1e-14 entrywise, with spectrum
//    {(n-k)/(n-1) x (n-1), 1 x 1} within 1e-10, for all n <= 8.
Criterion criterion_moment_identity() {
  Criterion c;
  c.name = "2. mean gossip matrix identity (n <= 8, all k)";
  double worst_entry = 0.0, worst_eigen = 0.0;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 2; k <= n; ++k) {
      const std::int64_t edges = binomial(n, k);
      // Extended-precision accumulation keeps the oracle's own rounding
      // far below the 1e-14 gate.
      std::vector<long double> sum(static_cast<std::size_t>(n) * n, 0.0L);
      for (std::int64_t s = 0; s < edges; ++s) {
        const Eigen::MatrixXd w = gossip_matrix(unrank_combination(n, k, s), n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            sum[static_cast<std::size_t>(i) * n + j] += static_cast<long double>(w(i, j));
      }
      const Eigen::MatrixXd closed = mean_gossip_matrix(n, k);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double avg = static_cast<double>(sum[static_cast<std::size_t>(i) * n + j] /
                                                 static_cast<long double>(edges));
          worst_entry = std::max(worst_entry, std::abs(avg - closed(i, j)));
        }

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(closed, Eigen::EigenvaluesOnly);
      const double nu = static_cast<double>(n - k) / (n - 1);
      for (int i = 0; i < n - 1; ++i)
        worst_eigen = std::max(worst_eigen, std::abs(solver.eigenvalues()(i) - nu));
      worst_eigen = std::max(worst_eigen, std::abs(solver.eigenvalues()(n - 1) - 1.0));
    }
  }
  c.note(fmt("worst entry diff %.3e, worst eigenvalue diff %.3e", worst_entry, worst_eigen));
  c.require(worst_entry < 1e-14, fmt("entrywise difference %.3e exceeds 1e-14", worst_entry));
  c.require(worst_eigen < 1e-10, fmt("eigenvalue difference %.3e exceeds 1e-10", worst_eigen));
  return c;
}

// --------------------------------------------------------------------------
// 3. Reduction oracle: partial traces of the full dynamics match the
//    reduced dynamics at every step, 50 random schedules of 100 steps,
//    n <= 5, within 1e-9, under 1 minute.
Criterion criterion_reduction_oracle() {
  Criterion c;
  c.name = "3. full-vs-reduced dynamics (50 schedules x 100 steps)";
  const auto start = std::chrono::steady_clock::now();
  RngStream rng(20250806);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_below(4));  // 2..5
    const bool randomized = rep % 2 == 0;
    auto rho = random_density(n, rng);
    auto reduced = reduced_states(rho);

    // A fixed periodic edge list for the deterministic half.
    std::vector<std::pair<std::vector<int>, Permutation>> period;
    if (!randomized) {
      const int len = 2 + static_cast<int>(rng.next_below(4));
      for (int i = 0; i < len; ++i) {
        const int k = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
        const auto edge = unrank_combination(
            n, k, static_cast<std::int64_t>(rng.next_below(
                      static_cast<std::uint64_t>(binomial(n, k)))));
        const auto cycle = k_cycle_by_rank(
            edge, n, static_cast<std::int64_t>(rng.next_below(
                         static_cast<std::uint64_t>(factorial(k - 1)))));
        period.emplace_back(edge, cycle);
      }
    }

    for (int t = 0; t < 100; ++t) {
      std::vector<int> edge;
      if (randomized) {
        const int k = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
        auto [next, sample] = random_step(rho, k, rng);
        rho = std::move(next);
        edge = sample.edge;
      } else {
        const auto& [e, cycle] = period[static_cast<std::size_t>(t) % period.size()];
        rho = det_step(rho, e, cycle);
        edge = e;
      }
      reduced = reduced_step(reduced, edge);
      const auto traced = reduced_states(rho);
      for (int q = 0; q < n; ++q)
        worst = std::max(worst, (traced[static_cast<std::size_t>(q)] -
                                 reduced[static_cast<std::size_t>(q)])
                                    .cwiseAbs()
                                    .maxCoeff());
    }
  }
  const double elapsed = seconds_since(start);
  c.note(fmt("worst reduced-state mismatch %.3e (%.1fs)", worst, elapsed));
  c.require(worst < 1e-9, fmt("mismatch %.3e exceeds 1e-9", worst));
  c.require(elapsed < 60.0, fmt("exceeded the 1 minute budget (%.1fs)", elapsed));
  return c;
}

// --------------------------------------------------------------------------
// 4. Limit groups and states at n = 5: generated subgroup order 120 for
//    even k, 60 for odd k; group-average limit matches the empirical mean
//    of 2000 random trajectories at step 300 within 1e-3, under 5 minutes.
Criterion criterion_limit_groups() {
  Criterion c;
  c.name = "4. parity-rule limits at n=5 (orders + 2000-trial mean)";
  const auto start = std::chrono::steady_clock::now();

  for (int k = 2; k <= 5; ++k) {
    const auto group = generate_subgroup(enumerate_k_cycles(5, k));
    const std::size_t expected = (k % 2 == 0) ? 120 : 60;
    c.note(fmt("k=%d group order %zu", k, group.order()));
    c.require(group.order() == expected,
              fmt("k=%d group order %zu, expected %zu", k, group.order(), expected));
  }

  const auto rho0 = product_state(state_a());
  const int trials = 2000, steps = 300;
  for (int k : {2, 3}) {
    const auto group = generate_subgroup(enumerate_k_cycles(5, k));
    const auto rho_inf = limit_state(rho0, group);

    std::vector<Eigen::MatrixXcd> chunk_sums(
        kTrialChunks, Eigen::MatrixXcd::Zero(rho0.dim(), rho0.dim()));
    for_each_trial_chunk(trials, [&](int chunk, int first, int last) {
      Eigen::MatrixXcd local = Eigen::MatrixXcd::Zero(rho0.dim(), rho0.dim());
      for (int trial = first; trial < last; ++trial) {
        RngStream stream = RngStream::for_trial(8888 + static_cast<std::uint64_t>(k),
                                                static_cast<std::uint64_t>(trial));
        DensityMatrix rho = rho0;
        for (int t = 0; t < steps; ++t) rho = random_step(rho, k, stream).first;
        local += rho.matrix();
      }
      chunk_sums[static_cast<std::size_t>(chunk)] = local;
    });
    Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(rho0.dim(), rho0.dim());
    for (const auto& partial : chunk_sums) mean += partial;
    mean /= static_cast<double>(trials);

    const double diff = (mean - rho_inf.matrix()).norm();
    c.note(fmt("k=%d |empirical mean - limit|_F = %.3e", k, diff));
    c.require(diff < 1e-3, fmt("k=%d difference %.3e exceeds 1e-3", k, diff));
  }

  const double elapsed = seconds_since(start);
  c.note(fmt("elapsed %.1fs", elapsed));
  c.require(elapsed < 300.0, fmt("exceeded the 5 minute budget (%.1fs)", elapsed));
  return c;
}

// --------------------------------------------------------------------------
// 5. Finite-time feasibility: formula agrees with exhaustive search for all
//    n <= 6, k <= n; step counts match on (8,4), (9,3), (8,2); (12,4) and
//    (3,2) are infeasible. Under 2 minutes.
Criterion criterion_finite_time() {
  Criterion c;
  c.name = "5. finite-time feasibility vs exhaustive search (n <= 6)";
  const auto start = std::chrono::steady_clock::now();

  for (int n = 2; n <= 6; ++n) {
    for (int k = 2; k <= n; ++k) {
      const auto report = finite_time_feasible(n, k);
      if (report.feasible) {
        const auto found = search_finite_time_schedule(n, k, static_cast<int>(report.steps));
        c.require(found.status == ScheduleSearchStatus::found,
                  fmt("(%d,%d) feasible but search found nothing in T=%lld steps", n, k,
                      static_cast<long long>(report.steps)));
        if (found.status == ScheduleSearchStatus::found)
          c.require(found.schedule.size() == static_cast<std::size_t>(report.steps),
                    fmt("(%d,%d) schedule length %zu != T=%lld", n, k, found.schedule.size(),
                        static_cast<long long>(report.steps)));
      } else {
        const auto found = search_finite_time_schedule(n, k, 4, 250000);
        c.require(found.status != ScheduleSearchStatus::found,
                  fmt("(%d,%d) infeasible by the formula but a schedule exists", n, k));
      }
    }
  }

  const struct { int n, k; std::int64_t t; } cases[] = {{8, 4, 4}, {9, 3, 6}, {8, 2, 12}};
  for (const auto& [n, k, t] : cases) {
    const auto report = finite_time_feasible(n, k);
    c.note(fmt("(%d,%d) -> T=%lld", n, k, static_cast<long long>(report.steps)));
    c.require(report.feasible && report.steps == t,
              fmt("(%d,%d) expected T=%lld", n, k, static_cast<long long>(t)));
  }
  c.require(!finite_time_feasible(12, 4).feasible, "(12,4) should be infeasible");
  c.require(!finite_time_feasible(3, 2).feasible, "(3,2) should be infeasible");
  c.require(search_finite_time_schedule(12, 4, 1).status != ScheduleSearchStatus::found,
            "(12,4) search found a schedule");
  c.require(search_finite_time_schedule(3, 2, 10).status == ScheduleSearchStatus::exhausted,
            "(3,2) search did not exhaust");

  const double elapsed = seconds_since(start);
  c.note(fmt("elapsed %.1fs", elapsed));
  c.require(elapsed < 120.0, fmt("exceeded the 2 minute budget (%.1fs)", elapsed));
  return c;
}

// --------------------------------------------------------------------------
// 6. Mean-square update matrix: symmetric PSD with spectrum in [0,1] and
//    eigenvalue 1 present for n <= 5; nu_star < 1; the stated n=2, k=2
//    value 1/4; Monte Carlo g(t) slope at n=4 within 15% of log nu_star.
Criterion criterion_spectrum() {
  Criterion c;
  c.name = "6. mean-square spectrum and nu_star";
  const auto start = std::chrono::steady_clock::now();

  double nu22 = -1.0;
  for (int n = 2; n <= 5; ++n) {
    for (int k = 2; k <= n; ++k) {
      const Eigen::MatrixXd m = mean_square_update_matrix(n, k);
      const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
      const double min_ev = solver.eigenvalues().minCoeff();
      const double max_ev = solver.eigenvalues().maxCoeff();
      const auto rate = nu_star(m);
      if (n == 2 && k == 2) nu22 = rate.value;
      c.require(asym < 1e-12, fmt("(%d,%d) asymmetry %.3e", n, k, asym));
      c.require(min_ev > -1e-9, fmt("(%d,%d) negative eigenvalue %.3e", n, k, min_ev));
      c.require(max_ev < 1.0 + 1e-9, fmt("(%d,%d) eigenvalue above one: %.12f", n, k, max_ev));
      c.require(std::abs(max_ev - 1.0) < 1e-9, fmt("(%d,%d) eigenvalue 1 missing", n, k));
      c.require(rate.value < 1.0, fmt("(%d,%d) nu_star %.6f not below 1", n, k, rate.value));
      if (n == 5) c.note(fmt("n=5 k=%d nu_star = %.9f", k, rate.value));
    }
  }

  // Stated value for the smallest case, asserted as given. The computed
  // matrix is pinned to the literal dense construction in the unit suite;
  // its spectrum there is {1 x10, 0 x6} because the tau-sum for a
  // transposition is a projection, making the computed rate 0.
  c.note(fmt("computed nu_star(2,2) = %.12f", nu22));
  c.require(std::abs(nu22 - 0.25) < 1e-9,
            fmt("nu_star(2,2) = %.12f does not equal the stated 1/4; the (2,2) update "
                "matrix is a projection with spectrum {1 x10, 0 x6} (trace 10), so the "
                "largest eigenvalue away from 1 is 0 and the dynamics converges in one step",
                nu22));

  // Monte Carlo slope against log nu_star at n = 4.
  const auto rho0 = product_state(
      {standard_state(StandardState::ket0), standard_state(StandardState::ket1),
       standard_state(StandardState::plus), standard_state(StandardState::minus)});
  const struct { int k, fit_lo, fit_hi; } slope_cases[] = {{2, 5, 20}, {3, 3, 15}};
  for (const auto& [k, fit_lo, fit_hi] : slope_cases) {
    const auto series = mc_error_series(rho0, k, fit_hi, 2000, 24601);
    Series window;
    for (std::size_t i = 0; i < series.size(); ++i)
      if (series.t[i] >= fit_lo) {
        window.t.push_back(series.t[i]);
        window.value.push_back(series.value[i]);
        window.stderr_.push_back(0.0);
      }
    const double fitted = fit_decay_rate(window, fit_lo);
    const double expected = nu_star(mean_square_update_matrix(4, k)).value;
    const double rel = std::abs(std::log(fitted) / std::log(expected) - 1.0);
    c.note(fmt("n=4 k=%d fitted=%.4f nu_star=%.4f log-slope rel. diff %.1f%%", k, fitted,
               expected, rel * 100.0));
    c.require(rel < 0.15, fmt("n=4 k=%d slope off by %.1f%% (> 15%%)", k, rel * 100.0));
  }

  const double elapsed = seconds_since(start);
  c.note(fmt("elapsed %.1fs (includes the n=5 builds and eigendecompositions)", elapsed));
  c.require(elapsed < 120.0, fmt("exceeded the 2 minute budget (%.1fs)", elapsed));
  return c;
}

// --------------------------------------------------------------------------
// 7. Full-state decay at n = 5: the three g(t) series for k = 2, 3, 4 decay
//    to zero and their fitted rates order consistently with nu_star.
Criterion criterion_full_state_ordering() {
  Criterion c;
  c.name = "7. g(t) decay and rate ordering at n=5 (k=2,3,4)";
  const auto rho0 = product_state(state_a());

  std::vector<double> fitted, spectral;
  for (int k : {2, 3, 4}) {
    const auto series =
        mc_error_series(rho0, k, 60, 2000, 1870 + static_cast<std::uint64_t>(k));
    const double tail = series.value.back() / series.value.front();
    c.require(tail < 1e-4, fmt("k=%d g(60)/g(0) = %.3e, not decayed", k, tail));

    Series window;
    for (std::size_t i = 0; i < series.size(); ++i)
      if (series.t[i] >= 5 && series.t[i] <= 25) {
        window.t.push_back(series.t[i]);
        window.value.push_back(series.value[i]);
        window.stderr_.push_back(0.0);
      }
    fitted.push_back(fit_decay_rate(window, 5));
    spectral.push_back(nu_star(mean_square_update_matrix(5, k)).value);
    c.note(fmt("k=%d fitted rate %.4f, nu_star %.4f, g(60)/g(0)=%.2e", k, fitted.back(),
               spectral.back(), tail));
  }

  for (std::size_t i = 0; i < fitted.size(); ++i)
    for (std::size_t j = i + 1; j < fitted.size(); ++j) {
      const bool same_order = (fitted[i] > fitted[j]) == (spectral[i] > spectral[j]);
      c.require(same_order, fmt("pair (k=%zu,k=%zu): fitted ordering disagrees with nu_star",
                                i + 2, j + 2));
    }
  return c;
}

// --------------------------------------------------------------------------
// 8. Channel invariants over 10,000 randomized steps at n = 4.
Criterion criterion_channel_invariants() {
  Criterion c;
  c.name = "8. channel invariants over 10,000 randomized steps (n=4)";
  RngStream rng(31415926);
  DensityMatrix rho = product_state(
      {standard_state(StandardState::ket0), standard_state(StandardState::ket1),
       standard_state(StandardState::plus), standard_state(StandardState::minus)});

  double worst_trace = 0.0, worst_herm = 0.0, worst_min_ev = 0.0;
  for (int t = 1; t <= 10000; ++t) {
    const int k = 2 + (t % 3);  // cycle 2, 3, 4
    rho = random_step(rho, k, rng).first;
    worst_trace = std::max(worst_trace, std::abs(rho.matrix().trace().real() - 1.0) +
                                            std::abs(rho.matrix().trace().imag()));
    worst_herm =
        std::max(worst_herm, (rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff());
    if (t % 500 == 0) worst_min_ev = std::min(worst_min_ev, rho.min_eigenvalue());
  }
  worst_min_ev = std::min(worst_min_ev, rho.min_eigenvalue());

  c.note(fmt("trace drift %.3e, Hermiticity defect %.3e, min eigenvalue %.3e", worst_trace,
             worst_herm, worst_min_ev));
  c.require(worst_trace < 1e-10, fmt("trace drift %.3e exceeds 1e-10", worst_trace));
  c.require(worst_herm < 1e-10, fmt("Hermiticity defect %.3e exceeds 1e-10", worst_herm));
  c.require(worst_min_ev >= -1e-8, fmt("min eigenvalue %.3e below -1e-8", worst_min_ev));
  return c;
}

}  // namespace

int main() {
  const std::vector<std::function<Criterion()>> criteria = {
      criterion_reduced_rates,       criterion_moment_identity,
      criterion_reduction_oracle,    criterion_limit_groups,
      criterion_finite_time,         criterion_spectrum,
      criterion_full_state_ordering, criterion_channel_invariants,
  };

  int failures = 0;
  for (const auto& run : criteria) {
    const Criterion c = run();
    std::printf("[%s] %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str());
    for (const auto& note : c.notes) std::printf("    %s\n", note.c_str());
    if (!c.passed) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
