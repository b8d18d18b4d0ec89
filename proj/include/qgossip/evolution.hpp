#pragma once

#include <cstdint>
#include <vector>

#include "qgossip/perm.hpp"
#include "qgossip/qstate.hpp"
#include "qgossip/rng.hpp"

namespace qgossip {

// One entry of a deterministic schedule: an edge and which of its (k-1)!
// cyclic permutations drives the clique (index into the canonical ordering
// of cyclic_permutations_over; 0 is the ascending cycle).
struct ScheduleItem {
  std::vector<int> edge;
  std::int64_t cycle_index = 0;
};

// Either a periodic deterministic edge sequence or the random model where
// every step draws a k-clique and a cyclic permutation uniformly.
struct Schedule {
  enum class Mode { deterministic, random };

  Mode mode = Mode::deterministic;
  int n = 0;
  std::vector<ScheduleItem> items;  // deterministic mode
  int k = 0;                        // random mode
  std::uint64_t seed = 0;           // random mode

  static Schedule deterministic(int n, std::vector<ScheduleItem> items);
  static Schedule random(int n, int k, std::uint64_t seed);
};

// One clique-averaging step: the uniform mixture of conjugations by the
// powers of a cyclic permutation over `edge`. The last power is the identity,
// so the input state itself enters the mixture.
DensityMatrix det_step(const DensityMatrix& rho, const std::vector<int>& edge,
                       const Permutation& cycle);

struct StepSample {
  std::vector<int> edge;
  Permutation cycle;
};

// Randomized step: edge uniform over the C(n,k) k-subsets, then a cyclic
// permutation uniform over its (k-1)! cycles; jointly uniform over all
// k-cycle permutations. Returns the sample for audit.
std::pair<DensityMatrix, StepSample> random_step(const DensityMatrix& rho, int k,
                                                 RngStream& rng);

// Reduced-state dynamics: matrix-valued averaging over the edge, states off
// the edge untouched.
std::vector<QubitState> reduced_step(const std::vector<QubitState>& states,
                                     const std::vector<int>& edge);

// What to record along a run.
struct MetricSpec {
  enum class Kind {
    none,
    // sum_i || rho_i(t) - mean_j rho_j(0) ||_F^2 over reduced states
    reduced_dispersion,
    // || rho(t) - reference ||_F^2 for full-state runs
    distance_to_reference,
  };
  Kind kind = Kind::none;
  Eigen::MatrixXcd reference;
  int record_every = 1;
};

struct Trajectory {
  std::vector<int> steps;
  std::vector<double> values;
};

// Iterate the full-state dynamics for `steps` steps. Deterministic given the
// schedule (including its seed).
Trajectory run_full(const Schedule& schedule, const DensityMatrix& rho0, int steps,
                    const MetricSpec& metric, DensityMatrix* final_state = nullptr);

// Iterate the reduced-state dynamics. A random schedule consumes the same
// draw sequence as the full run, so both see identical edge sequences for a
// given seed.
Trajectory run_reduced(const Schedule& schedule, const std::vector<QubitState>& init,
                       int steps, const MetricSpec& metric,
                       std::vector<QubitState>* final_states = nullptr);

// Uniform average of conjugations over a permutation group: the consensus
// limit of the dynamics whose cliques generate that group. Idempotent and
// invariant under conjugation by every group element.
DensityMatrix limit_state(const DensityMatrix& rho0, const PermutationGroup& group,
                          std::size_t budget = kDefaultGroupCap);

}  // namespace qgossip
