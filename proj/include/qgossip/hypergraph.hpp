#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qgossip {

// Interaction structure: nodes {0..n-1} plus multi-vertex edges (cliques).
// Edges are stored sorted and must be distinct, non-singleton subsets.
class GeneralizedGraph {
 public:
  GeneralizedGraph(int n, std::vector<std::vector<int>> edges);

  int node_count() const { return n_; }
  const std::vector<std::vector<int>>& edges() const { return edges_; }

 private:
  int n_;
  std::vector<std::vector<int>> edges_;
};

// True iff every edge has exactly k nodes (vacuously true with no edges).
bool is_k_regular(const GeneralizedGraph& g, int k);

// Reduced-state consensus condition: the pairwise graph
// { {i,j} : i,j in some edge } is connected and spans all nodes. This is the
// criterion that also covers the single-edge case correctly.
bool reduced_consensus_condition(const GeneralizedGraph& g);

struct FiniteTimeReport {
  int n = 0;
  int k = 0;
  bool feasible = false;
  // Defined only when feasible: n * max_i ceil(s_i / r_i) / k.
  std::int64_t steps = 0;
  // Prime factorizations as (prime, exponent) pairs, ascending primes.
  std::vector<std::pair<std::int64_t, int>> n_factors;
  std::vector<std::pair<std::int64_t, int>> k_factors;
};

std::vector<std::pair<std::int64_t, int>> prime_factorization(std::int64_t value);

// Finite-time reduced-state averaging with k-cliques exists iff n and k have
// the same prime set with n's exponents >= k's; the fastest schedule then
// takes n * max ceil(s_i/r_i) / k steps.
FiniteTimeReport finite_time_feasible(int n, int k);

enum class ScheduleSearchStatus {
  found,             // schedule returned; shortest by construction (BFS)
  exhausted,         // provably no schedule of length <= max_steps
  budget_exceeded,   // state budget hit before the depth cap; inconclusive
};

struct ScheduleSearchResult {
  ScheduleSearchStatus status = ScheduleSearchStatus::exhausted;
  std::vector<std::vector<int>> schedule;  // edges in application order
  std::size_t states_explored = 0;
};

// Breadth-first search over sequences of k-edges for a product of averaging
// matrices equal to the exact all-pairs average. Matrices are tracked in
// exact integer/denominator form, so a hit certifies finite-time averaging.
// Desk-scale tool; intended for n <= 6.
ScheduleSearchResult search_finite_time_schedule(int n, int k, int max_steps,
                                                 std::size_t state_budget = 200000);

}  // namespace qgossip
