#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <vector>

namespace qgossip {

// Node indices are 0-based everywhere in code; JSON input/output uses the
// 1-based convention and converts at the boundary.
class Permutation {
 public:
  // Identity on {0..n-1}.
  explicit Permutation(int n);

  // images[i] = p(i), 0-based. Throws if not a bijection.
  static Permutation from_images(std::vector<int> images);
  static Permutation from_one_based(const std::vector<int>& images);

  static Permutation identity(int n) { return Permutation(n); }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }
  std::vector<int> one_based_images() const;

  Permutation inverse() const;
  bool is_identity() const;

  // Indices moved by the permutation.
  std::vector<int> support() const;

  // Full cycle decomposition, each cycle starting at its smallest element,
  // cycles ordered by that element. Fixed points included as 1-cycles.
  std::vector<std::vector<int>> cycles() const;

  // True iff the permutation acts as one cycle exactly on `edge` (sorted or
  // not) and fixes everything else.
  bool is_cycle_on(const std::vector<int>& edge) const;

  bool operator==(const Permutation& other) const { return images_ == other.images_; }
  bool operator<(const Permutation& other) const { return images_ < other.images_; }

  std::string to_string() const;

 private:
  Permutation() = default;
  std::vector<int> images_;
};

// Fixed convention used throughout: compose(p, q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);

// p composed with itself t times; power(p, 0) is the identity.
Permutation power(const Permutation& p, long long t);

enum class Parity { even, odd };

// Sign via cycle decomposition; a k-cycle is even iff k is odd.
Parity parity(const Permutation& p);

// The (k-1)! permutations acting as a single k-cycle on `edge` (a set of
// k >= 2 nodes within {0..n-1}) and as identity elsewhere. Ordering is
// canonical and deterministic: with the edge sorted ascending as
// v_1 < ... < v_k, entry r sends v_1 -> w_1 -> ... -> w_{k-1} -> v_1 where
// (w_1..w_{k-1}) is the rank-r lexicographic arrangement of {v_2..v_k}.
// Entry 0 is therefore the canonical cycle v_1 -> v_2 -> ... -> v_k -> v_1.
std::vector<Permutation> cyclic_permutations_over(std::vector<int> edge, int n);

// All C(n,k) * (k-1)! permutations that are a k-cycle on some k-subset of
// {0..n-1} and identity elsewhere. Index layout matches the samplers:
// element s*(k-1)! + r is cyclic_permutations_over(subset s, n)[r] with
// subsets in lexicographic order.
std::vector<Permutation> enumerate_k_cycles(int n, int k);

struct PermutationGroup {
  std::vector<Permutation> elements;  // sorted, deduplicated
  std::size_t order() const { return elements.size(); }
  bool contains(const Permutation& p) const;
};

inline constexpr std::size_t kDefaultGroupCap = 50000;

// Closure of the generators under composition (breadth-first over words).
// Throws GroupTooLargeError once the order would exceed `cap`; callers that
// only need the order of the limit group can fall back to the parity rule.
class GroupTooLargeError;
PermutationGroup generate_subgroup(const std::vector<Permutation>& generators,
                                   std::size_t cap = kDefaultGroupCap);

class GroupTooLargeError : public std::exception {
 public:
  explicit GroupTooLargeError(std::size_t cap);
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  std::string message_;
};

// Combinatorics helpers shared by the enumerators and the samplers.
std::int64_t binomial(int n, int k);
std::int64_t factorial(int n);

// The rank-th k-subset of {0..n-1} in lexicographic order.
std::vector<int> unrank_combination(int n, int k, std::int64_t rank);

// The rank-th lexicographic arrangement (full permutation) of the given
// sorted items, decoded from the factorial number system.
std::vector<int> unrank_arrangement(std::vector<int> sorted_items, std::int64_t rank);

// Single element of cyclic_permutations_over(edge, n) without materializing
// the whole list.
Permutation k_cycle_by_rank(const std::vector<int>& edge, int n, std::int64_t rank);

}  // namespace qgossip
