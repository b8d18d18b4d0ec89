#include "qgossip/perm.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qgossip {

Permutation::Permutation(int n) {
  if (n < 1) throw std::invalid_argument("permutation size must be positive");
  images_.resize(n);
  for (int i = 0; i < n; ++i) images_[i] = i;
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  if (n < 1) throw std::invalid_argument("permutation size must be positive");
  std::vector<char> seen(n, 0);
  for (int v : images) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("images are not a bijection");
    seen[v] = 1;
  }
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<int> zero(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) zero[i] = images[i] - 1;
  return from_images(std::move(zero));
}

std::vector<int> Permutation::one_based_images() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[images_[i]] = i;
  return from_images(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::vector<int> Permutation::support() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (images_[i] != i) out.push_back(i);
  return out;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cycle;
    int j = i;
    while (!seen[j]) {
      seen[j] = 1;
      cycle.push_back(j);
      j = images_[j];
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

bool Permutation::is_cycle_on(const std::vector<int>& edge) const {
  std::vector<int> sorted_edge(edge);
  std::sort(sorted_edge.begin(), sorted_edge.end());
  std::vector<int> sup = support();
  if (sup != sorted_edge) return false;
  // One orbit covering the whole edge.
  int steps = 0;
  int j = sorted_edge.front();
  do {
    j = images_[j];
    ++steps;
  } while (j != sorted_edge.front() && steps <= size());
  return steps == static_cast<int>(sorted_edge.size());
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < size(); ++i) {
    if (i) os << ' ';
    os << images_[i] + 1;
  }
  os << ']';
  return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> images(p.size());
  for (int i = 0; i < p.size(); ++i) images[i] = p(q(i));
  return Permutation::from_images(std::move(images));
}

Permutation power(const Permutation& p, long long t) {
  if (t < 0) throw std::invalid_argument("power: negative exponent");
  Permutation result = Permutation::identity(p.size());
  Permutation base = p;
  while (t > 0) {
    if (t & 1) result = compose(result, base);
    base = compose(base, base);
    t >>= 1;
  }
  return result;
}

Parity parity(const Permutation& p) {
  int transpositions = 0;
  for (const auto& cycle : p.cycles()) transpositions += static_cast<int>(cycle.size()) - 1;
  return (transpositions % 2 == 0) ? Parity::even : Parity::odd;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::int64_t factorial(int n) {
  std::int64_t result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

std::vector<int> unrank_combination(int n, int k, std::int64_t rank) {
  if (rank < 0 || rank >= binomial(n, k)) throw std::invalid_argument("combination rank out of range");
  std::vector<int> out;
  out.reserve(k);
  int v = 0;
  for (int slot = k; slot > 0; --slot) {
    // Advance v until taking it keeps enough combinations below the rank.
    for (;; ++v) {
      const std::int64_t with_v = binomial(n - v - 1, slot - 1);
      if (rank < with_v) break;
      rank -= with_v;
    }
    out.push_back(v++);
  }
  return out;
}

std::vector<int> unrank_arrangement(std::vector<int> sorted_items, std::int64_t rank) {
  const int m = static_cast<int>(sorted_items.size());
  if (rank < 0 || rank >= factorial(m)) throw std::invalid_argument("arrangement rank out of range");
  std::vector<int> out;
  out.reserve(m);
  for (int slot = m; slot > 0; --slot) {
    const std::int64_t block = factorial(slot - 1);
    const auto idx = static_cast<std::size_t>(rank / block);
    rank %= block;
    out.push_back(sorted_items[idx]);
    sorted_items.erase(sorted_items.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

namespace {

void validate_edge(const std::vector<int>& edge, int n) {
  if (edge.size() < 2) throw std::invalid_argument("edge must have at least 2 nodes");
  for (std::size_t i = 0; i < edge.size(); ++i) {
    if (edge[i] < 0 || edge[i] >= n) throw std::invalid_argument("edge node out of range");
    if (i > 0 && edge[i] == edge[i - 1]) throw std::invalid_argument("edge has duplicate nodes");
  }
}

Permutation cycle_from_arrangement(int n, int anchor, const std::vector<int>& rest) {
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) images[i] = i;
  int cur = anchor;
  for (int w : rest) {
    images[cur] = w;
    cur = w;
  }
  images[cur] = anchor;
  return Permutation::from_images(std::move(images));
}

}  // namespace

Permutation k_cycle_by_rank(const std::vector<int>& edge, int n, std::int64_t rank) {
  std::vector<int> sorted_edge(edge);
  std::sort(sorted_edge.begin(), sorted_edge.end());
  validate_edge(sorted_edge, n);
  std::vector<int> rest(sorted_edge.begin() + 1, sorted_edge.end());
  return cycle_from_arrangement(n, sorted_edge.front(), unrank_arrangement(rest, rank));
}

std::vector<Permutation> cyclic_permutations_over(std::vector<int> edge, int n) {
  std::sort(edge.begin(), edge.end());
  validate_edge(edge, n);
  const std::int64_t count = factorial(static_cast<int>(edge.size()) - 1);
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> rest(edge.begin() + 1, edge.end());
  for (std::int64_t r = 0; r < count; ++r)
    out.push_back(cycle_from_arrangement(n, edge.front(), unrank_arrangement(rest, r)));
  return out;
}

std::vector<Permutation> enumerate_k_cycles(int n, int k) {
  if (k < 2 || k > n) throw std::invalid_argument("enumerate_k_cycles requires 2 <= k <= n");
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(binomial(n, k) * factorial(k - 1)));
  for (std::int64_t s = 0; s < binomial(n, k); ++s) {
    auto cycles = cyclic_permutations_over(unrank_combination(n, k, s), n);
    out.insert(out.end(), cycles.begin(), cycles.end());
  }
  return out;
}

bool PermutationGroup::contains(const Permutation& p) const {
  return std::binary_search(elements.begin(), elements.end(), p);
}

GroupTooLargeError::GroupTooLargeError(std::size_t cap) {
  std::ostringstream os;
  os << "group too large: closure exceeds cap of " << cap << " elements";
  message_ = os.str();
}

PermutationGroup generate_subgroup(const std::vector<Permutation>& generators, std::size_t cap) {
  if (generators.empty()) throw std::invalid_argument("generate_subgroup needs at least one generator");
  if (cap < 1) throw std::invalid_argument("generate_subgroup cap must be >= 1");
  const int n = generators.front().size();
  for (const auto& g : generators)
    if (g.size() != n) throw std::invalid_argument("generators act on different sets");

  std::set<std::vector<int>> seen;
  std::deque<Permutation> frontier;
  const Permutation id = Permutation::identity(n);
  seen.insert(id.images());
  frontier.push_back(id);

  while (!frontier.empty()) {
    Permutation current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators) {
      Permutation next = compose(current, g);
      if (seen.insert(next.images()).second) {
        if (seen.size() > cap) throw GroupTooLargeError(cap);
        frontier.push_back(std::move(next));
      }
    }
  }

  PermutationGroup group;
  group.elements.reserve(seen.size());
  for (const auto& images : seen) group.elements.push_back(Permutation::from_images(images));
  std::sort(group.elements.begin(), group.elements.end());
  return group;
}

}  // namespace qgossip
