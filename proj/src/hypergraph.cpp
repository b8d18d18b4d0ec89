#include "qgossip/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qgossip/perm.hpp"

namespace qgossip {

GeneralizedGraph::GeneralizedGraph(int n, std::vector<std::vector<int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw std::invalid_argument("graph needs at least one node");
  std::set<std::vector<int>> seen;
  for (auto& edge : edges_) {
    std::sort(edge.begin(), edge.end());
    if (edge.size() < 2) throw std::invalid_argument("edges must have at least 2 nodes");
    for (std::size_t i = 0; i < edge.size(); ++i) {
      if (edge[i] < 0 || edge[i] >= n_) throw std::invalid_argument("edge node out of range");
      if (i > 0 && edge[i] == edge[i - 1]) throw std::invalid_argument("edge has duplicate nodes");
    }
    if (!seen.insert(edge).second) throw std::invalid_argument("duplicate edge");
  }
}

bool is_k_regular(const GeneralizedGraph& g, int k) {
  for (const auto& edge : g.edges())
    if (static_cast<int>(edge.size()) != k) return false;
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool reduced_consensus_condition(const GeneralizedGraph& g) {
  if (g.edges().empty()) throw std::invalid_argument("condition needs at least one edge");
  const int n = g.node_count();
  std::vector<char> covered(n, 0);
  UnionFind uf(n);
  for (const auto& edge : g.edges()) {
    for (int v : edge) covered[v] = 1;
    for (std::size_t i = 1; i < edge.size(); ++i) uf.unite(edge[0], edge[i]);
  }
  for (int v = 0; v < n; ++v)
    if (!covered[v]) return false;
  const int root = uf.find(0);
  for (int v = 1; v < n; ++v)
    if (uf.find(v) != root) return false;
  return true;
}

std::vector<std::pair<std::int64_t, int>> prime_factorization(std::int64_t value) {
  if (value < 1) throw std::invalid_argument("factorization needs a positive integer");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= value; ++p) {
    if (value % p) continue;
    int exp = 0;
    while (value % p == 0) {
      value /= p;
      ++exp;
    }
    out.emplace_back(p, exp);
  }
  if (value > 1) out.emplace_back(value, 1);
  return out;
}

FiniteTimeReport finite_time_feasible(int n, int k) {
  if (k < 2 || k > n) throw std::invalid_argument("finite_time_feasible requires 2 <= k <= n");
  FiniteTimeReport report;
  report.n = n;
  report.k = k;
  report.n_factors = prime_factorization(n);
  report.k_factors = prime_factorization(k);
  if (report.n_factors.size() != report.k_factors.size()) return report;
  std::int64_t max_ratio = 0;
  for (std::size_t i = 0; i < report.n_factors.size(); ++i) {
    const auto [pn, s] = report.n_factors[i];
    const auto [pk, r] = report.k_factors[i];
    if (pn != pk || s < r) return report;
    max_ratio = std::max<std::int64_t>(max_ratio, (s + r - 1) / r);
  }
  report.feasible = true;
  report.steps = static_cast<std::int64_t>(n) * max_ratio / k;
  return report;
}

namespace {

// Row-stochastic averaging matrix product, kept exact: entries[i][j] / denom.
struct ExactMatrix {
  std::vector<std::int64_t> entries;  // row-major n x n
  std::int64_t denom = 1;

  void normalize() {
    std::int64_t g = denom;
    for (std::int64_t e : entries) g = std::gcd(g, e);
    if (g > 1) {
      denom /= g;
      for (auto& e : entries) e /= g;
    }
  }
};

bool operator<(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.denom != b.denom) return a.denom < b.denom;
  return a.entries < b.entries;
}

// Left-multiply by the averaging matrix of `edge`: rows on the edge become
// the edge-average of previous rows; other rows are untouched.
ExactMatrix apply_edge(const ExactMatrix& m, const std::vector<int>& edge, int n, int k) {
  ExactMatrix out;
  out.denom = m.denom * k;
  out.entries.assign(m.entries.begin(), m.entries.end());
  for (auto& e : out.entries) e *= k;
  std::vector<std::int64_t> avg(n, 0);
  for (int j = 0; j < n; ++j) {
    std::int64_t sum = 0;
    for (int i : edge) sum += m.entries[static_cast<std::size_t>(i) * n + j];
    avg[j] = sum;
  }
  for (int i : edge)
    for (int j = 0; j < n; ++j) out.entries[static_cast<std::size_t>(i) * n + j] = avg[j];
  out.normalize();
  return out;
}

}  // namespace

ScheduleSearchResult search_finite_time_schedule(int n, int k, int max_steps,
                                                 std::size_t state_budget) {
  if (k < 2 || k > n) throw std::invalid_argument("search requires 2 <= k <= n");
  if (max_steps < 0) throw std::invalid_argument("max_steps must be non-negative");

  std::vector<std::vector<int>> all_edges;
  for (std::int64_t s = 0; s < binomial(n, k); ++s)
    all_edges.push_back(unrank_combination(n, k, s));

  ExactMatrix start;
  start.entries.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) start.entries[static_cast<std::size_t>(i) * n + i] = 1;

  ExactMatrix goal;
  goal.entries.assign(static_cast<std::size_t>(n) * n, 1);
  goal.denom = n;
  goal.normalize();

  struct Node {
    ExactMatrix matrix;
    std::size_t parent;
    int edge_index;
  };

  ScheduleSearchResult result;
  std::vector<Node> nodes;
  std::set<ExactMatrix> visited;

  auto reconstruct = [&](std::size_t idx) {
    std::vector<std::vector<int>> schedule;
    while (nodes[idx].edge_index >= 0) {
      schedule.push_back(all_edges[static_cast<std::size_t>(nodes[idx].edge_index)]);
      idx = nodes[idx].parent;
    }
    std::reverse(schedule.begin(), schedule.end());
    return schedule;
  };

  nodes.push_back({start, 0, -1});
  visited.insert(start);
  if (start.entries == goal.entries && start.denom == goal.denom) {
    result.status = ScheduleSearchStatus::found;
    result.states_explored = 1;
    return result;  // n = 1 never happens here, but keep the check honest
  }

  std::size_t frontier_begin = 0;
  for (int depth = 1; depth <= max_steps; ++depth) {
    const std::size_t frontier_end = nodes.size();
    if (frontier_begin == frontier_end) break;
    for (std::size_t idx = frontier_begin; idx < frontier_end; ++idx) {
      for (std::size_t e = 0; e < all_edges.size(); ++e) {
        ExactMatrix next = apply_edge(nodes[idx].matrix, all_edges[e], n, k);
        if (!visited.insert(next).second) continue;
        nodes.push_back({std::move(next), idx, static_cast<int>(e)});
        const Node& candidate = nodes.back();
        if (candidate.matrix.entries == goal.entries && candidate.matrix.denom == goal.denom) {
          result.status = ScheduleSearchStatus::found;
          result.schedule = reconstruct(nodes.size() - 1);
          result.states_explored = nodes.size();
          return result;
        }
        if (nodes.size() > state_budget) {
          result.status = ScheduleSearchStatus::budget_exceeded;
          result.states_explored = nodes.size();
          return result;
        }
      }
    }
    frontier_begin = frontier_end;
  }

  result.status = ScheduleSearchStatus::exhausted;
  result.states_explored = nodes.size();
  return result;
}

}  // namespace qgossip
