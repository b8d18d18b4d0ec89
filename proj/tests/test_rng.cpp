#include "doctest.h"

#include <atomic>
#include <set>
#include <vector>

#include "qgossip/parallel.hpp"
#include "qgossip/rng.hpp"

using namespace qgossip;

TEST_CASE("streams are deterministic and seed-sensitive") {
  RngStream a(123), b(123), c(124);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  bool differs = false;
  RngStream a2(123);
  for (int i = 0; i < 10; ++i) differs |= (a2.next_u64() != c.next_u64());
  CHECK(differs);
}

TEST_CASE("per-trial streams do not collide") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t trial = 0; trial < 1000; ++trial)
    firsts.insert(RngStream::for_trial(7, trial).next_u64());
  CHECK(firsts.size() == 1000);
  // Different masters give different trial streams too.
  CHECK(RngStream::for_trial(7, 0).next_u64() != RngStream::for_trial(8, 0).next_u64());
}

TEST_CASE("next_below stays in range and covers small supports") {
  RngStream rng(55);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 6000; ++i) {
    const auto v = rng.next_below(6);
    REQUIRE(v < 6);
    counts[static_cast<std::size_t>(v)]++;
  }
  for (int count : counts) CHECK(count > 800);  // crude uniformity floor

  CHECK(rng.next_below(1) == 0);
}

TEST_CASE("next_double is in [0,1)") {
  RngStream rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.next_double();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("trial chunking covers every trial exactly once") {
  for (int trials : {1, 5, 16, 17, 1000}) {
    std::vector<std::atomic<int>> hits(static_cast<std::size_t>(trials));
    for (auto& h : hits) h.store(0);
    for_each_trial_chunk(trials, [&](int, int first, int last) {
      for (int t = first; t < last; ++t) hits[static_cast<std::size_t>(t)].fetch_add(1);
    });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
}
