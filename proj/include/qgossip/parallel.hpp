#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace qgossip {

// Runs f(chunk_index, first_trial, last_trial) over a fixed logical chunking
// of [0, trials). The chunk layout depends only on `trials`, never on the
// thread count, so any per-chunk accumulation combined in chunk order gives
// bit-identical results serially and in parallel.
inline constexpr int kTrialChunks = 16;

template <typename F>
void for_each_trial_chunk(int trials, F&& f) {
  if (trials <= 0) return;
  const int chunks = trials < kTrialChunks ? trials : kTrialChunks;
  unsigned hw = std::thread::hardware_concurrency();
  const int workers = static_cast<int>(hw == 0 ? 1 : hw) < chunks
                          ? static_cast<int>(hw == 0 ? 1 : hw)
                          : chunks;

  auto chunk_range = [&](int c) {
    const int base = trials / chunks, extra = trials % chunks;
    const int first = c * base + (c < extra ? c : extra);
    const int len = base + (c < extra ? 1 : 0);
    return std::pair<int, int>{first, first + len};
  };

  if (workers <= 1) {
    for (int c = 0; c < chunks; ++c) {
      auto [first, last] = chunk_range(c);
      f(c, first, last);
    }
    return;
  }

  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
        auto [first, last] = chunk_range(c);
        f(c, first, last);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qgossip
