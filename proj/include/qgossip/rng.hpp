#pragma once

#include <cstdint>

namespace qgossip {

// Counter-based pseudo-random stream (splitmix64). Each draw advances the
// counter by a fixed odd constant and mixes it, so streams derived from
// distinct (master seed, trial index) pairs never share state. Output is
// identical across platforms and thread schedules.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : counter_(mix(seed)) {}

  // Independent per-trial stream: the trial index is folded into the
  // counter base through the same bijective mixer.
  static RngStream for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
    return RngStream(mix(master_seed) + (trial_index + 1) * kGamma);
  }

  std::uint64_t next_u64() {
    counter_ += kGamma;
    return mix(counter_);
  }

  // Uniform in [0, bound). Unbiased via Lemire rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t counter_;
};

}  // namespace qgossip
