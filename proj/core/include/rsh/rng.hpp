#pragma once

#include <cstdint>
#include <limits>

namespace rsh {

// SplitMix64 over a counter. A stream is fully determined by (seed, stream),
// so run i of an experiment draws the same numbers no matter which thread
// executes it or in what order.
class Rng {
  __extension__ typedef unsigned __int128 wide;

 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    counter_ += kGamma;
    return mix(key_ + counter_);
  }

  // Uniform integer in [0, bound), bound > 0; Lemire's method with rejection.
  std::uint64_t below(std::uint64_t bound) {
    wide m = static_cast<wide>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<wide>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Event with probability exactly 1/n.
  bool one_in(std::uint64_t n) { return below(n) == 0; }

  bool coin() { return ((*this)() >> 63) != 0; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rsh
