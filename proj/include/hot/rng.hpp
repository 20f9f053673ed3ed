#pragma once

#include <cstdint>

namespace hot {

struct Seed {
  std::uint64_t value = 0;
};

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based stream: output i depends only on (key, i), so any range of
/// outputs can be produced independently of the others.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t key, std::uint64_t stream = 0)
      : key_(mix64(mix64(key) + stream * golden_gamma + 1)) {}

  constexpr std::uint64_t at(std::uint64_t counter) const { return mix64(key_ + (counter + 1) * golden_gamma); }

  constexpr std::uint64_t next() { return at(counter_++); }

  /// Uniform integer in [0, bound), bound >= 1; Lemire's rejection method.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace hot
