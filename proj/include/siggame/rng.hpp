#pragma once

#include <cassert>
#include <cstdint>

namespace siggame {

// Splittable counter-based generator (splitmix64 core). Each consumer
// derives an independent stream from (master_seed, stream index), so
// ensemble runs are reproducible regardless of execution order or
// thread count.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t master_seed, std::uint64_t stream = 0)
      : key_(mix(master_seed + 0x9E3779B97F4A7C15ull) ^
             mix(stream + 0xD1B54A32D192ED03ull)) {}

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ull;
    return mix(key_ + counter_);
  }

  // Uniform integer in [0, bound). Exact: multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    assert(bound > 0);
    unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1).
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace siggame
