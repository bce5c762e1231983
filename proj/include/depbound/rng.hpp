#pragma once

#include <cmath>
#include <cstdint>

namespace depbound {

inline constexpr std::uint64_t kDefaultSeed = 0x5eedb07dULL;

// Counter-based stream: output i of stream (seed, task) is a pure function of
// (seed, task, i), so parallel or re-ordered consumption cannot change results.
// Mixing is the splitmix64 finalizer over a Weyl sequence.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t task_id)
      : key_(mix(seed ^ 0x9e3779b97f4a7c15ULL) ^ mix(task_id + 0xbf58476d1ce4e5b9ULL)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL;
    return mix(z);
  }

  // Uniform in [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bit() { return (next_u64() >> 63) != 0; }

  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller (used for optimizer starts only).
  double next_gaussian();

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30; z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27; z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

inline double RngStream::next_gaussian() {
  double u1 = next_double(), u2 = next_double();
  while (u1 <= 1e-300) u1 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline const char* rng_algorithm() { return "splitmix64-weyl-counter"; }

}  // namespace depbound
