#pragma once

#include <cstdint>
#include <random>

namespace mdev {

// SplitMix64 finalizer (bijective 64-bit mix).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Sub-seed derivation used wherever randomness branches. A run owns a single
// 64-bit master seed; `stream` tags a subsystem or grid point and `counter`
// a replicate index, so any partition of replicates over workers reproduces
// the serial run. The formula is a stable contract:
//
//   sub_seed(m, s, c) = mix64(mix64(m ^ s * 0x9E3779B97F4A7C15) ^ c)
//
// Changing it invalidates previously recorded outputs.
constexpr std::uint64_t sub_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t counter) noexcept {
  return mix64(mix64(master ^ stream * 0x9E3779B97F4A7C15ull) ^ counter);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Canonical uniform, strictly inside (0,1): ((x >> 11) + 0.5) * 2^-53.
  double uniform01() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53; }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace mdev
