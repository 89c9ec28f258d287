#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace shapegen {

/// Seeded random stream used by every sampler. One stream per chain / swarm /
/// word sampler; streams are never shared between threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() { return normal_(engine_); }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Seed split scheme. Every subcomponent seed is derived from the root seed as
/// splitmix64(root ^ splitmix64(stream * 2^32 + index)), so each stream is
/// reproducible on its own.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index = 0);

namespace seed_stream {
inline constexpr std::uint64_t words = 1;
inline constexpr std::uint64_t chain = 2;
inline constexpr std::uint64_t pso = 3;
inline constexpr std::uint64_t bench = 4;
}  // namespace seed_stream

}  // namespace shapegen
