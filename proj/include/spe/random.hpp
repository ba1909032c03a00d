#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace spe {

/// Seeded random stream with labeled child derivation.
///
/// Children are keyed by (purpose label, index) and depend only on the parent
/// seed and the key, never on how much of the parent has been consumed. Any
/// number of children may therefore be derived in any order, or on any thread,
/// without changing the values each one produces.
///
/// Distributions are implemented here rather than through <random>'s
/// distribution classes, whose output is implementation-defined; only the
/// fully specified mt19937_64 engine is used.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed = 0);

  std::uint64_t seed() const noexcept { return seed_; }

  RandomSource derive(std::string_view label, std::uint64_t index = 0) const;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). `n` must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01();

  /// Standard normal deviate (Box-Muller, no caching).
  double normal();

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace spe
