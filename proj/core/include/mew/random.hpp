#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace mew {

/// Seeded generator with platform-stable output.
///
/// Bits come from std::mt19937_64, whose sequence is fixed by the standard.
/// The standard distributions are implementation-defined, so the derived
/// draws are implemented here: uniform01() uses the top 53 bits, and
/// uniform_index() uses rejection sampling on a power-of-two mask.
///
/// Independent streams are derived with `Rng::stream(seed, index)`, which
/// seeds the engine with splitmix64(seed ^ splitmix64(index)). Generators
/// seed voter i from stream i + 1, so appending voters never perturbs the
/// earlier ones.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index);
  static std::uint64_t splitmix64(std::uint64_t x) noexcept;

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);
  /// Index drawn with probability proportional to weights[i].
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mew
