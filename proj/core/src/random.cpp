#include "mew/random.hpp"

#include <bit>

#include "mew/error.hpp"

namespace mew {

std::uint64_t Rng::splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed ^ splitmix64(index)));
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw Error(Errc::invalid_parameter, "uniform_index over an empty range");
  if (n == 1) return 0;
  const std::uint64_t bound = n - 1;
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound);
  for (;;) {
    std::uint64_t x = engine_() & mask;
    if (x <= bound) return static_cast<std::size_t>(x);
  }
}

std::size_t Rng::categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw Error(Errc::invalid_parameter, "categorical weights sum to zero");
  const double u = uniform01() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace mew
