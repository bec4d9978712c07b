#pragma once

// Seeded synthetic profiles. All voters of a profile share one reference
// ranking (drawn from stream 0); voter i draws from stream i + 1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mew/engine.hpp"
#include "mew/random.hpp"

namespace mew {

enum class GenKind {
  poset,
  partitioned,
  partial_partitioned,
  chain,
  truncated,
  mallows,
  rim,
  rsm,
  mallows_poset,
  mallows_partitioned,
  mallows_partial_partitioned,
  mallows_chain,
  mallows_truncated,
  rim_poset,
  rim_truncated,
};

/// CLI names: "poset", "partial-partitioned", "mallows+poset", ...
std::string_view to_string(GenKind kind) noexcept;
std::optional<GenKind> parse_gen_kind(std::string_view name);
std::vector<GenKind> all_gen_kinds();

struct GenSpec {
  GenKind kind = GenKind::poset;
  std::size_t m = 10;
  std::size_t n = 100;
  double phi = 0.5;
  double p_max = 0.1;
  std::size_t k = 0;  // buckets or chain length
  std::size_t t = 0;  // truncated top
  std::size_t b = 0;  // truncated bottom
  std::uint64_t seed = 0;
};

/// Throws invalid_parameter, or invalid_k for a bad bucket/chain count.
void validate(const GenSpec& spec);

/// Selection step of the repeated selection model with pair probabilities
/// p(1..m-1): the item selected at step i is preferred to each remaining
/// item with probability p[i - 1].
PartialOrder sample_rsm_poset(const RsmModel& model, std::span<const double> p, Rng& rng);

/// Uniformly random permutation (Fisher-Yates).
Ranking random_ranking(std::size_t m, Rng& rng);

Profile gen_posets(const GenSpec& spec);
Profile gen_partitioned(const GenSpec& spec);
Profile gen_chains(const GenSpec& spec);
Profile gen_truncated(const GenSpec& spec);
/// Mallows/RIM/RSM profiles, and the combined kinds.
Profile gen_model_profile(const GenSpec& spec);

/// Dispatches on spec.kind.
Profile generate(const GenSpec& spec);

}  // namespace mew
