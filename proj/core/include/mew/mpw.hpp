#pragma once

// Most Probable Winner: probability of each candidate being a (co-)winner,
// by a dynamic program over voters whose states are exact score vectors.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mew/engine.hpp"

namespace mew {

struct MpwOptions {
  /// Largest number of score-vector states kept after any voter.
  std::uint64_t state_cap = 10'000'000;
  /// Cap on m for enumerating a voter's completions.
  EnumerationOptions enumeration;
};

struct MpwResult {
  std::vector<Candidate> winners;
  std::vector<double> win_probs;
  /// Score-vector states materialized over all voters.
  std::uint64_t worlds_explored = 0;
};

/// Scores scaled to integers: the smallest power of ten 10^d (d <= 9) that
/// makes every score integral. Throws invalid_rule if none does.
std::vector<std::int64_t> integer_scores(const ScoringRule& rule);

/// Throws too_large when the state count passes the cap, plus the errors of
/// completion enumeration (too_large, zero_posterior).
MpwResult mpw(const Profile& profile, const ScoringRule& rule, const MpwOptions& options = {});

}  // namespace mew
