#pragma once

// Brute-force ground truth by enumerating rankings and possible worlds.
// Nothing here calls the rank-estimation solvers; consistency checks and
// model probabilities are re-derived from the definitions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mew/engine.hpp"

namespace mew {

struct OracleOptions {
  /// Largest m whose m! rankings a voter's support may be drawn from.
  std::size_t candidate_cap = 10;
  /// Largest number of possible worlds enumerated.
  std::uint64_t world_cap = 1'000'000;
};

/// Defaults, with world_cap overridden by the MEW_ENUM_CAP environment
/// variable when it holds a positive integer.
OracleOptions default_oracle_options();

struct WeightedRanking {
  Ranking ranking;
  double prob = 0.0;
};

/// Rankings with positive posterior probability for one voter, in
/// lexicographic order. Throws too_large or zero_posterior.
std::vector<WeightedRanking> oracle_support(const Voter& voter, std::size_t m,
                                            const OracleOptions& options = default_oracle_options());

struct PossibleWorld {
  /// One ranking per voter copy: a voter of weight w contributes w
  /// independent draws.
  std::vector<Ranking> rankings;
  double prob = 0.0;
};

/// Number of possible worlds, saturating at UINT64_MAX.
std::uint64_t world_count(const Profile& profile,
                          const OracleOptions& options = default_oracle_options());

/// Calls `visit` for every world. Throws too_large above the world cap.
void for_each_world(const Profile& profile,
                    const std::function<void(std::span<const Ranking* const>, double)>& visit,
                    const OracleOptions& options = default_oracle_options());

std::vector<PossibleWorld> enumerate_worlds(
    const Profile& profile, const OracleOptions& options = default_oracle_options());

/// N(c at rank j | p) by enumeration.
std::uint64_t fcp_count(Candidate c, std::size_t j, const PartialOrder& p, std::size_t m,
                        const OracleOptions& options = default_oracle_options());

/// Expected score of every candidate. Voters are independent, so the world
/// sum is evaluated voter by voter.
std::vector<double> oracle_expected_scores(
    const Profile& profile, const ScoringRule& rule,
    const OracleOptions& options = default_oracle_options());

/// Probability of being a (co-)winner, over all worlds.
std::vector<double> oracle_mpw(const Profile& profile, const ScoringRule& rule,
                               const OracleOptions& options = default_oracle_options());

/// Every world's rankings, each weighted by the world's probability.
std::vector<WeightedRanking> meta_profile(const Profile& profile,
                                          const OracleOptions& options = default_oracle_options());

/// Weighted positional scores of a complete weighted profile.
std::vector<double> weighted_scores(std::span<const WeightedRanking> rankings,
                                    const ScoringRule& rule);

double oracle_expected_regret(Candidate c, const Profile& profile, const ScoringRule& rule,
                              const OracleOptions& options = default_oracle_options());

}  // namespace mew
