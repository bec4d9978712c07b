#pragma once

// Expected-score aggregation over a profile and winner determination.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mew/preferences.hpp"
#include "mew/rep.hpp"
#include "mew/scoring.hpp"

namespace mew {

struct Profile {
  CandidateSet candidates;
  std::vector<Voter> voters;

  std::size_t size() const noexcept { return voters.size(); }
  friend bool operator==(const Profile&, const Profile&) = default;
};

/// Throws validation_error for an empty profile; otherwise validates every
/// voter, annotating failures with the voter index.
void validate(const Profile& profile);

struct ScoreBounds {
  std::vector<double> ub;
  std::vector<double> lb;
  /// Set for candidates whose exact score covers every group.
  std::vector<bool> resolved;
};

struct MewStats {
  std::uint64_t voters = 0;            // total weight
  std::size_t groups = 0;              // after grouping
  std::size_t groups_processed = 0;    // before the search stopped
  std::uint64_t voters_processed = 0;  // weight of the processed groups
  std::size_t prunings = 0;            // candidates eliminated
  std::size_t rep_calls = 0;
  double wall_seconds = 0.0;
};

struct MewResult {
  std::vector<Candidate> winners;
  /// Exact expected score; empty for pruned candidates.
  std::vector<std::optional<double>> expected_scores;
  std::vector<Candidate> pruned;
  /// Last bounds; for pruned candidates these are what eliminated them.
  ScoreBounds bounds;
  MewStats stats;
};

struct MewOptions {
  bool pruning = true;
  bool grouping = true;
  RepOptions rep;
  /// Called after each processed group with the current bounds.
  std::function<void(std::size_t, const ScoreBounds&)> on_group;
};

/// Winners are the candidates within this relative distance of the maximum.
inline constexpr double kTieTolerance = 1e-9;

/// Groups of this many voter groups are summed separately and then combined
/// in order, so sums do not depend on the worker count.
inline constexpr std::size_t kReductionBlock = 256;

/// Expected score of c for one voter (weight ignored).
double expected_score(Candidate c, const Voter& voter, const ScoringRule& rule, std::size_t m,
                      const RepOptions& options = {});

MewResult mew(const Profile& profile, const ScoringRule& rule, const MewOptions& options = {});

/// No pruning; groups are spread over `workers` threads. Bit-identical to
/// mew() with pruning off and the same grouping setting, for any worker
/// count.
MewResult mew_parallel(const Profile& profile, const ScoringRule& rule, std::size_t workers,
                       const MewOptions& options = {});

/// Expected value of (best score in the world - c's score), by enumerating
/// possible worlds. Throws too_large above the enumeration cap.
double expected_regret(Candidate c, const Profile& profile, const ScoringRule& rule);

}  // namespace mew
