#pragma once

// Rank estimation: for one voter and one candidate c, the distribution of
// c's rank under the voter's (posterior) ranking distribution.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mew/preferences.hpp"
#include "mew/ranking_models.hpp"
#include "mew/scoring.hpp"

namespace mew {

/// probs[j - 1] = Pr(c at rank j).
struct RankDistribution {
  std::vector<double> probs;

  std::size_t size() const noexcept { return probs.size(); }
  double operator[](std::size_t index) const { return probs[index]; }
  /// Sum over j of probs[j - 1] * s(j).
  double expected_score(const ScoringRule& rule) const;
  friend bool operator==(const RankDistribution&, const RankDistribution&) = default;
};

/// A generation-step model, an optional observation of the sampled ranking,
/// and a multiplicity.
struct Voter {
  RankingModel model = UniformModel{};
  std::optional<Observation> observation;
  std::uint64_t weight = 1;

  friend bool operator==(const Voter&, const Voter&) = default;
};

/// Throws when the model or observation is invalid over `candidates`, or the
/// weight is zero.
void validate(const Voter& voter, const CandidateSet& candidates);

struct RepOptions {
  /// Poset solvers refuse instances whose cover width exceeds this.
  std::size_t cover_width_cap = 6;
  /// Uniform posets up to this many candidates use the order-ideal counter
  /// instead of the insertion DP.
  std::size_t ideal_counting_max_m = 16;
};

// Closed forms for the uniform model.
RankDistribution rep_uniform(std::size_t m);
RankDistribution rep_fully_partitioned(Candidate c, const PartitionedPreference& fp, std::size_t m);
RankDistribution rep_partial_chain(Candidate c, const PartialChain& pc, std::size_t m);
RankDistribution rep_partially_partitioned(Candidate c, const PartitionedPreference& pp,
                                           std::size_t m);
RankDistribution rep_truncated(Candidate c, const TruncatedRanking& tr, std::size_t m);

/// Insertion DP over the states {unplaced} and {c at k}.
RankDistribution rep_rim(Candidate c, const RimModel& model);

/// Pr(c at rank k) by the selection DP over (alpha, beta) states.
double rep_rsm(Candidate c, std::size_t k, const RsmModel& model);
/// All ranks in one pass of the same DP.
RankDistribution rep_rsm_all(Candidate c, const RsmModel& model);

/// Insertion DP conditioned on a partial order. Tracks the positions of
/// inserted items that still wait for a cover-related item, plus c.
/// Throws cover_width_exceeded or zero_posterior.
RankDistribution rep_rim_poset(Candidate c, const RimModel& model, const PartialOrder& p,
                               const RepOptions& options = {});

/// Uniform distribution over the linear extensions of p, through the
/// insertion DP with a uniform RIM. The insertion order is the one (identity
/// or a topological order) with the smaller cover width.
RankDistribution rep_uniform_poset(Candidate c, const PartialOrder& p, std::size_t m,
                                   const RepOptions& options = {});

/// N(c at j | p) for every candidate, by counting over order ideals.
/// counts[c][j - 1]; requires m <= 63 and is exponential in m.
std::vector<std::vector<double>> fixed_rank_counts(const PartialOrder& p, std::size_t m);

/// Insertion DP with top/bottom items forced to their fixed slots.
RankDistribution rep_rim_truncated(Candidate c, const RimModel& model,
                                   const TruncatedRanking& tr);

/// Mallows restricted to c's bucket, shifted past the earlier buckets.
RankDistribution rep_mallows_partitioned(Candidate c, const MallowsModel& model,
                                         const PartitionedPreference& fp);

/// Routes to the cheapest applicable solver.
RankDistribution rep_dispatch(Candidate c, const Voter& voter, std::size_t m,
                              const RepOptions& options = {});

/// Per-voter solver state reused across candidates (closures, converted
/// models, whole-voter tables).
class VoterRep {
 public:
  VoterRep(const Voter& voter, std::size_t m, const RepOptions& options = {});
  ~VoterRep();
  VoterRep(VoterRep&&) noexcept;
  VoterRep& operator=(VoterRep&&) noexcept;

  RankDistribution distribution(Candidate c) const;
  double expected_score(Candidate c, const ScoringRule& rule) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mew
