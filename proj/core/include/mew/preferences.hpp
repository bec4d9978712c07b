#pragma once

// Candidate universe, complete rankings and the incomplete-preference
// structures a voter can report: partial orders, (partially) partitioned
// preferences, partial chains and truncated rankings.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace mew {

/// Index of a candidate inside its CandidateSet, in [0, m).
using Candidate = std::uint32_t;

class CandidateSet {
 public:
  CandidateSet() = default;
  /// Throws validation_error when fewer than two names are given or a name
  /// repeats.
  explicit CandidateSet(std::vector<std::string> names);

  /// Names "c1".."cm".
  static CandidateSet numbered(std::size_t m);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Candidate c) const { return names_.at(c); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Candidate> find(std::string_view name) const;
  /// Throws unknown_candidate.
  Candidate index_of(std::string_view name) const;

  friend bool operator==(const CandidateSet& a, const CandidateSet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Candidate> index_;
};

/// A complete ranking. Position 0 holds the most preferred candidate.
class Ranking {
 public:
  Ranking() = default;
  /// Throws validation_error unless `order` is a permutation of 0..n-1.
  explicit Ranking(std::vector<Candidate> order);

  static Ranking identity(std::size_t m);

  std::size_t size() const noexcept { return order_.size(); }
  Candidate operator[](std::size_t position) const { return order_[position]; }
  std::span<const Candidate> order() const noexcept { return order_; }

  /// 1-based rank of `c`.
  std::size_t rank_of(Candidate c) const;
  /// ranks()[c] is the 1-based rank of c.
  std::vector<std::size_t> ranks() const;

  friend bool operator==(const Ranking&, const Ranking&) = default;
  friend auto operator<=>(const Ranking&, const Ranking&) = default;

 private:
  std::vector<Candidate> order_;
};

/// Directed preference pair: `better` is preferred to `worse`.
struct Preference {
  Candidate better = 0;
  Candidate worse = 0;
  friend bool operator==(const Preference&, const Preference&) = default;
  friend auto operator<=>(const Preference&, const Preference&) = default;
};

/// A set of preference pairs. Pairs are kept sorted and de-duplicated, so
/// two partial orders built from the same pairs compare equal.
class PartialOrder {
 public:
  PartialOrder() = default;
  explicit PartialOrder(std::vector<Preference> pairs);

  const std::vector<Preference>& pairs() const noexcept { return pairs_; }
  bool empty() const noexcept { return pairs_.empty(); }

  friend bool operator==(const PartialOrder&, const PartialOrder&) = default;

 private:
  std::vector<Preference> pairs_;
};

/// Ordered buckets with no order inside a bucket. Candidates listed in
/// `missing`, or in neither field, carry no preference information.
struct PartitionedPreference {
  std::vector<std::vector<Candidate>> buckets;
  std::vector<Candidate> missing;
  friend bool operator==(const PartitionedPreference&,
                         const PartitionedPreference&) = default;
};

/// A linear order over a subset of the candidates.
struct PartialChain {
  std::vector<Candidate> chain;
  friend bool operator==(const PartialChain&, const PartialChain&) = default;
};

/// Known top-t and bottom-b segments; the middle is unordered.
struct TruncatedRanking {
  std::vector<Candidate> top;
  std::vector<Candidate> bottom;
  friend bool operator==(const TruncatedRanking&,
                         const TruncatedRanking&) = default;
};

/// What was observed about one voter's ranking.
using Observation = std::variant<Ranking, PartialOrder, PartitionedPreference,
                                 PartialChain, TruncatedRanking>;

// Validation. Each overload returns normally iff the structure's invariants
// hold over `candidates`; otherwise throws Error with cycle_detected,
// unknown_candidate, overlap_violation or validation_error.
void validate(const Ranking& ranking, const CandidateSet& candidates);
void validate(const PartialOrder& order, const CandidateSet& candidates);
void validate(const PartitionedPreference& pref, const CandidateSet& candidates);
void validate(const PartialChain& chain, const CandidateSet& candidates);
void validate(const TruncatedRanking& truncated, const CandidateSet& candidates);
void validate(const Observation& observation, const CandidateSet& candidates);

/// True when the buckets alone cover every one of the `m` candidates.
bool is_fully_partitioned(const PartitionedPreference& pref, std::size_t m);

/// Pairs induced by an observation (bucket order, chain order, ...).
PartialOrder to_partial_order(const Observation& observation, std::size_t m);

/// t singleton buckets, one middle bucket (if nonempty), b singleton buckets.
PartitionedPreference to_partitioned(const TruncatedRanking& truncated,
                                     std::size_t m);

/// Transitive closure of a partial order over m candidates, with the cover
/// relation derived from it.
class PosetClosure {
 public:
  /// Throws cycle_detected or unknown_candidate.
  PosetClosure(const PartialOrder& order, std::size_t m);

  std::size_t size() const noexcept { return m_; }
  /// a is preferred to b, directly or transitively.
  bool precedes(Candidate a, Candidate b) const;
  std::size_t ancestor_count(Candidate c) const;
  std::size_t descendant_count(Candidate c) const;
  /// Items y that cover x (y > x with nothing in between).
  const std::vector<Candidate>& covered_by(Candidate x) const { return covered_by_[x]; }
  /// Items that x covers.
  const std::vector<Candidate>& covers(Candidate x) const { return covers_[x]; }
  bool has_relations() const noexcept { return has_relations_; }

  /// Kahn's algorithm, smallest index first.
  std::vector<Candidate> topological_order() const;
  bool consistent(const Ranking& ranking) const;

 private:
  std::size_t m_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> reach_;  // row-major bit matrix, reach[a] has b iff a > b
  std::vector<std::vector<Candidate>> covered_by_;
  std::vector<std::vector<Candidate>> covers_;
  bool has_relations_ = false;

  bool bit(Candidate a, Candidate b) const;
};

struct EnumerationOptions {
  std::size_t max_candidates = 10;
};

/// Every linear extension of `order`, in lexicographic order of the candidate
/// index sequence. Throws too_large when m exceeds the configured cap.
std::vector<Ranking> linear_extensions(const PartialOrder& order,
                                       const CandidateSet& candidates,
                                       EnumerationOptions options = {});
std::vector<Ranking> linear_extensions(const PartialOrder& order, std::size_t m,
                                       EnumerationOptions options = {});
/// Streams the same sequence without materializing it.
void for_each_linear_extension(const PartialOrder& order, std::size_t m,
                               const std::function<void(std::span<const Candidate>)>& visit,
                               EnumerationOptions options = {});

/// Items whose position a repeated-insertion pass over `insertion_order` must
/// remember after each step: an inserted item stays tracked while some item
/// it is cover-related to has not been inserted yet. Entry i lists the
/// tracked items after inserting insertion_order[i], in insertion order.
std::vector<std::vector<Candidate>> tracking_schedule(
    std::span<const Candidate> insertion_order, const PosetClosure& closure);

/// Largest number of simultaneously tracked items over the insertion of
/// `sigma`.
std::size_t cover_width(const Ranking& sigma, const PartialOrder& order);
std::size_t cover_width(std::span<const Candidate> sigma, const PosetClosure& closure);

struct RankRange {
  std::size_t best = 1;   // smallest reachable rank, 1-based
  std::size_t worst = 1;  // largest reachable rank
  friend bool operator==(const RankRange&, const RankRange&) = default;
};

/// Tight range of ranks every completion of `observation` can give `c`.
RankRange rank_bounds(Candidate c, const Observation& observation, std::size_t m);
/// Same, for all candidates at once; no observation yields (1, m) everywhere.
std::vector<RankRange> rank_bounds_all(const Observation* observation, std::size_t m);

}  // namespace mew
