#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mew {

enum class RuleKind { plurality, veto, k_approval, borda, custom };

/// Positional scoring rule: the candidate at rank j earns scores[j - 1].
/// Scores are nonnegative, nonincreasing, and s(1) > s(m).
class ScoringRule {
 public:
  /// Throws invalid_rule when the vector violates the invariants.
  explicit ScoringRule(std::vector<double> scores, RuleKind kind = RuleKind::custom,
                       std::size_t k = 0);

  std::size_t size() const noexcept { return scores_.size(); }
  std::span<const double> scores() const noexcept { return scores_; }
  RuleKind kind() const noexcept { return kind_; }
  std::size_t k() const noexcept { return k_; }

  /// s(j) for 1 <= j <= m; throws rank_out_of_range otherwise.
  double score_of_rank(std::size_t j) const;

  /// Canonical text form, parseable by parse_rule.
  std::string describe() const;

  friend bool operator==(const ScoringRule& a, const ScoringRule& b) {
    return a.scores_ == b.scores_;
  }

 private:
  std::vector<double> scores_;
  RuleKind kind_;
  std::size_t k_;
};

/// Built-in rules. k is only read for k_approval and must satisfy
/// 1 <= k < m (invalid_k otherwise).
ScoringRule make_rule(RuleKind kind, std::size_t m, std::size_t k = 0);

/// Parses `plurality`, `veto`, `borda`, `k-approval:K` or
/// `custom:s1,s2,...,sm`.
ScoringRule parse_rule(std::string_view text, std::size_t m);

}  // namespace mew
