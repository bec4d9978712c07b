#include "mew/scoring.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "mew/error.hpp"

namespace mew {

ScoringRule::ScoringRule(std::vector<double> scores, RuleKind kind, std::size_t k)
    : scores_(std::move(scores)), kind_(kind), k_(k) {
  if (scores_.size() < 2) throw Error(Errc::invalid_rule, "a rule needs at least 2 ranks");
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (!std::isfinite(scores_[i]) || scores_[i] < 0.0) {
      throw Error(Errc::invalid_rule, "scores must be finite and nonnegative");
    }
    if (i > 0 && scores_[i] > scores_[i - 1]) {
      throw Error(Errc::invalid_rule, "scores must be nonincreasing in rank");
    }
  }
  if (!(scores_.front() > scores_.back())) {
    throw Error(Errc::invalid_rule, "the top rank must score more than the bottom rank");
  }
}

double ScoringRule::score_of_rank(std::size_t j) const {
  if (j < 1 || j > scores_.size()) {
    throw Error(Errc::rank_out_of_range, "rank " + std::to_string(j) + " outside 1.." +
                                             std::to_string(scores_.size()));
  }
  return scores_[j - 1];
}

std::string ScoringRule::describe() const {
  switch (kind_) {
    case RuleKind::plurality: return "plurality";
    case RuleKind::veto: return "veto";
    case RuleKind::borda: return "borda";
    case RuleKind::k_approval: return "k-approval:" + std::to_string(k_);
    case RuleKind::custom: break;
  }
  std::ostringstream out;
  out.precision(17);
  out << "custom:";
  for (std::size_t i = 0; i < scores_.size(); ++i) out << (i ? "," : "") << scores_[i];
  return out.str();
}

ScoringRule make_rule(RuleKind kind, std::size_t m, std::size_t k) {
  if (m < 2) throw Error(Errc::invalid_rule, "rules need m >= 2");
  std::vector<double> s(m, 0.0);
  switch (kind) {
    case RuleKind::plurality:
      s[0] = 1.0;
      break;
    case RuleKind::veto:
      for (std::size_t i = 0; i + 1 < m; ++i) s[i] = 1.0;
      break;
    case RuleKind::k_approval:
      if (k < 1 || k >= m) {
        throw Error(Errc::invalid_k, "k-approval needs 1 <= k < m, got k=" + std::to_string(k));
      }
      for (std::size_t i = 0; i < k; ++i) s[i] = 1.0;
      break;
    case RuleKind::borda:
      for (std::size_t i = 0; i < m; ++i) s[i] = static_cast<double>(m - 1 - i);
      break;
    case RuleKind::custom:
      throw Error(Errc::invalid_rule, "custom rules are built from an explicit score vector");
  }
  return ScoringRule(std::move(s), kind, kind == RuleKind::k_approval ? k : 0);
}

namespace {

double parse_number(std::string_view token) {
  std::string buf(token);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw Error(Errc::invalid_rule, "bad score '" + buf + "'");
  }
  return v;
}

}  // namespace

ScoringRule parse_rule(std::string_view text, std::size_t m) {
  if (text == "plurality") return make_rule(RuleKind::plurality, m);
  if (text == "veto") return make_rule(RuleKind::veto, m);
  if (text == "borda") return make_rule(RuleKind::borda, m);
  if (text.starts_with("k-approval:")) {
    auto digits = text.substr(11);
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw Error(Errc::invalid_k, "bad k in '" + std::string(text) + "'");
    }
    return make_rule(RuleKind::k_approval, m, k);
  }
  if (text.starts_with("custom:")) {
    std::vector<double> scores;
    auto rest = text.substr(7);
    while (true) {
      auto comma = rest.find(',');
      scores.push_back(parse_number(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (scores.size() != m) {
      throw Error(Errc::invalid_rule, "custom rule has " + std::to_string(scores.size()) +
                                          " scores for " + std::to_string(m) + " candidates");
    }
    return ScoringRule(std::move(scores));
  }
  throw Error(Errc::invalid_rule, "unknown rule '" + std::string(text) + "'");
}

}  // namespace mew
