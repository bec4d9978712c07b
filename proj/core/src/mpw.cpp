#include "mew/mpw.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>

#include "mew/error.hpp"

namespace mew {

namespace {

using ScoreVector = std::vector<std::int64_t>;

struct VectorHash {
  std::size_t operator()(const ScoreVector& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using StateMap = std::unordered_map<ScoreVector, double, VectorHash>;

// One voter's distribution over score vectors, merged.
std::vector<std::pair<ScoreVector, double>> voter_deltas(const Voter& voter, std::size_t m,
                                                         const ScoreVector& scaled,
                                                         const EnumerationOptions& opts) {
  const PartialOrder order =
      voter.observation ? to_partial_order(*voter.observation, m) : PartialOrder{};
  // Completions are equally likely under the uniform model.
  const bool uniform = std::holds_alternative<UniformModel>(voter.model);
  StateMap merged;
  double total = 0.0;
  ScoreVector delta(m);
  for_each_linear_extension(
      order, m,
      [&](std::span<const Candidate> r) {
        const double p =
            uniform ? 1.0 : probability(Ranking(std::vector<Candidate>(r.begin(), r.end())), voter.model);
        if (!(p > 0.0)) return;
        for (std::size_t pos = 0; pos < m; ++pos) delta[r[pos]] = scaled[pos];
        merged[delta] += p;
        total += p;
      },
      opts);
  if (!(total > 0.0)) {
    throw Error(Errc::zero_posterior, "no completion has positive probability");
  }
  std::vector<std::pair<ScoreVector, double>> out(merged.begin(), merged.end());
  std::sort(out.begin(), out.end());
  for (auto& [v, p] : out) p /= total;
  return out;
}

}  // namespace

std::vector<std::int64_t> integer_scores(const ScoringRule& rule) {
  double scale = 1.0;
  for (int d = 0; d <= 9; ++d, scale *= 10.0) {
    std::vector<std::int64_t> out;
    bool ok = true;
    for (double s : rule.scores()) {
      const double v = s * scale;
      const double r = std::round(v);
      if (std::abs(v - r) > 1e-6 || r > 9e15) {
        ok = false;
        break;
      }
      out.push_back(static_cast<std::int64_t>(r));
    }
    if (ok) return out;
  }
  throw Error(Errc::invalid_rule, "scores need at most 9 decimal digits for exact MPW");
}

MpwResult mpw(const Profile& profile, const ScoringRule& rule, const MpwOptions& options) {
  const std::size_t m = profile.candidates.size();
  if (rule.size() != m) throw Error(Errc::invalid_rule, "rule length differs from m");
  if (profile.voters.empty()) throw Error(Errc::validation_error, "profile has no voters");
  const ScoreVector scaled = integer_scores(rule);

  MpwResult result;
  StateMap cur;
  cur.emplace(ScoreVector(m, 0), 1.0);
  StateMap next;
  for (std::size_t i = 0; i < profile.voters.size(); ++i) {
    const Voter& v = profile.voters[i];
    std::vector<std::pair<ScoreVector, double>> deltas;
    try {
      deltas = voter_deltas(v, m, scaled, options.enumeration);
    } catch (const Error& e) {
      throw e.with_voter(i);
    }
    for (std::uint64_t copy = 0; copy < v.weight; ++copy) {
      next.clear();
      ScoreVector sum(m);
      for (const auto& [state, p] : cur) {
        for (const auto& [delta, q] : deltas) {
          for (std::size_t c = 0; c < m; ++c) sum[c] = state[c] + delta[c];
          next[sum] += p * q;
        }
        if (next.size() > options.state_cap) {
          throw Error(Errc::too_large,
                      "more than " + std::to_string(options.state_cap) + " score states", i);
        }
      }
      std::swap(cur, next);
      result.worlds_explored += cur.size();
    }
  }

  result.win_probs.assign(m, 0.0);
  for (const auto& [state, p] : cur) {
    const std::int64_t best = *std::max_element(state.begin(), state.end());
    for (std::size_t c = 0; c < m; ++c) {
      if (state[c] == best) result.win_probs[c] += p;
    }
  }
  const double top = *std::max_element(result.win_probs.begin(), result.win_probs.end());
  for (std::size_t c = 0; c < m; ++c) {
    if (result.win_probs[c] >= top - kTieTolerance * top) {
      result.winners.push_back(static_cast<Candidate>(c));
    }
  }
  return result;
}

}  // namespace mew
