#include "mew/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "mew/error.hpp"

namespace mew {

namespace {

using Perm = std::vector<Candidate>;

// pos[c] = 0-based position of c.
std::vector<std::size_t> positions(const Perm& perm) {
  std::vector<std::size_t> pos(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
  return pos;
}

bool respects(const Perm& perm, const Observation& obs) {
  const auto pos = positions(perm);
  const std::size_t m = perm.size();
  return std::visit(
      [&](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Ranking>) {
          return std::equal(perm.begin(), perm.end(), o.order().begin(), o.order().end());
        } else if constexpr (std::is_same_v<T, PartialOrder>) {
          for (const auto& p : o.pairs()) {
            if (pos[p.better] > pos[p.worse]) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, PartitionedPreference>) {
          for (std::size_t a = 0; a < o.buckets.size(); ++a) {
            for (std::size_t b = a + 1; b < o.buckets.size(); ++b) {
              for (Candidate x : o.buckets[a]) {
                for (Candidate y : o.buckets[b]) {
                  if (pos[x] > pos[y]) return false;
                }
              }
            }
          }
          return true;
        } else if constexpr (std::is_same_v<T, PartialChain>) {
          for (std::size_t i = 1; i < o.chain.size(); ++i) {
            if (pos[o.chain[i - 1]] > pos[o.chain[i]]) return false;
          }
          return true;
        } else {
          for (std::size_t i = 0; i < o.top.size(); ++i) {
            if (perm[i] != o.top[i]) return false;
          }
          for (std::size_t i = 0; i < o.bottom.size(); ++i) {
            if (perm[m - o.bottom.size() + i] != o.bottom[i]) return false;
          }
          return true;
        }
      },
      obs);
}

// Unnormalized model weight of a permutation.
class ModelWeight {
 public:
  explicit ModelWeight(const RankingModel& model) : model_(model) {}

  double operator()(const Perm& perm) const {
    return std::visit(
        [&](const auto& mod) -> double {
          using T = std::decay_t<decltype(mod)>;
          if constexpr (std::is_same_v<T, UniformModel>) {
            return 1.0;
          } else if constexpr (std::is_same_v<T, MallowsModel>) {
            const auto pos = positions(perm);
            std::size_t discord = 0;
            const auto ref = mod.sigma.order();
            for (std::size_t a = 0; a < ref.size(); ++a) {
              for (std::size_t b = a + 1; b < ref.size(); ++b) {
                if (pos[ref[a]] > pos[ref[b]]) ++discord;
              }
            }
            return std::pow(mod.phi, static_cast<double>(discord));
          } else if constexpr (std::is_same_v<T, RimModel>) {
            // Item sigma_i sits at 1 + (earlier sigma items placed before it)
            // when it is inserted.
            const auto pos = positions(perm);
            const auto ref = mod.sigma.order();
            double p = 1.0;
            for (std::size_t i = 0; i < ref.size(); ++i) {
              std::size_t slot = 0;
              for (std::size_t k = 0; k < i; ++k) slot += pos[ref[k]] < pos[ref[i]] ? 1 : 0;
              p *= mod.pi[i][slot];
            }
            return p;
          } else {
            Perm rest(mod.sigma.order().begin(), mod.sigma.order().end());
            double p = 1.0;
            for (std::size_t i = 0; i < perm.size(); ++i) {
              const auto at = std::find(rest.begin(), rest.end(), perm[i]);
              p *= mod.pi[i][static_cast<std::size_t>(at - rest.begin())];
              rest.erase(at);
            }
            return p;
          }
        },
        model_);
  }

 private:
  const RankingModel& model_;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::vector<std::vector<WeightedRanking>> supports(const Profile& profile,
                                                   const OracleOptions& options) {
  std::vector<std::vector<WeightedRanking>> out;
  out.reserve(profile.voters.size());
  for (std::size_t i = 0; i < profile.voters.size(); ++i) {
    try {
      out.push_back(oracle_support(profile.voters[i], profile.candidates.size(), options));
    } catch (const Error& e) {
      throw e.with_voter(i);
    }
  }
  return out;
}

std::uint64_t count_worlds(const Profile& profile,
                           const std::vector<std::vector<WeightedRanking>>& sup) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (sup[i].size() == 1) continue;
    for (std::uint64_t w = 0; w < profile.voters[i].weight && n != kMax; ++w) {
      n = saturating_mul(n, sup[i].size());
    }
  }
  return n;
}

}  // namespace

OracleOptions default_oracle_options() {
  OracleOptions options;
  if (const char* env = std::getenv("MEW_ENUM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) options.world_cap = v;
  }
  return options;
}

std::vector<WeightedRanking> oracle_support(const Voter& voter, std::size_t m,
                                            const OracleOptions& options) {
  if (m > options.candidate_cap) {
    throw Error(Errc::too_large, "enumerating " + std::to_string(m) +
                                     "! rankings exceeds the oracle cap of " +
                                     std::to_string(options.candidate_cap) + " candidates");
  }
  const ModelWeight weight(voter.model);
  Perm perm(m);
  std::iota(perm.begin(), perm.end(), Candidate{0});
  std::vector<WeightedRanking> out;
  double total = 0.0;
  do {
    if (voter.observation && !respects(perm, *voter.observation)) continue;
    const double w = weight(perm);
    if (w > 0.0) {
      out.push_back({Ranking(perm), w});
      total += w;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (out.empty()) {
    throw Error(Errc::zero_posterior, "no consistent ranking has positive probability");
  }
  for (auto& wr : out) wr.prob /= total;
  return out;
}

std::uint64_t world_count(const Profile& profile, const OracleOptions& options) {
  return count_worlds(profile, supports(profile, options));
}

void for_each_world(const Profile& profile,
                    const std::function<void(std::span<const Ranking* const>, double)>& visit,
                    const OracleOptions& options) {
  const auto sup = supports(profile, options);
  const std::uint64_t n = count_worlds(profile, sup);
  if (n > options.world_cap) {
    throw Error(Errc::too_large, "profile has more than " + std::to_string(options.world_cap) +
                                     " possible worlds");
  }
  // One slot per voter copy.
  std::vector<const std::vector<WeightedRanking>*> slot;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    for (std::uint64_t w = 0; w < profile.voters[i].weight; ++w) slot.push_back(&sup[i]);
  }
  std::vector<std::size_t> idx(slot.size(), 0);
  std::vector<const Ranking*> world(slot.size());
  for (;;) {
    double p = 1.0;
    for (std::size_t k = 0; k < slot.size(); ++k) {
      const auto& wr = (*slot[k])[idx[k]];
      world[k] = &wr.ranking;
      p *= wr.prob;
    }
    visit(world, p);
    std::size_t k = slot.size();
    while (k > 0) {
      --k;
      if (++idx[k] < slot[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (slot.empty()) return;
  }
}

std::vector<PossibleWorld> enumerate_worlds(const Profile& profile, const OracleOptions& options) {
  std::vector<PossibleWorld> out;
  for_each_world(
      profile,
      [&](std::span<const Ranking* const> world, double p) {
        PossibleWorld pw;
        pw.prob = p;
        for (const Ranking* r : world) pw.rankings.push_back(*r);
        out.push_back(std::move(pw));
      },
      options);
  return out;
}

std::uint64_t fcp_count(Candidate c, std::size_t j, const PartialOrder& p, std::size_t m,
                        const OracleOptions& options) {
  if (m > options.candidate_cap) {
    throw Error(Errc::too_large, "fixed-rank counting is capped at " +
                                     std::to_string(options.candidate_cap) + " candidates");
  }
  const Observation obs = p;
  Perm perm(m);
  std::iota(perm.begin(), perm.end(), Candidate{0});
  std::uint64_t n = 0;
  do {
    if (perm[j - 1] == c && respects(perm, obs)) ++n;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n;
}

std::vector<double> oracle_expected_scores(const Profile& profile, const ScoringRule& rule,
                                           const OracleOptions& options) {
  const std::size_t m = profile.candidates.size();
  const auto s = rule.scores();
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < profile.voters.size(); ++i) {
    std::vector<WeightedRanking> sup;
    try {
      sup = oracle_support(profile.voters[i], m, options);
    } catch (const Error& e) {
      throw e.with_voter(i);
    }
    const double w = static_cast<double>(profile.voters[i].weight);
    for (const auto& wr : sup) {
      for (std::size_t pos = 0; pos < m; ++pos) out[wr.ranking[pos]] += w * wr.prob * s[pos];
    }
  }
  return out;
}

std::vector<double> oracle_mpw(const Profile& profile, const ScoringRule& rule,
                               const OracleOptions& options) {
  const std::size_t m = profile.candidates.size();
  const auto s = rule.scores();
  std::vector<double> win(m, 0.0);
  std::vector<double> score(m);
  for_each_world(
      profile,
      [&](std::span<const Ranking* const> world, double p) {
        std::fill(score.begin(), score.end(), 0.0);
        for (const Ranking* r : world) {
          for (std::size_t pos = 0; pos < m; ++pos) score[(*r)[pos]] += s[pos];
        }
        const double best = *std::max_element(score.begin(), score.end());
        for (std::size_t c = 0; c < m; ++c) {
          if (score[c] == best) win[c] += p;
        }
      },
      options);
  return win;
}

std::vector<WeightedRanking> meta_profile(const Profile& profile, const OracleOptions& options) {
  std::vector<WeightedRanking> out;
  for_each_world(
      profile,
      [&](std::span<const Ranking* const> world, double p) {
        for (const Ranking* r : world) out.push_back({*r, p});
      },
      options);
  return out;
}

std::vector<double> weighted_scores(std::span<const WeightedRanking> rankings,
                                    const ScoringRule& rule) {
  const auto s = rule.scores();
  std::vector<double> out(rule.size(), 0.0);
  for (const auto& wr : rankings) {
    for (std::size_t pos = 0; pos < wr.ranking.size(); ++pos) {
      out[wr.ranking[pos]] += wr.prob * s[pos];
    }
  }
  return out;
}

double oracle_expected_regret(Candidate c, const Profile& profile, const ScoringRule& rule,
                              const OracleOptions& options) {
  const std::size_t m = profile.candidates.size();
  if (c >= m) throw Error(Errc::unknown_candidate, "candidate index out of range");
  const auto s = rule.scores();
  std::vector<double> score(m);
  double regret = 0.0;
  for_each_world(
      profile,
      [&](std::span<const Ranking* const> world, double p) {
        std::fill(score.begin(), score.end(), 0.0);
        for (const Ranking* r : world) {
          for (std::size_t pos = 0; pos < m; ++pos) score[(*r)[pos]] += s[pos];
        }
        regret += p * (*std::max_element(score.begin(), score.end()) - score[c]);
      },
      options);
  return regret;
}

}  // namespace mew
