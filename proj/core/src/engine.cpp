#include "mew/engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "mew/error.hpp"
#include "mew/oracle.hpp"

namespace mew {

namespace {

// Hashing for structural voter equality.
struct Hasher {
  std::size_t h = 0xcbf29ce484222325ULL;

  void add(std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  void add(double d) { add(std::bit_cast<std::uint64_t>(d == 0.0 ? 0.0 : d)); }
  void add(std::span<const Candidate> xs) {
    add(static_cast<std::uint64_t>(xs.size()));
    for (Candidate x : xs) add(static_cast<std::uint64_t>(x));
  }
  void add(const std::vector<std::vector<double>>& rows) {
    for (const auto& row : rows) {
      add(static_cast<std::uint64_t>(row.size()));
      for (double v : row) add(v);
    }
  }
  void add(const RankingModel& model) {
    add(static_cast<std::uint64_t>(model.index()));
    std::visit(
        [&](const auto& mod) {
          using T = std::decay_t<decltype(mod)>;
          if constexpr (std::is_same_v<T, MallowsModel>) {
            add(mod.sigma.order());
            add(mod.phi);
          } else if constexpr (!std::is_same_v<T, UniformModel>) {
            add(mod.sigma.order());
            add(mod.pi);
          }
        },
        model);
  }
  void add(const Observation& obs) {
    add(static_cast<std::uint64_t>(obs.index()));
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, Ranking>) {
            add(o.order());
          } else if constexpr (std::is_same_v<T, PartialOrder>) {
            for (const auto& p : o.pairs()) {
              add(static_cast<std::uint64_t>(p.better) << 32 | p.worse);
            }
          } else if constexpr (std::is_same_v<T, PartitionedPreference>) {
            for (const auto& b : o.buckets) add(std::span<const Candidate>(b));
            add(std::uint64_t{~0ULL});
            add(std::span<const Candidate>(o.missing));
          } else if constexpr (std::is_same_v<T, PartialChain>) {
            add(std::span<const Candidate>(o.chain));
          } else {
            add(std::span<const Candidate>(o.top));
            add(std::span<const Candidate>(o.bottom));
          }
        },
        obs);
  }
};

std::size_t voter_hash(const Voter& v) {
  Hasher h;
  h.add(v.model);
  h.add(static_cast<std::uint64_t>(v.observation.has_value()));
  if (v.observation) h.add(*v.observation);
  return h.h;
}

bool same_preferences(const Voter& a, const Voter& b) {
  return a.model == b.model && a.observation == b.observation;
}

struct Group {
  const Voter* voter = nullptr;
  std::size_t first = 0;  // index of the first voter in the profile
  std::uint64_t weight = 0;
};

std::vector<Group> make_groups(const Profile& profile, bool grouping) {
  std::vector<Group> groups;
  if (!grouping) {
    for (std::size_t i = 0; i < profile.voters.size(); ++i) {
      groups.push_back({&profile.voters[i], i, profile.voters[i].weight});
    }
    return groups;
  }
  std::unordered_multimap<std::size_t, std::size_t> seen;
  for (std::size_t i = 0; i < profile.voters.size(); ++i) {
    const Voter& v = profile.voters[i];
    const std::size_t h = voter_hash(v);
    bool merged = false;
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (same_preferences(*groups[it->second].voter, v)) {
        groups[it->second].weight += v.weight;
        merged = true;
        break;
      }
    }
    if (!merged) {
      seen.emplace(h, groups.size());
      groups.push_back({&v, i, v.weight});
    }
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) { return a.weight > b.weight; });
  return groups;
}

void check_rule(const Profile& profile, const ScoringRule& rule) {
  if (rule.size() != profile.candidates.size()) {
    throw Error(Errc::invalid_rule, "rule has " + std::to_string(rule.size()) +
                                        " ranks for " +
                                        std::to_string(profile.candidates.size()) + " candidates");
  }
  if (profile.voters.empty()) throw Error(Errc::validation_error, "profile has no voters");
}

VoterRep prepare(const Group& g, std::size_t m, const RepOptions& options) {
  try {
    return VoterRep(*g.voter, m, options);
  } catch (const Error& e) {
    throw e.with_voter(g.first);
  }
}

double score_of(const VoterRep& rep, const Group& g, Candidate c, const ScoringRule& rule) {
  try {
    return rep.expected_score(c, rule);
  } catch (const Error& e) {
    throw e.with_voter(g.first);
  }
}

std::vector<Candidate> argmax(const std::vector<std::optional<double>>& scores) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : scores) {
    if (s) best = std::max(best, *s);
  }
  const double tol = kTieTolerance * std::abs(best);
  std::vector<Candidate> winners;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    if (scores[c] && *scores[c] >= best - tol) winners.push_back(static_cast<Candidate>(c));
  }
  return winners;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void validate(const Profile& profile) {
  if (profile.voters.empty()) throw Error(Errc::validation_error, "profile has no voters");
  for (std::size_t i = 0; i < profile.voters.size(); ++i) {
    try {
      validate(profile.voters[i], profile.candidates);
    } catch (const Error& e) {
      throw e.with_voter(i);
    }
  }
}

double expected_score(Candidate c, const Voter& voter, const ScoringRule& rule, std::size_t m,
                      const RepOptions& options) {
  return VoterRep(voter, m, options).expected_score(c, rule);
}

MewResult mew(const Profile& profile, const ScoringRule& rule, const MewOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_rule(profile, rule);
  const std::size_t m = profile.candidates.size();
  const auto groups = make_groups(profile, options.grouping);
  const auto s = rule.scores();

  MewResult result;
  auto& st = result.stats;
  st.groups = groups.size();
  for (const auto& g : groups) st.voters += g.weight;

  auto& bounds = result.bounds;
  bounds.ub.assign(m, 0.0);
  bounds.lb.assign(m, 0.0);
  bounds.resolved.assign(m, false);
  std::vector<bool> active(m, true);
  std::size_t n_active = m;

  // Per-group rank ranges, needed to swap a group's bound contribution for
  // its exact one.
  std::vector<std::vector<RankRange>> ranges;
  if (options.pruning) {
    ranges.reserve(groups.size());
    for (const auto& g : groups) {
      const Observation* obs = g.voter->observation ? &*g.voter->observation : nullptr;
      try {
        ranges.push_back(rank_bounds_all(obs, m));
      } catch (const Error& e) {
        throw e.with_voter(g.first);
      }
      const double w = static_cast<double>(g.weight);
      for (Candidate c = 0; c < m; ++c) {
        bounds.ub[c] += w * s[ranges.back()[c].best - 1];
        bounds.lb[c] += w * s[ranges.back()[c].worst - 1];
      }
    }
  }

  auto prune = [&] {
    double max_lb = -std::numeric_limits<double>::infinity();
    for (Candidate c = 0; c < m; ++c) {
      if (active[c]) max_lb = std::max(max_lb, bounds.lb[c]);
    }
    const double tol = kTieTolerance * std::abs(max_lb);
    for (Candidate c = 0; c < m; ++c) {
      if (active[c] && bounds.ub[c] < max_lb - tol) {
        active[c] = false;
        --n_active;
        ++st.prunings;
        result.pruned.push_back(c);
      }
    }
  };
  if (options.pruning) prune();

  std::vector<double> total(m, 0.0), block(m, 0.0);
  std::size_t gi = 0;
  for (; gi < groups.size(); ++gi) {
    if (options.pruning && n_active == 1) break;
    const Group& g = groups[gi];
    const VoterRep rep = prepare(g, m, options.rep);
    const double w = static_cast<double>(g.weight);
    for (Candidate c = 0; c < m; ++c) {
      if (!active[c]) continue;
      const double e = score_of(rep, g, c, rule);
      ++st.rep_calls;
      block[c] += w * e;
      if (options.pruning) {
        const auto r = ranges[gi][c];
        bounds.ub[c] += std::min(0.0, w * (e - s[r.best - 1]));
        bounds.lb[c] += std::max(0.0, w * (e - s[r.worst - 1]));
      }
    }
    if ((gi + 1) % kReductionBlock == 0) {
      for (Candidate c = 0; c < m; ++c) total[c] += block[c];
      std::fill(block.begin(), block.end(), 0.0);
    }
    st.groups_processed = gi + 1;
    st.voters_processed += g.weight;
    if (options.pruning) prune();
    if (options.on_group) options.on_group(gi, bounds);
  }

  // A lone survivor still gets its exact score over the remaining groups.
  for (; gi < groups.size(); ++gi) {
    const Group& g = groups[gi];
    const VoterRep rep = prepare(g, m, options.rep);
    const double w = static_cast<double>(g.weight);
    for (Candidate c = 0; c < m; ++c) {
      if (!active[c]) continue;
      block[c] += w * score_of(rep, g, c, rule);
      ++st.rep_calls;
    }
    if ((gi + 1) % kReductionBlock == 0) {
      for (Candidate c = 0; c < m; ++c) total[c] += block[c];
      std::fill(block.begin(), block.end(), 0.0);
    }
  }
  for (Candidate c = 0; c < m; ++c) total[c] += block[c];

  result.expected_scores.assign(m, std::nullopt);
  for (Candidate c = 0; c < m; ++c) {
    if (active[c]) {
      result.expected_scores[c] = total[c];
      bounds.resolved[c] = true;
      if (!options.pruning) bounds.ub[c] = bounds.lb[c] = total[c];
    }
  }
  result.winners = argmax(result.expected_scores);
  st.wall_seconds = seconds_since(start);
  return result;
}

MewResult mew_parallel(const Profile& profile, const ScoringRule& rule, std::size_t workers,
                       const MewOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (workers == 0) throw Error(Errc::invalid_parameter, "at least one worker is required");
  check_rule(profile, rule);
  const std::size_t m = profile.candidates.size();
  const auto groups = make_groups(profile, options.grouping);
  const std::size_t n_blocks = (groups.size() + kReductionBlock - 1) / kReductionBlock;

  std::vector<std::vector<double>> block_sums(n_blocks, std::vector<double>(m, 0.0));
  std::atomic<std::size_t> next_block{0};
  std::mutex error_mutex;
  std::size_t error_block = n_blocks;
  std::exception_ptr error;

  auto work = [&] {
    for (;;) {
      const std::size_t b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      try {
        auto& sums = block_sums[b];
        const std::size_t end = std::min(groups.size(), (b + 1) * kReductionBlock);
        for (std::size_t gi = b * kReductionBlock; gi < end; ++gi) {
          const Group& g = groups[gi];
          const VoterRep rep = prepare(g, m, options.rep);
          const double w = static_cast<double>(g.weight);
          for (Candidate c = 0; c < m; ++c) sums[c] += w * score_of(rep, g, c, rule);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (b < error_block) {
          error_block = b;
          error = std::current_exception();
        }
      }
    }
  };

  const std::size_t n_threads = std::min(workers, std::max<std::size_t>(n_blocks, 1));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  MewResult result;
  auto& st = result.stats;
  st.groups = st.groups_processed = groups.size();
  for (const auto& g : groups) st.voters += g.weight;
  st.voters_processed = st.voters;
  st.rep_calls = groups.size() * m;

  std::vector<double> total(m, 0.0);
  for (const auto& sums : block_sums) {
    for (Candidate c = 0; c < m; ++c) total[c] += sums[c];
  }
  result.expected_scores.assign(m, std::nullopt);
  result.bounds.ub = total;
  result.bounds.lb = total;
  result.bounds.resolved.assign(m, true);
  for (Candidate c = 0; c < m; ++c) result.expected_scores[c] = total[c];
  result.winners = argmax(result.expected_scores);
  st.wall_seconds = seconds_since(start);
  return result;
}

double expected_regret(Candidate c, const Profile& profile, const ScoringRule& rule) {
  return oracle_expected_regret(c, profile, rule);
}

}  // namespace mew
