#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mew/engine.hpp"
#include "mew/random.hpp"

namespace mew::testing {

inline Ranking ranking_of(const CandidateSet& cs, std::initializer_list<const char*> names) {
  std::vector<Candidate> order;
  for (const char* n : names) order.push_back(cs.index_of(n));
  return Ranking(order);
}

// Two voters over {a, b, c}. x: <b,a,c> 0.3, <a,b,c> 0.7; y: <c,b,a> 0.5, <b,c,a> 0.5.
inline Profile fig1_profile() {
  CandidateSet cs({"a", "b", "c"});
  Voter x{RimModel{ranking_of(cs, {"a", "b", "c"}), {{1.0}, {0.3, 0.7}, {0.0, 0.0, 1.0}}}};
  Voter y{RimModel{ranking_of(cs, {"b", "c", "a"}), {{1.0}, {0.5, 0.5}, {0.0, 0.0, 1.0}}}};
  return Profile{cs, {x, y}};
}

inline Profile table3_profile() {
  CandidateSet cs({"Biden", "Sanders", "Trump", "Weld"});
  auto id = [&](const char* n) { return cs.index_of(n); };
  Voter ann{UniformModel{}, Observation{PartialOrder({{id("Biden"), id("Weld")},
                                                      {id("Sanders"), id("Weld")},
                                                      {id("Weld"), id("Trump")}})}};
  Voter bob{UniformModel{}, Observation{ranking_of(cs, {"Trump", "Weld", "Sanders", "Biden"})}};
  Voter dave{UniformModel{}, Observation{ranking_of(cs, {"Biden", "Sanders", "Weld", "Trump"})}};
  return Profile{cs, {ann, bob, dave}};
}

// <b,a,c,d>, <c,a,b,d>, <d,a,b,c> with probability 1/3 each.
inline Profile three_worlds_profile() {
  CandidateSet cs({"a", "b", "c", "d"});
  const double third = 1.0 / 3.0;
  RsmModel model{ranking_of(cs, {"b", "c", "d", "a"}),
                 {{third, third, 1.0 - 2 * third, 0.0}, {0.0, 0.0, 1.0}, {1.0, 0.0}, {1.0}}};
  return Profile{cs, {Voter{model}}};
}

inline Profile chain_poset_profile() {
  CandidateSet cs({"a", "b", "c", "d"});
  Voter v{UniformModel{}, Observation{PartialOrder({{0, 1}, {1, 2}, {1, 3}})}};
  return Profile{cs, {v}};
}

inline std::vector<double> random_row(std::size_t len, Rng& rng) {
  std::vector<double> row(len);
  double total = 0.0;
  for (auto& x : row) total += (x = 0.05 + rng.uniform01());
  for (auto& x : row) x /= total;
  return row;
}

inline Ranking shuffled(std::size_t m, Rng& rng) {
  std::vector<Candidate> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<Candidate>(i);
  for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  return Ranking(order);
}

inline RimModel random_rim(std::size_t m, Rng& rng) {
  RimModel model{shuffled(m, rng), {}};
  for (std::size_t i = 1; i <= m; ++i) model.pi.push_back(random_row(i, rng));
  return model;
}

inline RsmModel random_rsm(std::size_t m, Rng& rng) {
  RsmModel model{shuffled(m, rng), {}};
  for (std::size_t i = 1; i <= m; ++i) model.pi.push_back(random_row(m - i + 1, rng));
  return model;
}

// Pairs consistent with a hidden random ranking, each kept with probability p.
inline PartialOrder random_poset(std::size_t m, double p, Rng& rng) {
  const Ranking hidden = shuffled(m, rng);
  std::vector<Preference> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (rng.uniform01() < p) pairs.push_back({hidden[i], hidden[j]});
  return PartialOrder(pairs);
}

inline PartitionedPreference random_partition(std::size_t m, bool full, Rng& rng) {
  const Ranking hidden = shuffled(m, rng);
  PartitionedPreference pref;
  std::size_t i = 0;
  if (!full) {
    const std::size_t missing = rng.uniform_index(m);
    for (; i < missing; ++i) pref.missing.push_back(hidden[i]);
  }
  while (i < m) {
    const std::size_t len = 1 + rng.uniform_index(std::min<std::size_t>(3, m - i));
    pref.buckets.emplace_back();
    for (std::size_t k = 0; k < len; ++k) pref.buckets.back().push_back(hidden[i++]);
  }
  return pref;
}

inline PartialChain random_chain(std::size_t m, Rng& rng) {
  const Ranking hidden = shuffled(m, rng);
  const std::size_t len = 1 + rng.uniform_index(m);
  return PartialChain{{hidden.order().begin(), hidden.order().begin() + len}};
}

inline TruncatedRanking random_truncated(std::size_t m, Rng& rng) {
  const Ranking hidden = shuffled(m, rng);
  const std::size_t t = rng.uniform_index(m);
  const std::size_t b = rng.uniform_index(m - t + 1);
  TruncatedRanking tr;
  tr.top.assign(hidden.order().begin(), hidden.order().begin() + t);
  tr.bottom.assign(hidden.order().end() - b, hidden.order().end());
  return tr;
}

// Any supported model/observation combination. RSM voters stay unobserved.
inline Voter random_voter(std::size_t m, Rng& rng) {
  Voter v;
  switch (rng.uniform_index(4)) {
    case 0: v.model = UniformModel{}; break;
    case 1: v.model = MallowsModel{shuffled(m, rng), 0.2 + 0.8 * rng.uniform01()}; break;
    case 2: v.model = random_rim(m, rng); break;
    default: v.model = random_rsm(m, rng); break;
  }
  if (!std::holds_alternative<RsmModel>(v.model)) {
    switch (rng.uniform_index(7)) {
      case 0: break;
      case 1: v.observation = shuffled(m, rng); break;
      case 2: v.observation = random_poset(m, 0.3, rng); break;
      case 3: v.observation = random_partition(m, true, rng); break;
      case 4: v.observation = random_partition(m, false, rng); break;
      case 5: v.observation = random_chain(m, rng); break;
      default: v.observation = random_truncated(m, rng); break;
    }
  }
  v.weight = 1 + rng.uniform_index(3);
  return v;
}

inline Profile random_profile(std::size_t m, std::size_t n, Rng& rng) {
  Profile p{CandidateSet::numbered(m), {}};
  for (std::size_t i = 0; i < n; ++i) p.voters.push_back(random_voter(m, rng));
  return p;
}

inline std::vector<ScoringRule> standard_rules(std::size_t m) {
  return {make_rule(RuleKind::plurality, m), make_rule(RuleKind::veto, m),
          make_rule(RuleKind::k_approval, m, 2), make_rule(RuleKind::borda, m)};
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double min_seconds(int repeats, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) best = std::min(best, seconds(f));
  return best;
}

}  // namespace mew::testing
