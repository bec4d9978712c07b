#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mew/error.hpp"
#include "mew/ranking_models.hpp"
#include "mew/scoring.hpp"
#include "support.hpp"

namespace mew {
namespace {

std::vector<Ranking> all_rankings(std::size_t m) {
  std::vector<Candidate> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = static_cast<Candidate>(i);
  std::vector<Ranking> out;
  do out.emplace_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

TEST(KendallTau, Basics) {
  EXPECT_EQ(kendall_tau(Ranking::identity(4), Ranking::identity(4)), 0u);
  EXPECT_EQ(kendall_tau(Ranking::identity(4), Ranking({3, 2, 1, 0})), 6u);
  EXPECT_EQ(kendall_tau(Ranking({1, 0, 2}), Ranking::identity(3)), 1u);
}

TEST(Models, ProbabilitiesSumToOne) {
  Rng rng(2);
  for (std::size_t m = 2; m <= 5; ++m) {
    const auto rim = testing::random_rim(m, rng);
    const auto rsm = testing::random_rsm(m, rng);
    const MallowsModel mal{testing::shuffled(m, rng), 0.4};
    double a = 0, b = 0, c = 0;
    for (const auto& r : all_rankings(m)) {
      a += rim_probability(r, rim);
      b += rsm_probability(r, rsm);
      c += mallows_probability(r, mal);
    }
    EXPECT_NEAR(a, 1.0, 1e-12);
    EXPECT_NEAR(b, 1.0, 1e-12);
    EXPECT_NEAR(c, 1.0, 1e-12);
  }
}

TEST(Models, MallowsConversionsAgree) {
  for (double phi : {0.1, 0.5, 0.9, 1.0}) {
    const MallowsModel mal{Ranking({2, 0, 3, 1}), phi};
    const auto rim = mallows_to_rim(mal);
    const auto rsm = mallows_to_rsm(mal);
    EXPECT_NO_THROW(validate(rim, 4));
    EXPECT_NO_THROW(validate(rsm, 4));
    for (const auto& r : all_rankings(4)) {
      const double p = mallows_probability(r, mal);
      EXPECT_NEAR(rim_probability(r, rim), p, 1e-14);
      EXPECT_NEAR(rsm_probability(r, rsm), p, 1e-14);
      EXPECT_NEAR(probability(r, RankingModel{mal}), p, 1e-14);
    }
  }
}

TEST(Models, MallowsRimRowFormula) {
  const auto rim = mallows_to_rim(MallowsModel{Ranking::identity(3), 0.5});
  // Row 3: 0.25, 0.5, 1 over 1.75.
  EXPECT_NEAR(rim.insertion(3, 1), 0.25 / 1.75, 1e-15);
  EXPECT_NEAR(rim.insertion(3, 3), 1.0 / 1.75, 1e-15);
}

TEST(Models, ValidationRejectsBadRows) {
  const Ranking id = Ranking::identity(3);
  EXPECT_THROW(validate(RimModel{id, {{1.0}, {0.5, 0.6}, {0.2, 0.3, 0.5}}}, 3), Error);
  EXPECT_THROW(validate(RimModel{id, {{1.0}, {0.5, 0.5}}}, 3), Error);
  EXPECT_THROW(validate(RsmModel{id, {{0.5, 0.5, 0.0}, {1.5, -0.5}, {1.0}}}, 3), Error);
  EXPECT_THROW(validate(MallowsModel{id, 0.0}, 3), Error);
  EXPECT_THROW(validate(MallowsModel{id, 1.5}, 3), Error);
  EXPECT_THROW(validate(MallowsModel{id, 0.5}, 4), Error);
}

TEST(Models, SamplingFrequencies) {
  Rng rng(77);
  const auto rim = mallows_to_rim(MallowsModel{Ranking::identity(3), 0.6});
  const auto rsm = testing::random_rsm(3, rng);
  std::map<Ranking, int> rim_counts, rsm_counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    ++rim_counts[sample(rim, rng)];
    ++rsm_counts[sample(rsm, rng)];
  }
  for (const auto& r : all_rankings(3)) {
    const double p = rim_probability(r, rim), q = rsm_probability(r, rsm);
    EXPECT_NEAR(rim_counts[r] / double(draws), p, 5 * std::sqrt(p * (1 - p) / draws));
    EXPECT_NEAR(rsm_counts[r] / double(draws), q, 5 * std::sqrt(q * (1 - q) / draws));
  }
}

TEST(Models, SeededSamplingIsDeterministic) {
  const auto rim = mallows_to_rim(MallowsModel{Ranking::identity(8), 0.7});
  EXPECT_EQ(sample(rim, 99), sample(rim, 99));
}

TEST(Rng, StreamsAreStable) {
  Rng a = Rng::stream(5, 3), b = Rng::stream(5, 3), c = Rng::stream(5, 4);
  EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(Rng::stream(5, 3).next(), c.next());
  Rng d(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = d.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(d.uniform_index(7), 7u);
  }
}

TEST(ScoringRules, BuiltIns) {
  EXPECT_EQ(make_rule(RuleKind::plurality, 4).scores().front(), 1.0);
  const auto veto = make_rule(RuleKind::veto, 4);
  EXPECT_EQ(std::vector<double>(veto.scores().begin(), veto.scores().end()),
            (std::vector<double>{1, 1, 1, 0}));
  const auto borda = make_rule(RuleKind::borda, 4);
  EXPECT_EQ(borda.score_of_rank(1), 3.0);
  EXPECT_EQ(borda.score_of_rank(4), 0.0);
  const auto two = make_rule(RuleKind::k_approval, 4, 2);
  EXPECT_EQ(two.score_of_rank(2), 1.0);
  EXPECT_EQ(two.score_of_rank(3), 0.0);
  EXPECT_THROW(make_rule(RuleKind::k_approval, 4, 4), Error);
  EXPECT_THROW(make_rule(RuleKind::k_approval, 4, 0), Error);
  EXPECT_THROW(borda.score_of_rank(0), Error);
  EXPECT_THROW(borda.score_of_rank(5), Error);
}

TEST(ScoringRules, InvariantsEnforced) {
  EXPECT_THROW(ScoringRule({1, 2, 0}), Error);
  EXPECT_THROW(ScoringRule({1, 1, 1}), Error);
  EXPECT_THROW(ScoringRule({1, 0, -1}), Error);
  EXPECT_NO_THROW(ScoringRule({5, 2, 2, 0}));
}

TEST(ScoringRules, ParseRoundTrip) {
  for (const char* text : {"plurality", "veto", "borda", "k-approval:2", "custom:5,3,1,0"}) {
    const auto rule = parse_rule(text, 4);
    EXPECT_EQ(parse_rule(rule.describe(), 4), rule) << text;
  }
  EXPECT_EQ(parse_rule("k-approval:2", 4).kind(), RuleKind::k_approval);
  EXPECT_THROW(parse_rule("custom:1,0", 4), Error);
  EXPECT_THROW(parse_rule("copeland", 4), Error);
  EXPECT_THROW(parse_rule("k-approval:x", 4), Error);
}

}  // namespace
}  // namespace mew
