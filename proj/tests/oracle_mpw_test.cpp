#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>

#include "mew/error.hpp"
#include "mew/mpw.hpp"
#include "mew/oracle.hpp"
#include "support.hpp"

namespace mew {
namespace {

TEST(Oracle, SupportOfObservedUniformVoter) {
  const Voter v{UniformModel{}, PartialOrder({{0, 1}, {1, 2}, {1, 3}})};
  const auto s = oracle_support(v, 4);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_DOUBLE_EQ(s[0].prob, 0.5);
  EXPECT_EQ(s[0].ranking, Ranking({0, 1, 2, 3}));
}

TEST(Oracle, SupportZeroPosterior) {
  const Voter v{RimModel{Ranking::identity(2), {{1.0}, {0.0, 1.0}}}, Ranking({1, 0})};
  try {
    oracle_support(v, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::zero_posterior);
  }
}

TEST(Oracle, WorldsAreADistribution) {
  const auto p = testing::fig1_profile();
  EXPECT_EQ(world_count(p), 4u);
  const auto worlds = enumerate_worlds(p);
  ASSERT_EQ(worlds.size(), 4u);
  double total = 0.0;
  for (const auto& w : worlds) total += w.prob;
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(Oracle, WeightedVoterExpandsToCopies) {
  Profile p = testing::fig1_profile();
  p.voters[0].weight = 2;
  EXPECT_EQ(world_count(p), 8u);
  const auto s = oracle_expected_scores(p, make_rule(RuleKind::plurality, 3));
  EXPECT_NEAR(s[0], 1.4, 1e-12);
}

TEST(Oracle, CapsAndEnvironment) {
  Profile p{CandidateSet::numbered(6), std::vector<Voter>(3)};
  OracleOptions small;
  small.world_cap = 1000;
  try {
    for_each_world(p, [](auto, double) {}, small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::too_large);
  }
  ::setenv("MEW_ENUM_CAP", "123", 1);
  EXPECT_EQ(default_oracle_options().world_cap, 123u);
  ::setenv("MEW_ENUM_CAP", "junk", 1);
  EXPECT_EQ(default_oracle_options().world_cap, OracleOptions{}.world_cap);
  ::unsetenv("MEW_ENUM_CAP");
  OracleOptions narrow;
  narrow.candidate_cap = 3;
  EXPECT_THROW(oracle_support(Voter{}, 4, narrow), Error);
}

TEST(Oracle, FcpCountsSumToExtensions) {
  const PartialOrder p({{0, 1}, {2, 3}});
  for (Candidate c = 0; c < 4; ++c) {
    std::uint64_t total = 0;
    for (std::size_t j = 1; j <= 4; ++j) total += fcp_count(c, j, p, 4);
    EXPECT_EQ(total, 6u);
  }
}

TEST(Oracle, MetaProfileMatchesExpectedScores) {
  const auto p = testing::table3_profile();
  const auto rule = make_rule(RuleKind::borda, 4);
  const auto meta = meta_profile(p);
  const auto via_meta = weighted_scores(meta, rule);
  const auto direct = oracle_expected_scores(p, rule);
  for (Candidate c = 0; c < 4; ++c) EXPECT_NEAR(via_meta[c], direct[c], 1e-12);
}

TEST(Mpw, Fig1) {
  const auto r = mpw(testing::fig1_profile(), make_rule(RuleKind::plurality, 3));
  EXPECT_EQ(r.winners, (std::vector<Candidate>{0}));
  EXPECT_NEAR(r.win_probs[0], 0.7, 1e-12);
  EXPECT_NEAR(r.win_probs[1], 0.65, 1e-12);
  EXPECT_NEAR(r.win_probs[2], 0.5, 1e-12);
}

TEST(Mpw, Table3) {
  const auto r = mpw(testing::table3_profile(), make_rule(RuleKind::plurality, 4));
  const std::vector<double> want{1.0, 0.5, 0.5, 0.0};
  for (Candidate c = 0; c < 4; ++c) EXPECT_NEAR(r.win_probs[c], want[c], 1e-12);
}

TEST(Mpw, MatchesOracleOnRandomProfiles) {
  Rng rng(211);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = testing::random_profile(3 + rng.uniform_index(2), 1 + rng.uniform_index(3), rng);
    if (world_count(p) > 100000) continue;
    for (const auto& rule : testing::standard_rules(p.candidates.size())) {
      const auto want = oracle_mpw(p, rule);
      const auto got = mpw(p, rule);
      for (Candidate c = 0; c < want.size(); ++c) EXPECT_NEAR(got.win_probs[c], want[c], 1e-12);
    }
  }
}

TEST(Mpw, IntegerScores) {
  EXPECT_EQ(integer_scores(make_rule(RuleKind::borda, 3)), (std::vector<std::int64_t>{2, 1, 0}));
  EXPECT_EQ(integer_scores(ScoringRule({1.5, 0.25, 0})), (std::vector<std::int64_t>{150, 25, 0}));
  EXPECT_THROW(integer_scores(ScoringRule({1.0 / 3.0, 0.0})), Error);
}

TEST(Mpw, StateCap) {
  Profile p{CandidateSet::numbered(5), std::vector<Voter>(6)};
  MpwOptions o;
  o.state_cap = 50;
  try {
    mpw(p, make_rule(RuleKind::borda, 5), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::too_large);
  }
}

TEST(Mpw, StatesGrowWithVoters) {
  Profile p{CandidateSet::numbered(4), {}};
  std::uint64_t prev = 0;
  for (int n = 1; n <= 5; ++n) {
    p.voters.emplace_back();
    const auto r = mpw(p, make_rule(RuleKind::plurality, 4));
    EXPECT_GT(r.worlds_explored, prev);
    prev = r.worlds_explored;
    // Every world has a winner; symmetric voters give every candidate the same chance.
    EXPECT_GE(std::accumulate(r.win_probs.begin(), r.win_probs.end(), 0.0), 1.0 - 1e-12);
    for (double x : r.win_probs) EXPECT_NEAR(x, r.win_probs[0], 1e-12);
  }
}

}  // namespace
}  // namespace mew
