#include <gtest/gtest.h>

#include <cstring>

#include "mew/engine.hpp"
#include "mew/error.hpp"
#include "mew/generators.hpp"
#include "mew/oracle.hpp"
#include "support.hpp"

namespace mew {
namespace {

MewOptions plain() {
  MewOptions o;
  o.pruning = false;
  o.grouping = false;
  return o;
}

TEST(Mew, Fig1Plurality) {
  const auto p = testing::fig1_profile();
  const auto r = mew(p, make_rule(RuleKind::plurality, 3), plain());
  ASSERT_EQ(r.winners, (std::vector<Candidate>{1}));
  EXPECT_NEAR(*r.expected_scores[0], 0.7, 1e-12);
  EXPECT_NEAR(*r.expected_scores[1], 0.8, 1e-12);
  EXPECT_NEAR(*r.expected_scores[2], 0.5, 1e-12);
}

TEST(Mew, Fig1BordaWithPruning) {
  const auto r = mew(testing::fig1_profile(), make_rule(RuleKind::borda, 3));
  ASSERT_EQ(r.winners, (std::vector<Candidate>{1}));
  EXPECT_NEAR(*r.expected_scores[1], 2.8, 1e-12);
}

TEST(Mew, Table3Plurality) {
  const auto r = mew(testing::table3_profile(), make_rule(RuleKind::plurality, 4), plain());
  const std::vector<double> want{1.5, 0.5, 1.0, 0.0};
  for (Candidate c = 0; c < 4; ++c) EXPECT_NEAR(*r.expected_scores[c], want[c], 1e-12);
  EXPECT_EQ(r.winners, (std::vector<Candidate>{0}));
}

TEST(Mew, TiesAreAllReported) {
  Profile p{CandidateSet::numbered(3), {Voter{}}};
  const auto r = mew(p, make_rule(RuleKind::borda, 3));
  EXPECT_EQ(r.winners, (std::vector<Candidate>{0, 1, 2}));
  EXPECT_TRUE(r.pruned.empty());
}

TEST(Mew, MatchesOracleOnRandomProfiles) {
  Rng rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = testing::random_profile(3 + rng.uniform_index(3), 1 + rng.uniform_index(4), rng);
    for (const auto& rule : testing::standard_rules(p.candidates.size())) {
      const auto want = oracle_expected_scores(p, rule);
      const auto got = mew(p, rule, plain());
      for (Candidate c = 0; c < want.size(); ++c) EXPECT_NEAR(*got.expected_scores[c], want[c], 1e-9);
    }
  }
}

TEST(Mew, PruningAndGroupingKeepWinners) {
  Rng rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = testing::random_profile(4 + rng.uniform_index(3), 3 + rng.uniform_index(6), rng);
    // Duplicate some voters so grouping has work to do.
    for (std::size_t i = 0, n = p.voters.size(); i < n; i += 2) p.voters.push_back(p.voters[i]);
    for (const auto& rule : testing::standard_rules(p.candidates.size())) {
      const auto base = mew(p, rule, plain());
      for (bool pruning : {false, true})
        for (bool grouping : {false, true}) {
          MewOptions o;
          o.pruning = pruning;
          o.grouping = grouping;
          const auto r = mew(p, rule, o);
          EXPECT_EQ(r.winners, base.winners);
          for (Candidate w : r.winners)
            EXPECT_NEAR(*r.expected_scores[w], *base.expected_scores[w], 1e-9);
          for (Candidate x : r.pruned) EXPECT_FALSE(r.expected_scores[x]);
        }
    }
  }
}

TEST(Mew, BoundsAreMonotoneAndValid) {
  const auto p = generate(GenSpec{GenKind::poset, 7, 60, 0.5, 0.3, 0, 0, 0, 4});
  const auto rule = make_rule(RuleKind::borda, 7);
  const auto exact = mew(p, rule, plain());
  ScoreBounds prev;
  std::size_t calls = 0;
  MewOptions o;
  o.on_group = [&](std::size_t, const ScoreBounds& b) {
    if (calls++ > 0) {
      for (std::size_t c = 0; c < 7; ++c) {
        EXPECT_LE(b.ub[c], prev.ub[c] + 1e-9);
        EXPECT_GE(b.lb[c], prev.lb[c] - 1e-9);
      }
    }
    for (std::size_t c = 0; c < 7; ++c) {
      EXPECT_LE(b.lb[c], *exact.expected_scores[c] + 1e-9);
      EXPECT_GE(b.ub[c], *exact.expected_scores[c] - 1e-9);
    }
    prev = b;
  };
  const auto r = mew(p, rule, o);
  EXPECT_GT(calls, 0u);
  EXPECT_EQ(r.winners, exact.winners);
}

TEST(Mew, ParallelIsBitIdentical) {
  const auto p = generate(GenSpec{GenKind::mallows_poset, 6, 700, 0.5, 0.2, 0, 0, 0, 8});
  const auto rule = make_rule(RuleKind::borda, 6);
  for (bool grouping : {false, true}) {
    MewOptions o = plain();
    o.grouping = grouping;
    const auto seq = mew(p, rule, o);
    for (std::size_t w : {1u, 2u, 3u, 8u}) {
      const auto par = mew_parallel(p, rule, w, o);
      EXPECT_EQ(par.winners, seq.winners);
      for (Candidate c = 0; c < 6; ++c) {
        ASSERT_TRUE(par.expected_scores[c]);
        EXPECT_EQ(std::memcmp(&*par.expected_scores[c], &*seq.expected_scores[c], sizeof(double)), 0);
      }
    }
  }
}

TEST(Mew, StatsCountVoters) {
  Profile p = testing::fig1_profile();
  p.voters.push_back(p.voters[0]);
  p.voters.back().weight = 3;
  const auto r = mew(p, make_rule(RuleKind::plurality, 3), plain());
  EXPECT_EQ(r.stats.voters, 5u);
  EXPECT_EQ(r.stats.groups, 3u);
  MewOptions grouped = plain();
  grouped.grouping = true;
  EXPECT_EQ(mew(p, make_rule(RuleKind::plurality, 3), grouped).stats.groups, 2u);
}

TEST(Mew, ErrorsCarryVoterIndex) {
  Profile p{CandidateSet::numbered(3), {Voter{}, Voter{}}};
  p.voters[1].observation = PartialOrder({{0, 1}, {1, 0}});
  try {
    mew(p, make_rule(RuleKind::plurality, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::cycle_detected);
    EXPECT_EQ(e.voter_index(), 1u);
  }
  EXPECT_THROW(mew(Profile{CandidateSet::numbered(3), {}}, make_rule(RuleKind::plurality, 3)), Error);
  EXPECT_THROW(mew(testing::fig1_profile(), make_rule(RuleKind::plurality, 4)), Error);
}

TEST(Mew, RuleLengthMustMatch) {
  EXPECT_THROW(mew_parallel(testing::fig1_profile(), make_rule(RuleKind::borda, 5), 2), Error);
}

TEST(ExpectedRegret, MinimizedByWinners) {
  Rng rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_profile(3 + rng.uniform_index(2), 1 + rng.uniform_index(2), rng);
    const auto rule = make_rule(RuleKind::borda, p.candidates.size());
    const auto r = mew(p, rule, plain());
    std::vector<double> regret;
    for (Candidate c = 0; c < p.candidates.size(); ++c) regret.push_back(expected_regret(c, p, rule));
    const double best = *std::min_element(regret.begin(), regret.end());
    std::vector<Candidate> argmin;
    for (Candidate c = 0; c < regret.size(); ++c)
      if (regret[c] <= best + 1e-9) argmin.push_back(c);
    EXPECT_EQ(argmin, r.winners);
  }
}

}  // namespace
}  // namespace mew
