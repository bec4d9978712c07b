#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mew/error.hpp"
#include "mew/generators.hpp"
#include "mew/profile_io.hpp"
#include "support.hpp"

namespace mew {
namespace {

GenSpec spec_for(GenKind kind, std::size_t m = 6, std::size_t n = 20) {
  GenSpec s;
  s.kind = kind;
  s.m = m;
  s.n = n;
  s.seed = 17;
  s.k = 3;
  s.t = 2;
  s.b = 1;
  s.p_max = 0.3;
  return s;
}

TEST(Generators, EveryKindValidAndDeterministic) {
  for (GenKind kind : all_gen_kinds()) {
    const auto s = spec_for(kind);
    const auto p = generate(s);
    EXPECT_EQ(p.size(), s.n) << to_string(kind);
    EXPECT_NO_THROW(validate(p)) << to_string(kind);
    EXPECT_EQ(generate(s), p) << to_string(kind);
    EXPECT_EQ(parse_gen_kind(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_gen_kind("nonsense"));
}

TEST(Generators, PrefixStableInN) {
  auto s = spec_for(GenKind::mallows_poset);
  const auto small = generate(s);
  s.n = 40;
  const auto big = generate(s);
  for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small.voters[i], big.voters[i]);
}

TEST(Generators, ObservationShapes) {
  for (const auto& v : generate(spec_for(GenKind::partitioned)).voters) {
    const auto& fp = std::get<PartitionedPreference>(*v.observation);
    EXPECT_EQ(fp.buckets.size(), 3u);
    EXPECT_TRUE(is_fully_partitioned(fp, 6));
  }
  for (const auto& v : generate(spec_for(GenKind::chain)).voters)
    EXPECT_EQ(std::get<PartialChain>(*v.observation).chain.size(), 3u);
  for (const auto& v : generate(spec_for(GenKind::truncated)).voters) {
    const auto& tr = std::get<TruncatedRanking>(*v.observation);
    EXPECT_EQ(tr.top.size(), 2u);
    EXPECT_EQ(tr.bottom.size(), 1u);
  }
  for (const auto& v : generate(spec_for(GenKind::rim_truncated)).voters)
    EXPECT_TRUE(std::holds_alternative<RimModel>(v.model));
}

TEST(Generators, InvalidSpecs) {
  auto s = spec_for(GenKind::partitioned);
  s.k = 7;
  EXPECT_THROW(generate(s), Error);
  s = spec_for(GenKind::mallows);
  s.phi = 0.0;
  EXPECT_THROW(generate(s), Error);
  s = spec_for(GenKind::truncated);
  s.t = 4;
  s.b = 4;
  EXPECT_THROW(generate(s), Error);
  s = spec_for(GenKind::poset);
  s.m = 1;
  EXPECT_THROW(generate(s), Error);
}

TEST(Generators, RsmPosetPairFrequencies) {
  // With p fixed at 1 for step 1, the first selected item beats every other.
  const auto rsm = mallows_to_rsm(MallowsModel{Ranking::identity(4), 1.0});
  Rng rng(5);
  const std::vector<double> p{1.0, 0.0, 0.0};
  for (int i = 0; i < 50; ++i) {
    const auto po = sample_rsm_poset(rsm, p, rng);
    EXPECT_EQ(po.pairs().size(), 3u);
    const PosetClosure cl(po, 4);
    EXPECT_NO_THROW(cl.topological_order());
  }
  const auto none = sample_rsm_poset(rsm, std::vector<double>{0, 0, 0}, rng);
  EXPECT_TRUE(none.empty());
}

TEST(ProfileIo, RoundTripRandomProfiles) {
  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing::random_profile(3 + rng.uniform_index(4), 1 + rng.uniform_index(5), rng);
    const auto text = serialize_profile(p);
    EXPECT_EQ(parse_profile(text), p) << text;
    EXPECT_EQ(serialize_profile(parse_profile(text)), text);
  }
  for (GenKind kind : all_gen_kinds()) {
    const auto p = generate(spec_for(kind));
    EXPECT_EQ(parse_profile(serialize_profile(p, -1)), p) << to_string(kind);
  }
}

TEST(ProfileIo, ParsesEveryVoterType) {
  const char* text = R"({
    "format": 1,
    "candidates": ["a", "b", "c"],
    "voters": [
      {"type": "ranking", "ranking": ["c", "a", "b"]},
      {"type": "poset", "weight": 2, "pairs": [["a", "b"]]},
      {"type": "partitioned", "buckets": [["a"], ["b", "c"]]},
      {"type": "partial_partitioned", "buckets": [["b"]], "missing": ["a", "c"]},
      {"type": "chain", "chain": ["c", "b"]},
      {"type": "truncated", "top": ["a"], "bottom": []},
      {"type": "uniform"},
      {"type": "mallows", "sigma": ["a", "b", "c"], "phi": 0.5},
      {"type": "rim", "sigma": ["a", "b", "c"], "pi": [[1], [0.5, 0.5], [0.2, 0.3, 0.5]]},
      {"type": "rsm", "sigma": ["a", "b", "c"], "pi": [[0.2, 0.3, 0.5], [0.5, 0.5], [1]]},
      {"type": "combined", "model": {"type": "mallows", "sigma": ["c", "b", "a"], "phi": 0.3},
       "observation": {"type": "poset", "pairs": [["a", "c"]]}}
    ]
  })";
  const auto p = parse_profile(text);
  ASSERT_EQ(p.size(), 11u);
  EXPECT_EQ(p.voters[1].weight, 2u);
  EXPECT_EQ(std::get<Ranking>(*p.voters[0].observation), Ranking({2, 0, 1}));
  EXPECT_TRUE(std::holds_alternative<MallowsModel>(p.voters[10].model));
  EXPECT_TRUE(p.voters[10].observation.has_value());
  EXPECT_FALSE(p.voters[6].observation.has_value());
}

TEST(ProfileIo, ErrorsNameTheVoter) {
  const char* bad = R"({"format": 1, "candidates": ["a", "b"],
    "voters": [{"type": "uniform"}, {"type": "poset", "pairs": [["a", "z"]]}]})";
  try {
    parse_profile(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_candidate);
    EXPECT_EQ(e.voter_index(), 1u);
  }
  EXPECT_THROW(parse_profile("{"), Error);
  EXPECT_THROW(parse_profile(R"({"format": 2, "candidates": ["a","b"], "voters": []})"), Error);
  EXPECT_THROW(parse_profile(R"({"format": 1, "candidates": ["a","b"],
    "voters": [{"type": "poset", "pairs": [["a","b"],["b","a"]]}]})"), Error);
  EXPECT_THROW(parse_profile(R"({"format": 1, "candidates": ["a","b"],
    "voters": [{"type": "mystery"}]})"), Error);
}

TEST(ProfileIo, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "mew_io_test.json";
  const auto p = testing::table3_profile();
  save_profile(p, path.string());
  EXPECT_EQ(load_profile(path.string()), p);
  std::filesystem::remove(path);
  EXPECT_THROW(load_profile(path.string()), Error);
}

TEST(Ratings, PartialAndFullModes) {
  const auto rows = parse_ratings_csv(
      "user,item,rating\n"
      "u1,x,5\nu1,y,3\nu1,z,3\n"
      "u2,x,1\nu2,y,4\n"
      "u3,zz,2\n");
  ASSERT_EQ(rows.size(), 6u);
  const auto partial = ratings_to_partitions(rows, 3, RatingsMode::partial);
  EXPECT_EQ(partial.candidates.names(), (std::vector<std::string>{"x", "y", "z"}));
  ASSERT_EQ(partial.size(), 2u);
  const auto& u1 = std::get<PartitionedPreference>(*partial.voters[0].observation);
  EXPECT_EQ(u1.buckets.size(), 2u);
  EXPECT_EQ(u1.buckets[1].size(), 2u);
  const auto& u2 = std::get<PartitionedPreference>(*partial.voters[1].observation);
  EXPECT_EQ(u2.missing, (std::vector<Candidate>{2}));
  const auto full = ratings_to_partitions(rows, 3, RatingsMode::full);
  EXPECT_EQ(full.size(), 1u);
  EXPECT_THROW(ratings_to_partitions({}, 3, RatingsMode::partial), Error);
  EXPECT_THROW(parse_ratings_csv("a,b,5\nbroken line\n"), Error);
}

TEST(ProfileIo, EmptyVoterListIsAValidationError) {
  try {
    parse_profile(R"({"format": 1, "candidates": ["a", "b"], "voters": []})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::validation_error);
  }
}

TEST(ProfileIo, Fig1Fixture) {
  EXPECT_EQ(load_profile(std::string(MEW_FIXTURE_DIR) + "/fig1.profile"), testing::fig1_profile());
}

TEST(Ratings, EqualRatingsShareABucket) {
  const auto p = ratings_to_partitions(parse_ratings_csv("u,a,5\nu,b,5\nu,c,3\n"), 3,
                                       RatingsMode::full);
  ASSERT_EQ(p.size(), 1u);
  const auto& fp = std::get<PartitionedPreference>(*p.voters[0].observation);
  ASSERT_EQ(fp.buckets.size(), 2u);
  EXPECT_EQ(fp.buckets[0].size(), 2u);
  EXPECT_EQ(p.candidates.name(fp.buckets[1][0]), "c");
}

TEST(Ratings, SampleFixtureValidates) {
  std::ifstream in(std::string(MEW_FIXTURE_DIR) + "/ratings_sample.csv");
  std::stringstream text;
  text << in.rdbuf();
  const auto rows = parse_ratings_csv(text.str());
  EXPECT_EQ(rows.size(), 56u);
  for (auto mode : {RatingsMode::partial, RatingsMode::full}) {
    const auto p = ratings_to_partitions(rows, 5, mode);
    EXPECT_EQ(p.candidates.size(), 5u);
    EXPECT_GE(p.size(), 1u);
    EXPECT_NO_THROW(validate(p));
  }
}

}  // namespace
}  // namespace mew
