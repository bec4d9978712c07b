#include <benchmark/benchmark.h>

#include "mew/engine.hpp"
#include "mew/generators.hpp"
#include "mew/mpw.hpp"

namespace {

using namespace mew;

GenSpec spec(GenKind kind, std::size_t m, std::size_t n, double p_max = 0.1) {
  GenSpec s;
  s.kind = kind;
  s.m = m;
  s.n = n;
  s.p_max = p_max;
  s.seed = 1;
  return s;
}

MewOptions plain() {
  MewOptions o;
  o.pruning = false;
  o.grouping = false;
  return o;
}

// One RIM voter, every candidate: O(m^4).
void BM_RimVoter(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto rim = mallows_to_rim(MallowsModel{Ranking::identity(m), 0.5});
  for (auto _ : state) {
    for (Candidate c = 0; c < m; ++c) benchmark::DoNotOptimize(rep_rim(c, rim));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RimVoter)->RangeMultiplier(2)->Range(10, 80)->Complexity();

// Insertion DP over a poset of cover width w (w items above one sink).
void BM_RimPosetCoverWidth(benchmark::State& state) {
  const std::size_t m = 14;
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto rim = mallows_to_rim(MallowsModel{Ranking::identity(m), 0.5});
  std::vector<Preference> pairs;
  for (std::size_t i = 0; i < w; ++i) pairs.push_back({Candidate(i), Candidate(m - 1)});
  const PartialOrder po(pairs);
  for (auto _ : state) benchmark::DoNotOptimize(rep_rim_poset(0, rim, po));
}
BENCHMARK(BM_RimPosetCoverWidth)->DenseRange(1, 5);

void BM_UniformPosetVoter(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto p = generate(spec(GenKind::poset, m, 1, 0.3));
  for (auto _ : state) {
    const VoterRep rep(p.voters[0], m);
    for (Candidate c = 0; c < m; ++c) benchmark::DoNotOptimize(rep.distribution(c));
  }
}
BENCHMARK(BM_UniformPosetVoter)->DenseRange(6, 16, 2);

void BM_MewPosetProfile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = generate(spec(GenKind::poset, 10, n));
  const auto rule = make_rule(RuleKind::plurality, 10);
  const bool optimized = state.range(1) != 0;
  const MewOptions o = optimized ? MewOptions{} : plain();
  for (auto _ : state) benchmark::DoNotOptimize(mew::mew(p, rule, o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MewPosetProfile)
    ->ArgsProduct({{250, 500, 1000, 2000}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_MewParallel(benchmark::State& state) {
  const auto p = generate(spec(GenKind::mallows_poset, 10, 1000));
  const auto rule = make_rule(RuleKind::borda, 10);
  const auto workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mew_parallel(p, rule, workers, plain()));
}
BENCHMARK(BM_MewParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_MpwPosetProfile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = generate(spec(GenKind::poset, 7, n, 0.3));
  const auto rule = make_rule(RuleKind::plurality, 7);
  for (auto _ : state) benchmark::DoNotOptimize(mpw(p, rule));
}
BENCHMARK(BM_MpwPosetProfile)->DenseRange(1, 10, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
