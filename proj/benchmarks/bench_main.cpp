#include <benchmark/benchmark.h>

#include <random>

#include "limlaw/automaton.hpp"
#include "limlaw/chain.hpp"
#include "limlaw/efgame.hpp"
#include "limlaw/evaluate.hpp"
#include "limlaw/limit.hpp"

using namespace limlaw;

namespace {

const char* first_two_share =
    "exists x. exists y. (x < y & !(exists z. z < x) & !(exists z. (x < z & z < y)) & x E y)";

void BM_SegmentTypes(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto shapes = all_shapes(10);
  for (auto _ : state) {
    SegmentGame game;
    for (const auto& s : shapes) benchmark::DoNotOptimize(game.type_of(ConvexLinearOrder{s}, k));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(shapes.size()));
}
BENCHMARK(BM_SegmentTypes)->Arg(1)->Arg(2)->Arg(3);

void BM_GameSolver(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const RelationalView a(Theory::convex, PartSequence({2, 1, 1, 3, 1}));
  const RelationalView b(Theory::convex, PartSequence({2, 1, 3, 1, 1}));
  for (auto _ : state) benchmark::DoNotOptimize(equiv_k(a, b, k));
}
BENCHMARK(BM_GameSolver)->Arg(1)->Arg(2)->Arg(3);

void BM_AllSingletonSolver(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RelationalView a(Theory::convex, PartSequence(std::vector<int>(static_cast<std::size_t>(n), 1)));
  const RelationalView b(Theory::convex, PartSequence(std::vector<int>(static_cast<std::size_t>(n + 1), 1)));
  for (auto _ : state) benchmark::DoNotOptimize(equiv_k(a, b, 4));
}
BENCHMARK(BM_AllSingletonSolver)->Arg(8)->Arg(14)->Arg(19)->Unit(benchmark::kMillisecond);

void BM_BuildChain(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_chain(k).states.size());
}
BENCHMARK(BM_BuildChain)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_BuildChainHorizon(benchmark::State& state) {
  ChainOptions o;
  o.horizon = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_chain(3, {}, o).states.size());
}
BENCHMARK(BM_BuildChainHorizon)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_CompileAutomaton(benchmark::State& state) {
  const Formula f = parse_sentence(first_two_share, Signature(Theory::convex));
  for (auto _ : state) benchmark::DoNotOptimize(compile_automaton(f).size());
}
BENCHMARK(BM_CompileAutomaton);

void BM_ExactLimit(benchmark::State& state) {
  const Formula f = parse_sentence(first_two_share, Signature(Theory::convex));
  for (auto _ : state) {
    LimitEngine engine;
    benchmark::DoNotOptimize(engine.limit(Theory::convex, f).probability);
  }
}
BENCHMARK(BM_ExactLimit)->Unit(benchmark::kMillisecond);

void BM_LimitingDistribution(benchmark::State& state) {
  const Chain chain = build_chain(2);
  for (auto _ : state) benchmark::DoNotOptimize(limiting_distribution(chain).size());
}
BENCHMARK(BM_LimitingDistribution)->Unit(benchmark::kMillisecond);

void BM_DistributionAfter(benchmark::State& state) {
  const Chain chain = build_chain(2);
  const auto steps = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(distribution_after(chain, steps).size());
}
BENCHMARK(BM_DistributionAfter)->Arg(100)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_SampleAndCheck(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CompiledFormula check(parse_sentence(first_two_share, Signature(Theory::convex)), Signature(Theory::convex));
  std::mt19937_64 rng(42);
  std::vector<int> classes;
  for (auto _ : state) {
    sample_classes(n, rng, classes);
    benchmark::DoNotOptimize(check(RelationalView::from_classes(Theory::convex, classes)));
  }
}
BENCHMARK(BM_SampleAndCheck)->Arg(100)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
