#include <benchmark/benchmark.h>

#include <random>

#include "mbs/canonical.hpp"
#include "mbs/fixtures.hpp"
#include "mbs/homology.hpp"
#include "mbs/moves.hpp"
#include "mbs/search.hpp"
#include "mbs/smith.hpp"

using namespace mbs;

static void BM_CanonicalForm(benchmark::State& state) {
  const auto s = random_surface(7, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(s, SymmetryMode::Mirror));
}
BENCHMARK(BM_CanonicalForm)->Arg(10)->Arg(20)->Arg(30);

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> entry(-9, 9);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_HomologyProfile(benchmark::State& state) {
  const auto s = random_surface(11, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(homology_profile(s));
}
BENCHMARK(BM_HomologyProfile)->Arg(10)->Arg(30);

static void BM_MaximallySpread(benchmark::State& state) {
  auto s = theta_fixture(static_cast<int>(state.range(0)));
  s = apply_ix(s, {"R1", IxKind::NormalAnnulus});
  for (auto _ : state) benchmark::DoNotOptimize(maximally_spread(s));
}
BENCHMARK(BM_MaximallySpread)->Arg(4)->Arg(8);

static void BM_SearchRecoversWalk(benchmark::State& state) {
  const auto source = theta_fixture(5);
  const auto length = static_cast<std::size_t>(state.range(0));
  const auto walk = random_walk(source, 21, length);
  SearchBudget budget;
  budget.max_depth = static_cast<int>(length);
  for (auto _ : state) benchmark::DoNotOptimize(search_equivalence(source, walk.surface, budget));
}
BENCHMARK(BM_SearchRecoversWalk)->Arg(2)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
