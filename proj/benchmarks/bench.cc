#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "topent/clique.h"
#include "topent/cover.h"
#include "topent/entropy.h"
#include "topent/measures.h"
#include "topent/set_cover.h"

namespace {

void BM_IteratedJoin(benchmark::State& state) {
  const auto sys = topent::example_x_system(12, 12);
  const topent::OrbitTable orbits(sys, static_cast<std::size_t>(state.range(0)));
  const auto u = topent::example_first_symbol_cover(*sys.space().symbolic());
  for (auto _ : state) {
    benchmark::DoNotOptimize(topent::iterated_join(orbits, u, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_IteratedJoin)->Arg(4)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MaximumClique(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  topent::DenseGraph g(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (rng() % 2 == 0) g.add_edge(a, b);
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(topent::maximum_clique(g));
}
BENCHMARK(BM_MaximumClique)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SetCover(benchmark::State& state) {
  const auto universe = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  std::vector<std::vector<std::uint32_t>> sets(universe);
  for (std::uint32_t c = 0; c < universe; ++c) {
    sets[c].push_back(c);
    for (std::uint32_t x = 0; x < universe; ++x) {
      if (x != c && rng() % 8 == 0) sets[c].push_back(x);
    }
    std::sort(sets[c].begin(), sets[c].end());
  }
  for (auto _ : state) benchmark::DoNotOptimize(topent::solve_set_cover(universe, sets));
}
BENCHMARK(BM_SetCover)->Arg(24)->Arg(36)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_WeakStar(benchmark::State& state) {
  const auto space = std::make_shared<const topent::FiniteSpace>(
      topent::build_random_space(static_cast<std::size_t>(state.range(0)), 3));
  const auto fam = topent::default_family(space);
  std::vector<topent::PointId> a;
  std::vector<topent::PointId> b;
  for (topent::PointId x = 0; x < space->size(); x += 2) a.push_back(x);
  for (topent::PointId x = 1; x < space->size(); x += 2) b.push_back(x);
  const auto mu = topent::AtomicMeasure::uniform(a);
  const auto nu = topent::AtomicMeasure::uniform(b);
  for (auto _ : state) benchmark::DoNotOptimize(topent::weak_star_distance(mu, nu, fam, 20));
}
BENCHMARK(BM_WeakStar)->Arg(8)->Arg(32);

void BM_SeparatedGreedy(benchmark::State& state) {
  const auto sys = topent::full_shift_constant(12);
  const topent::OrbitTable orbits(sys, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        topent::max_separated(orbits, static_cast<std::size_t>(state.range(0)), topent::Rational(1, 4),
                              topent::CountMode::greedy));
  }
}
BENCHMARK(BM_SeparatedGreedy)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
