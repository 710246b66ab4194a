#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "skewjensen/centroids.hpp"
#include "skewjensen/clustering.hpp"
#include "skewjensen/divergences.hpp"

namespace sj = skewjensen;

namespace {

sj::Histogram random_histogram(std::mt19937_64& rng, std::size_t d) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> v(d);
  for (auto& x : v) x = g(rng);
  return sj::smooth_histogram(std::move(v));
}

void BM_Jeffreys(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto p = random_histogram(rng, d);
  const auto q = random_histogram(rng, d);
  for (auto _ : state) benchmark::DoNotOptimize(sj::jeffreys(p, q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Jeffreys)->RangeMultiplier(4)->Range(16, 4096);

void BM_SklAlpha(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto p = random_histogram(rng, d);
  const auto q = random_histogram(rng, d);
  const sj::SkewParameter a(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(sj::skl_alpha(p, q, a));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SklAlpha)->RangeMultiplier(4)->Range(16, 4096);

void BM_SymSkewJensenGeneric(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto p = random_histogram(rng, d);
  const auto q = random_histogram(rng, d);
  const auto f = sj::make_separable("burg");
  const sj::SkewParameter a(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(sj::sym_skew_jensen(*f, p.bins(), q.bins(), a));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SymSkewJensenGeneric)->RangeMultiplier(4)->Range(16, 4096);

void BM_CentroidSolve(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(random_histogram(rng, 64).values());
  const double alpha = static_cast<double>(state.range(0)) / 100.0;
  const auto problem = sj::CentroidProblem::uniform(pts, sj::SkewParameter(alpha), sj::make_separable("shannon"));
  std::size_t iters = 0;
  for (auto _ : state) {
    const auto r = sj::solve_centroid(problem);
    iters = r.iterations;
    benchmark::DoNotOptimize(r.center.data());
  }
  state.counters["cccp_iters"] = static_cast<double>(iters);
}
BENCHMARK(BM_CentroidSolve)->Arg(5)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_KMeans(benchmark::State& state) {
  std::vector<sj::Histogram> protos;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 4; ++k) protos.push_back(random_histogram(rng, 32));
  const auto data = sj::synth_dataset(protos, 100.0, 100, 6);
  const auto gen = sj::make_separable("shannon");
  for (auto _ : state) {
    const auto r = sj::kmeans(data.items(), 4, sj::SkewParameter(0.5), gen, 7);
    benchmark::DoNotOptimize(r.assignments.data());
  }
}
BENCHMARK(BM_KMeans)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
