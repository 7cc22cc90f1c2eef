#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "weightlab/czlab.hpp"
#include "weightlab/funcspace.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/weightclass.hpp"
#include "weightlab/young.hpp"

using namespace weightlab;

namespace {

GridFunction random_field(int dim, std::size_t n, unsigned seed = 1) {
  GridGeometry g{dim, {0.0, 0.0}, 1.0, n};
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> dist(1.0);
  std::vector<double> v(g.cell_count());
  for (auto& x : v) x = dist(rng);
  return GridFunction(g, std::move(v));
}

void BM_HlMaximal1D(benchmark::State& state) {
  const auto f = random_field(1, std::size_t(state.range(0)));
  const CubeFamily F(f.geometry().bounding_cube(), 0, int(std::log2(double(state.range(0)))), 4);
  for (auto _ : state) benchmark::DoNotOptimize(hl_maximal(f, F));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HlMaximal1D)->Arg(1 << 10)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

void BM_HlMaximal2D(benchmark::State& state) {
  const auto f = random_field(2, std::size_t(state.range(0)));
  const CubeFamily F(f.geometry().bounding_cube(), 0, int(std::log2(double(state.range(0)))), 2);
  for (auto _ : state) benchmark::DoNotOptimize(hl_maximal(f, F));
}
BENCHMARK(BM_HlMaximal2D)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_DyadicMaximal(benchmark::State& state) {
  const auto f = random_field(2, 512);
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_maximal(f));
}
BENCHMARK(BM_DyadicMaximal)->Unit(benchmark::kMillisecond);

void BM_Luxemburg(benchmark::State& state) {
  const auto f = random_field(1, 256);
  const std::vector<double> v(f.values().begin(), f.values().end());
  const YoungFn phi = state.range(0) == 0 ? YoungFn::power(2.5) : YoungFn::exp_minus_one();
  for (auto _ : state) benchmark::DoNotOptimize(state.range(0) == 0 ? luxemburg_norm(v, phi) : luxemburg_norm_bisect(v, phi));
}
BENCHMARK(BM_Luxemburg)->Arg(0)->Arg(1);

void BM_OrliczMaximal(benchmark::State& state) {
  const auto f = random_field(1, 1024);
  const CubeFamily F(f.geometry().bounding_cube(), 0, 6, 2);
  const YoungFn phi = YoungFn::power_log(1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(orlicz_maximal(f, phi, 0.0, F));
}
BENCHMARK(BM_OrliczMaximal)->Unit(benchmark::kMillisecond);

void BM_CzDecompose(benchmark::State& state) {
  const int dim = int(state.range(0));
  const auto f = random_field(dim, dim == 1 ? std::size_t{1} << 14 : std::size_t{512});
  for (auto _ : state) benchmark::DoNotOptimize(cz_decompose(f, dim == 1 ? 8.0 : 16.0));
}
BENCHMARK(BM_CzDecompose)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ApConstant(benchmark::State& state) {
  const auto w = SegmentWeight1D::power_law(0.5);
  const CubeFamily F(Cube{1, {-4.0, 0.0}, 8.0}, 0, 8, 4);
  const auto spec = ClassSpec::AAp(2.0, SquareMatrix::scalar(-2.0));
  for (auto _ : state) benchmark::DoNotOptimize(constant(w, spec, F));
  state.counters["cubes"] = double(F.cubes().size());
}
BENCHMARK(BM_ApConstant)->Unit(benchmark::kMillisecond);

void BM_ChainCheck(benchmark::State& state) {
  GridGeometry g{1, {-1.0, 0.0}, 2.0, std::size_t(state.range(0))};
  std::vector<double> v(g.n, 0.05);
  for (std::size_t i = g.n / 2; i < g.n / 2 + g.n / 32; ++i) v[i] = 40.0;
  v[g.n / 8] = 1500.0;
  ChainConfig cfg{GridFunction(g, v), SegmentWeight1D::power_law(0.5), SquareMatrix::scalar(-2.0)};
  for (auto _ : state) benchmark::DoNotOptimize(theorem_chain_check(cfg));
}
BENCHMARK(BM_ChainCheck)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
