// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "bbeta/bivariate_beta.hpp"
#include "bbeta/extensions.hpp"
#include "bbeta/kernels.hpp"

namespace {

using namespace bbeta;

const BivariateBetaParams kParams(1, 1, 1, 1, 3, 3);

template <class Policy>
void BM_BivariateMoments(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto est = kernels::bivariate_moments<Policy>(kParams, n, 42);
    benchmark::DoNotOptimize(est);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <class Policy>
void BM_SampleDirichlet(benchmark::State& state) {
  const CorrelatedDirichletParams p({2.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, {7.5, 1.5, 1.5});
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto batch = kernels::sample_dirichlet<Policy>(p, n, 42);
    benchmark::DoNotOptimize(batch.xs.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <class Policy>
void BM_DensityGrid(benchmark::State& state) {
  const BivariateBetaParams p(2, 2, 2, 2, 2, 2);
  RngStream rng(7);
  const auto latents = draw_latents(p, 2000, rng);
  const auto grid = Grid2D::uniform(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto g = kernels::density_grid<Policy>(p, grid, latents);
    benchmark::DoNotOptimize(g.density.data());
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_BivariateMoments, kernels::Serial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_BivariateMoments, kernels::Parallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_SampleDirichlet, kernels::Serial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_SampleDirichlet, kernels::Parallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_DensityGrid, kernels::Serial)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_DensityGrid, kernels::Parallel)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
