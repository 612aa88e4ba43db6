// OpenMP pseudo-spectral kernels against the serial reference kernels.
// Arguments: shell cutoff M, and for the threaded variants the OpenMP thread count.
#include <benchmark/benchmark.h>
#include <omp.h>

#include <numbers>
#include <random>

#include "torus/fft.hpp"
#include "torus/grid.hpp"
#include "torus/kernels.hpp"
#include "torus/problems.hpp"
#include "torus/reference.hpp"

using namespace torus;

namespace {

constexpr double ell = 2.0 * std::numbers::pi;

struct Pair {
  VectorField w, u;
};

Pair operands(int cutoff) {
  std::mt19937_64 rng(42);
  const SpectralLayout layout(ell, cutoff);
  return {random_solenoidal(layout, rng, 0.1), random_vector_field(layout, rng, 0.1)};
}

void BM_ConvectKernel(benchmark::State& state) {
  const auto [w, u] = operands(static_cast<int>(state.range(0)));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(convect(w, u));
  omp_set_num_threads(saved);
}

void BM_ConvectReference(benchmark::State& state) {
  const auto [w, u] = operands(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::convect(w, u));
}

void BM_SynthesizeFft(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const SpectralLayout layout(ell, static_cast<int>(state.range(0)));
  const auto p = random_scalar_field(layout, rng, 0.1);
  const int n = dealias_grid_size(layout);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(p, n));
  omp_set_num_threads(saved);
}

void BM_SynthesizeReference(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const SpectralLayout layout(ell, static_cast<int>(state.range(0)));
  const auto p = random_scalar_field(layout, rng, 0.1);
  const int n = dealias_grid_size(layout);
  for (auto _ : state) benchmark::DoNotOptimize(reference::synthesize(p, n));
}

void threaded(benchmark::internal::Benchmark* b) {
  const int top = omp_get_num_procs();
  for (int m : {4, 9, 16})
    for (int t = 1; t <= top; t *= 2) b->Args({m, t});
}

}  // namespace

BENCHMARK(BM_ConvectKernel)->Apply(threaded)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ConvectReference)->Arg(4)->Arg(9)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SynthesizeFft)->Apply(threaded)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SynthesizeReference)->Arg(4)->Arg(9)->Arg(16)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
