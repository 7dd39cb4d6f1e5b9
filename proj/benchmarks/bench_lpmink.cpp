#include <benchmark/benchmark.h>

#include "lpmink/energy.hpp"
#include "lpmink/obstruction.hpp"
#include "lpmink/ode.hpp"
#include "lpmink/reconstruct.hpp"

using namespace lpmink;

static void BM_HIntegral(benchmark::State& state) {
  EnergyContext ctx(-3.0);
  const double m = 0.05 + 0.001 * (state.range(0) % 9);
  for (auto _ : state) benchmark::DoNotOptimize(H_integral(ctx, m));
}
BENCHMARK(BM_HIntegral)->Arg(1)->Arg(5);

static void BM_dHdmKernel(benchmark::State& state) {
  EnergyContext ctx(-3.0);
  for (auto _ : state) benchmark::DoNotOptimize(dH_dm(ctx, 0.5, DHdmMethod::Kernel811));
}
BENCHMARK(BM_dHdmKernel);

static void BM_NewtonSolve(benchmark::State& state) {
  ProblemSpec spec;
  spec.p = -0.5;
  spec.f = PeriodicFunction::fourier(1.0, {0.2}, {});
  spec.grid_n = static_cast<int>(state.range(0));
  PeriodicFunction init = PeriodicFunction::constant(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(newton_solve(spec, init, 1e-10));
}
BENCHMARK(BM_NewtonSolve)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_KernelKf(benchmark::State& state) {
  PeriodicFunction f = PeriodicFunction::fourier(2.0, {0.0, 1.0}, {});
  for (auto _ : state) benchmark::DoNotOptimize(kernel_Kf(f, -2.0));
}
BENCHMARK(BM_KernelKf);

static void BM_Reconstruct(benchmark::State& state) {
  EnergyContext ctx(-8.0);
  const CountResult res = count_solutions(-8.0, 100);
  for (auto _ : state)
    benchmark::DoNotOptimize(reconstruct_symmetric_solution(ctx, res.roots[0].m, 3));
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond);

static void BM_CountSolutions(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_solutions(-8.0, state.range(0)));
}
BENCHMARK(BM_CountSolutions)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
