#include <benchmark/benchmark.h>

#include "holoframe/canonical_solver.hpp"
#include "holoframe/cauchy.hpp"
#include "holoframe/fixtures.hpp"
#include "holoframe/frame_solver.hpp"
#include "holoframe/holder.hpp"

namespace {

using namespace holoframe;

void BM_CauchyTransform(benchmark::State& state) {
  const SampledCase s = manufactured_lambda(find_fixture("heisenberg_step2_1d"), 1.0 / state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_transform(s.lambda).data().data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.domain->size()));
}
BENCHMARK(BM_CauchyTransform)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DbarSolve(benchmark::State& state) {
  const char* name = state.range(0) == 1 ? "heisenberg_step2_1d" : "heisenberg_step2_2d";
  const SampledCase s = manufactured_lambda(find_fixture(name), 1.0 / state.range(1));
  const CanonicalSolver S = CanonicalSolver::for_dimension(s.domain->n());
  int iterations = 0;
  for (auto _ : state) {
    const DbarSolveResult r = dbar_solve_detailed(S, s.lambda);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.u.data().data());
  }
  state.counters["cg_iterations"] = iterations;
}
BENCHMARK(BM_DbarSolve)->Args({1, 64})->Args({2, 16})->Args({2, 32})->Unit(benchmark::kMillisecond);

void BM_NewtonFrameSolve(benchmark::State& state) {
  const SampledCase s = manufactured_lambda(find_fixture("heisenberg_step2_1d"), 1.0 / state.range(0));
  const CanonicalSolver S = CanonicalSolver::for_dimension(1);
  for (auto _ : state) benchmark::DoNotOptimize(newton_frame_solve(s.lambda, S, SolverConfig{}).iterations);
}
BENCHMARK(BM_NewtonFrameSolve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_HolderNorm(benchmark::State& state) {
  const SampledCase s = manufactured_lambda(find_fixture("heisenberg_step2_1d"), 1.0 / state.range(0));
  HolderOptions opts;
  opts.sampled_pairs = 100'000;
  for (auto _ : state) benchmark::DoNotOptimize(holder_norm(s.lambda, HolderSpec::from_kappa(0.5), opts).value);
}
BENCHMARK(BM_HolderNorm)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
