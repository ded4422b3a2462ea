#include <benchmark/benchmark.h>

#include <random>

#include "holoframe/form_ops.hpp"
#include "holoframe/identity_suite.hpp"
#include "holoframe/lie_algebra.hpp"
#include "holoframe/matrix_exp.hpp"

namespace {

using namespace holoframe;

LieAlgebra algebra_for(int which) {
  switch (which) {
    case 0:
      return LieAlgebra::heisenberg3();
    case 1:
      return LieAlgebra::sl2C();
    default:
      return LieAlgebra::gl(3);
  }
}

AlgebraElement random_element(const LieAlgebra& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 0.3);
  AlgebraElement v(g.dim());
  for (int k = 0; k < g.dim(); ++k) v[k] = cplx(gauss(rng), gauss(rng));
  return v;
}

void BM_GaugeFactors(benchmark::State& state) {
  const LieAlgebra g = algebra_for(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const AlgebraElement u = random_element(g, rng);
  SmallMat a(g.dim(), g.dim());
  SmallMat d(g.dim(), g.dim());
  for (auto _ : state) {
    g.gauge_factors_into(u.data(), SeriesOptions{}, a, d);
    benchmark::DoNotOptimize(a.data());
    benchmark::DoNotOptimize(d.data());
  }
  state.SetLabel(g.id());
}
BENCHMARK(BM_GaugeFactors)->Arg(0)->Arg(1)->Arg(2);

void BM_ExpSeries(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss;
  Mat x(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = cplx(gauss(rng), gauss(rng));
  for (auto _ : state) benchmark::DoNotOptimize(exp_series(x, SeriesOptions{}));
}
BENCHMARK(BM_ExpSeries)->Arg(3)->Arg(8);

GForm random_form(const DomainPtr& dom, const AlgebraPtr& g, int q) {
  std::mt19937_64 rng(3);
  return sample_polynomial_form(dom, g, random_polynomial_form(*g, dom->n(), q, 3, 6, 0.5, rng));
}

void BM_Dbar(benchmark::State& state) {
  const auto g = std::make_shared<const LieAlgebra>(LieAlgebra::sl2C());
  const auto dom = std::make_shared<const GridDomain>(2, 1.0, 1.0 / state.range(0));
  const GForm u = random_form(dom, g, 0);
  for (auto _ : state) benchmark::DoNotOptimize(dbar(u).data().data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dom->size()));
}
BENCHMARK(BM_Dbar)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Obstruction(benchmark::State& state) {
  const auto g = std::make_shared<const LieAlgebra>(LieAlgebra::sl2C());
  const auto dom = std::make_shared<const GridDomain>(2, 1.0, 1.0 / state.range(0));
  const GForm a = random_form(dom, g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(obstruction(a).data().data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dom->size()));
}
BENCHMARK(BM_Obstruction)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GaugeTransform(benchmark::State& state) {
  const auto g = std::make_shared<const LieAlgebra>(LieAlgebra::sl2C());
  const auto dom = std::make_shared<const GridDomain>(2, 1.0, 1.0 / state.range(0));
  const GForm a = random_form(dom, g, 1);
  const GForm u = random_form(dom, g, 0);
  for (auto _ : state) benchmark::DoNotOptimize(gauge_transform(a, u).data().data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dom->size()));
}
BENCHMARK(BM_GaugeTransform)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_IdentitySuite(benchmark::State& state) {
  const LieAlgebra g = algebra_for(static_cast<int>(state.range(0)));
  IdentitySuiteOptions opts;
  opts.spacing = 1.0 / 16.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_identity_suite(g, opts));
  state.SetLabel(g.id());
}
BENCHMARK(BM_IdentitySuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
