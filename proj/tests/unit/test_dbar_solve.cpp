#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "holoframe/canonical_solver.hpp"
#include "holoframe/cauchy.hpp"
#include "holoframe/cgls.hpp"
#include "holoframe/fixtures.hpp"
#include "holoframe/form_ops.hpp"

using namespace holoframe;
using namespace holoframe::testing;

namespace {

TEST(CauchyCell, FarFieldAndSymmetry) {
  EXPECT_LT(std::abs(cauchy_cell_integral(0.0, 0.1)), 1e-15);
  const cplx c(3.0, -2.0);
  const double h = 0.01;
  EXPECT_LT(std::abs(cauchy_cell_integral(c, h) - h * h / c), 1e-10);
  cplx quad = 0.0;
  const int m = 200;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const cplx s = cplx(1.5, 0.5) + cplx((a + 0.5) / m - 0.5, (b + 0.5) / m - 0.5);
      quad += 1.0 / s / double(m * m);
    }
  EXPECT_LT(std::abs(cauchy_cell_integral(cplx(1.5, 0.5), 1.0) - quad), 1e-5);
}

TEST(CauchyTransform, ConstantGivesZbar) {
  const auto dom = disc(1.0 / 32.0);
  const auto g = algebra("abelian(1)");
  const GForm u = cauchy_transform(sample(dom, g, "1*dzbar", 1));
  const GForm expect = sample(dom, g, "zbar", 0);
  EXPECT_LT(max_difference(u, expect, dom->ball_mask(0.5)), 0.05);
  EXPECT_LT(max_difference(dbar(u), sample(dom, g, "1*dzbar", 1), dom->ball_mask(0.5)), 0.05);
}

TEST(Cgls, MatchesLeastSquares) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  Mat A(30, 12);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) A(i, j) = cplx(gauss(rng), gauss(rng));
  Vec b(30);
  for (int i = 0; i < 30; ++i) b[i] = cplx(gauss(rng), gauss(rng));
  const CglsResult r = cgls([&](const Vec& x, Vec& y) { y = A * x; },
                            [&](const Vec& y, Vec& x) { x = A.adjoint() * y; }, b, Vec::Zero(12), 12,
                            {1e-14, 200});
  const Vec ref = A.colPivHouseholderQr().solve(b);
  EXPECT_TRUE(r.converged);
  EXPECT_LT((r.x - ref).norm(), 1e-9 * ref.norm());
  EXPECT_FALSE(r.history.empty());
}

TEST(Cgls, MinimalNormOnUnderdetermined) {
  Mat A(1, 2);
  A << 1.0, 1.0;
  Vec b(1);
  b << 2.0;
  const CglsResult r = cgls([&](const Vec& x, Vec& y) { y = A * x; },
                            [&](const Vec& y, Vec& x) { x = A.adjoint() * y; }, b, Vec::Zero(2), 2, {});
  EXPECT_NEAR(std::abs(r.x[0] - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.x[1] - 1.0), 0.0, 1e-12);
}

TEST(SolverChoice, Defaults) {
  EXPECT_EQ(CanonicalSolver::for_dimension(1).mode, SolverMode::cauchy);
  EXPECT_EQ(CanonicalSolver::for_dimension(2).mode, SolverMode::least_squares);
  CanonicalSolver bad;
  bad.mode = SolverMode::cauchy;
  EXPECT_THROW(bad.validate(2), DomainError);
  EXPECT_EQ(parse_solver_mode(to_string(SolverMode::least_squares)), SolverMode::least_squares);
  EXPECT_EQ(parse_normalization("mean_zero"), Normalization::mean_zero);
  EXPECT_THROW((void)parse_solver_mode("direct"), ParseError);
}

TEST(DbarSolve, OneDimensionAllModes) {
  const auto dom = disc(1.0 / 32.0);
  const auto g = algebra("heisenberg3");
  const GForm lambda = sample(dom, g, "(zbar*X + z*Y + Z)*dzbar", 1);
  CanonicalSolver ls;
  for (const CanonicalSolver& S : {CanonicalSolver::for_dimension(1), ls}) {
    const DbarSolveResult r = dbar_solve_detailed(S, lambda);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.residual_sup, 1e-8);
    EXPECT_LT(interior_residual(r.u, lambda), 1e-8);
  }
}

TEST(DbarSolve, MeanZeroNormalization) {
  const auto dom = disc(1.0 / 16.0);
  const auto g = algebra("abelian(1)");
  const GForm u = dbar_solve(CanonicalSolver::for_dimension(1), sample(dom, g, "zbar*dzbar", 1));
  cplx mean = 0.0;
  for (std::size_t p = 0; p < dom->size(); ++p) mean += u.value(0, p)[0];
  EXPECT_LT(std::abs(mean) / dom->size(), 1e-10);
}

TEST(DbarSolve, TwoDimensionsIntegrable) {
  const SampledCase s = manufactured_lambda(find_fixture("abelian_2d"), 1.0 / 16.0);
  const DbarSolveResult r = dbar_solve_detailed(CanonicalSolver::for_dimension(2), s.lambda);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.residual_sup, 1e-8);
}

TEST(DbarSolve, RejectsWrongDegree) {
  const auto dom = disc(0.25);
  EXPECT_THROW((void)dbar_solve(CanonicalSolver::for_dimension(1), GForm(dom, algebra("abelian(1)"), 0)),
               DimensionError);
}

TEST(DbarSolveTwo, InvertsDbarOnOneForms) {
  const auto dom = polydisc(1.0 / 16.0, 0.25);
  const auto g = algebra("abelian(1)");
  const GForm two = sample(dom, g, "1 + zbar1", 2);
  ASSERT_EQ(two.components(), 1);
  const DbarSolveResult r = dbar_solve_two(CanonicalSolver::for_dimension(2), two);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(max_difference(dbar(r.u), two, dom->interior_mask()), 1e-8);
}

TEST(Kmap, RangeIsDbarClosed) {
  const CanonicalSolver S = CanonicalSolver::for_dimension(2);
  const double h = 1.0 / 16.0;
  const SampledCase good = manufactured_lambda(find_fixture("heisenberg_step2_2d"), h);
  EXPECT_LT(dbar(kmap(S, good.lambda)).sup_norm(good.domain->interior_mask()), 5 * (h * h + S.cg_tolerance));
  const SampledCase bad = manufactured_lambda(find_fixture("nonintegrable_2d"), h);
  EXPECT_GT(dbar(kmap(S, bad.lambda)).sup_norm(bad.domain->interior_mask()), 0.1);
}

TEST(Kmap, DerivativeAtZeroIsIdentity) {
  const CanonicalSolver S = CanonicalSolver::for_dimension(2);
  const SampledCase s = manufactured_lambda(find_fixture("heisenberg_step2_2d"), 1.0 / 16.0);
  double prev = 0.0;
  for (double t : {0.5, 0.25}) {
    const GForm tl = t * s.lambda;
    const double dev = max_difference(kmap(S, tl), tl) / t;
    if (prev > 0.0) EXPECT_NEAR(prev / dev, 2.0, 0.1);
    prev = dev;
  }
  EXPECT_TRUE(kmap(S, GForm(s.domain, s.algebra, 1)).is_zero());
}

TEST(InteriorEstimate, FiniteRatio) {
  const SampledCase s = manufactured_lambda(find_fixture("abelian_1d"), 1.0 / 16.0);
  const InteriorEstimate e = interior_estimate_report(*s.u, s.lambda, HolderSpec::from_kappa(0.5));
  EXPECT_FALSE(e.undefined);
  EXPECT_GT(e.K_norm, 0.0);
  EXPECT_NEAR(e.ratio, e.V_norm / e.K_norm, 1e-15);
  EXPECT_TRUE(e.to_json().contains("ratio"));
}

TEST(InteriorEstimate, ZeroIsUndefined) {
  const auto dom = disc(0.125);
  const auto g = algebra("abelian(1)");
  const InteriorEstimate e = interior_estimate_report(GForm(dom, g, 0), GForm(dom, g, 1), HolderSpec::from_kappa(0.5));
  EXPECT_TRUE(e.undefined);
  EXPECT_TRUE(std::isnan(e.ratio));
}

}  // namespace
