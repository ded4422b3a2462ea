#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "holoframe/fixtures.hpp"
#include "holoframe/form_ops.hpp"
#include "holoframe/oracle.hpp"

using namespace holoframe;
using namespace holoframe::testing;

namespace {

TEST(FdDexp, AgreesWithSeries) {
  std::mt19937_64 rng(2);
  for (const char* name : {"heisenberg3", "sl2C", "gl(2)"}) {
    const LieAlgebra g = LieAlgebra::builtin(name);
    for (int t = 0; t < 10; ++t) {
      const AlgebraElement u = random_element(g, rng, 0.4);
      const AlgebraElement v = random_element(g, rng);
      EXPECT_LT((fd_dexp_oracle(g, u, v) - g.dexp_factor(u) * v).norm(), 1e-6) << name;
    }
  }
}

TEST(FdDexp, NeedsRepresentation) {
  const LieAlgebra bare("bare", 1, {});
  EXPECT_THROW((void)fd_dexp_oracle(bare, bare.zero(), bare.zero()), DimensionError);
}

TEST(ExpRepField, Pointwise) {
  const auto dom = disc(0.25);
  const auto g = algebra("sl2C");
  const GForm u = sample(dom, g, "zbar*H + z*E", 0);
  const MatrixField s = exp_rep_field(u);
  for (std::size_t p = 0; p < dom->size(); ++p)
    EXPECT_LT((Mat(s.matrix(0, p)) - g->exp_rep(u.value(0, p))).norm(), 1e-13);
}

TEST(MatrixMc, MatchesMcPullback) {
  for (const char* name : {"heisenberg_step2_1d", "heisenberg_step2_2d"}) {
    const SampledCase s = manufactured_lambda(find_fixture(name), 1.0 / 16.0);
    const double h = s.domain->spacing();
    const MatrixField mc = matrix_mc(exp_rep_field(*s.u));
    EXPECT_LT(MatrixField::max_deviation(mc, represent(mc_pullback(*s.u)), s.domain->interior_mask()), 5 * h * h)
        << name;
  }
}

TEST(MatrixMc, GenericSl2FrameSecondOrder) {
  const auto g = algebra("sl2C");
  double prev = 0.0;
  for (double h : {1.0 / 16.0, 1.0 / 32.0}) {
    const auto dom = disc(h);
    const GForm u = sample(dom, g, "0.3*z*zbar*H + 0.2*zbar^2*E - 0.1*z*F", 0);
    const double dev =
        MatrixField::max_deviation(matrix_mc(exp_rep_field(u)), represent(mc_pullback(u)), dom->interior_mask());
    EXPECT_LT(dev, 5 * h * h);
    if (prev > 0.0) EXPECT_NEAR(prev / dev, 4.0, 0.8);
    prev = dev;
  }
}

TEST(MatrixMc, SingularThrows) {
  const auto dom = disc(0.25);
  MatrixField sigma(dom, 2, 1);
  EXPECT_THROW((void)matrix_mc(sigma), DomainError);
}

}  // namespace
