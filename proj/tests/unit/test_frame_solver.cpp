#include <gtest/gtest.h>

#include "helpers.hpp"
#include "holoframe/fixtures.hpp"
#include "holoframe/form_ops.hpp"
#include "holoframe/frame_solver.hpp"

using namespace holoframe;
using namespace holoframe::testing;

namespace {

SolveResult solve(const SampledCase& s, SolverConfig cfg = {}) {
  return newton_frame_solve(s.lambda, CanonicalSolver::for_dimension(s.domain->n()), cfg);
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.epsilon_schedule = {0.5, 1.0};
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.newton_tolerance = -1.0;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(Newton, AbelianOneStep) {
  const SampledCase s = manufactured_lambda(find_fixture("abelian_1d"), 1.0 / 32.0);
  const SolveResult r = solve(s);
  EXPECT_EQ(r.status, SolveStatus::converged);
  EXPECT_LE(r.iterations, 2);
  EXPECT_LT(r.residual_history.back(), 1e-9);
}

TEST(Newton, HeisenbergOneDimension) {
  const SampledCase s = manufactured_lambda(find_fixture("heisenberg_step2_1d"), 1.0 / 32.0);
  const SolveResult r = solve(s);
  ASSERT_TRUE(r.ok());
  EXPECT_LE(r.iterations, 12);
  const FrameReport f = frame_and_verify(r.u, s.lambda, {}, true);
  EXPECT_LT(f.residual_strong, 1e-8);
  ASSERT_TRUE(f.residual_matrix.has_value());
  EXPECT_LT(f.gauge_check, 1e-3);
  EXPECT_TRUE(f.frame.has_value());
  EXPECT_TRUE(f.to_json().contains("residual_strong"));
}

TEST(FrameReport, ClosedFormFrame) {
  const double h = 1.0 / 32.0;
  const SampledCase s = manufactured_lambda(find_fixture("heisenberg_step2_1d"), h);
  const FrameReport f = frame_and_verify(*s.u, s.lambda);
  EXPECT_LT(f.residual_strong, 1e-12);
  ASSERT_TRUE(f.residual_matrix.has_value());
  EXPECT_LT(*f.residual_matrix, 5 * h * h);
  EXPECT_FALSE(f.frame.has_value());
}

TEST(Newton, HeisenbergTwoDimensionsCoarse) {
  const SampledCase s = manufactured_lambda(find_fixture("heisenberg_step2_2d"), 1.0 / 16.0);
  SolverConfig cfg;
  cfg.check_integrability = false;
  const SolveResult r = solve(s, cfg);
  ASSERT_TRUE(r.ok()) << r.message;
  EXPECT_LT(r.residual_history.back(), 1e-8);
  EXPECT_LT(frame_and_verify(r.u, s.lambda).gauge_check, 1e-3);
}

TEST(Newton, NonintegrableDetected) {
  const SampledCase s = manufactured_lambda(find_fixture("nonintegrable_2d"), 1.0 / 16.0);
  const SolveResult r = solve(s);
  EXPECT_EQ(r.status, SolveStatus::failed_nonintegrable);
  EXPECT_GT(r.weak_residual, 10.0 * r.gate);
  EXPECT_EQ(r.to_json()["status"], "failed_nonintegrable");
}

TEST(Newton, BudgetExhaustion) {
  const SampledCase s = manufactured_lambda(find_fixture("heisenberg_step2_1d"), 1.0 / 16.0);
  SolverConfig cfg;
  cfg.max_newton_iters = 1;
  cfg.newton_tolerance = 1e-15;
  EXPECT_EQ(solve(s, cfg).status, SolveStatus::failed_budget);
}

TEST(Rescaled, LargeSl2Form) {
  const SampledCase s = manufactured_lambda(find_fixture("sl2c_large_1d"), 1.0 / 16.0);
  const SolveResult r = rescaled_solve(s.lambda, [](const GridDomain& d) { return CanonicalSolver::for_dimension(d.n()); },
                                       SolverConfig{});
  ASSERT_TRUE(r.ok()) << r.message;
  EXPECT_LE(r.epsilon_used, 1.0);
  EXPECT_LT(r.residual_history.back(), 1e-8);
}

TEST(KmapNewton, IntegrableTwoDimensions) {
  const SampledCase s = manufactured_lambda(find_fixture("heisenberg_step2_2d"), 1.0 / 16.0);
  SolverConfig cfg;
  cfg.check_integrability = false;
  const CanonicalSolver S = CanonicalSolver::for_dimension(2);
  const SolveResult a = kmap_newton_solve(s.lambda, S, cfg);
  const SolveResult b = newton_frame_solve(s.lambda, S, cfg);
  ASSERT_TRUE(a.ok()) << a.message;
  ASSERT_TRUE(b.ok()) << b.message;
  EXPECT_LT(max_difference(a.u, b.u), 1e-6);
}

TEST(RatioStudy, AbelianIsLinear) {
  const SampledCase s = manufactured_lambda(find_fixture("abelian_1d"), 1.0 / 16.0);
  const auto pts = ratio_study(s.lambda, CanonicalSolver::for_dimension(1), SolverConfig{}, {0.0, 0.5, 1.0});
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0].ratio, 1.0);
  for (const auto& p : pts) EXPECT_NEAR(p.ratio, 1.0, 1e-8);
}

TEST(Status, Names) {
  EXPECT_EQ(to_string(SolveStatus::converged), "converged");
  EXPECT_EQ(to_string(SolveStatus::rescaled_converged), "rescaled_converged");
  EXPECT_EQ(to_string(SolveStatus::failed_budget), "failed_budget");
}

}  // namespace
