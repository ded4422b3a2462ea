#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "holoframe/form_ops.hpp"
#include "holoframe/holder.hpp"

using namespace holoframe;
using namespace holoframe::testing;

namespace {

TEST(HolderSpec, Decomposition) {
  const HolderSpec s = HolderSpec::from_kappa(1.25);
  EXPECT_EQ(s.k, 1);
  EXPECT_DOUBLE_EQ(s.nu, 0.25);
  EXPECT_THROW((void)HolderSpec::from_kappa(1.0), DomainError);
  EXPECT_THROW((void)HolderSpec::from_kappa(-0.5), DomainError);
  EXPECT_THROW((void)HolderSpec::from_kappa(3.5), DomainError);
}

TEST(HolderNorm, ConstantHasNoSeminorm) {
  const auto dom = disc(1.0 / 8.0);
  const HolderReport r = holder_norm(sample(dom, algebra("abelian(1)"), "3", 0), HolderSpec::from_kappa(0.5));
  EXPECT_NEAR(r.value, 3.0, 1e-14);
  EXPECT_NEAR(r.seminorm, 0.0, 1e-14);
  EXPECT_TRUE(r.exhaustive);
}

TEST(HolderNorm, ZbarOnUnitDisc) {
  const auto dom = disc(1.0 / 16.0);
  HolderOptions opts;
  opts.force_exhaustive = true;
  const HolderReport r = holder_norm(sample(dom, algebra("abelian(1)"), "zbar", 0), HolderSpec::from_kappa(0.5), opts);
  EXPECT_NEAR(r.value, std::sqrt(2.0), 0.02 * std::sqrt(2.0));
  EXPECT_EQ(r.pair_count, dom->size() * (dom->size() - 1) / 2);
}

TEST(HolderNorm, FirstOrderOfQuadratic) {
  const auto dom = disc(1.0 / 16.0);
  const HolderReport r = holder_norm(sample(dom, algebra("abelian(1)"), "zbar^2/2", 0), HolderSpec::from_kappa(1.5));
  ASSERT_EQ(r.sup_terms.size(), 2u);
  EXPECT_NEAR(r.sup_terms[0], 0.5, 0.02);
  EXPECT_NEAR(r.sup_terms[1], 1.0, 0.05);
  EXPECT_GT(r.seminorm, 1.0);
}

TEST(HolderNorm, SampledIsDeterministicLowerBound) {
  const auto dom = disc(1.0 / 32.0);
  const GForm f = sample(dom, algebra("heisenberg3"), "zbar*X + z^2*zbar*Y", 0);
  HolderOptions sampled;
  sampled.exhaustive_limit = 16;
  sampled.sampled_pairs = 20000;
  sampled.seed = 4;
  const HolderReport a = holder_norm(f, HolderSpec::from_kappa(0.5), sampled);
  const HolderReport b = holder_norm(f, HolderSpec::from_kappa(0.5), sampled);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.value, b.value);
  HolderOptions full;
  full.force_exhaustive = true;
  const HolderReport c = holder_norm(f, HolderSpec::from_kappa(0.5), full);
  EXPECT_LE(a.seminorm, c.seminorm + 1e-15);
  EXPECT_GT(a.seminorm, 0.9 * c.seminorm);
}

TEST(HolderNorm, MaskRestrictsNodes) {
  const auto dom = disc(1.0 / 16.0);
  HolderOptions opts;
  opts.mask = dom->ball_mask(0.5);
  const HolderReport r = holder_norm(sample(dom, algebra("abelian(1)"), "zbar", 0), HolderSpec::from_kappa(0.5), opts);
  EXPECT_NEAR(r.sup_terms[0], 0.5, 1e-12);
  EXPECT_NEAR(r.value, 1.0, 0.02);
}

TEST(HolderNorm, JsonFields) {
  const auto dom = disc(0.25);
  const auto j = holder_norm(sample(dom, algebra("abelian(1)"), "zbar", 0), HolderSpec::from_kappa(0.5)).to_json();
  for (const char* key : {"kappa", "value", "seminorm", "pair_count", "seed"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Rescale, ExactOnCubics) {
  const auto dom = disc(1.0 / 16.0);
  const auto g = algebra("heisenberg3");
  const GForm a = sample(dom, g, "(zbar*X + z^2*Y)*dzbar", 1);
  const double eps = 0.3;
  const GForm expect = sample(dom, g, "(0.09*zbar*X + 0.027*z^2*Y)*dzbar", 1);
  EXPECT_LT(max_difference(rescale(a, eps), expect), 1e-12);
  EXPECT_LT(max_difference(rescale(a, 1.0), a), 1e-15);
  EXPECT_THROW((void)rescale(a, 0.0), DomainError);
}

TEST(Rescale, TwoDimensional) {
  const auto dom = polydisc(1.0 / 8.0, 0.5);
  const auto g = algebra("heisenberg3");
  const GForm a = sample(dom, g, "zbar2*X*dzbar1 + z1*Y*dzbar2", 1);
  const GForm expect = sample(dom, g, "0.25*zbar2*X*dzbar1 + 0.25*z1*Y*dzbar2", 1);
  EXPECT_LT(max_difference(rescale(a, 0.5), expect), 1e-13);
}

TEST(ScalingMargin, NonNegativeForPolynomialForms) {
  const auto dom = disc(1.0 / 32.0);
  const GForm a = sample(dom, algebra("heisenberg3"), "(X + zbar*Y + z^2*X)*dzbar", 1);
  for (double eps : {0.25, 0.5}) EXPECT_GE(scaling_margin(a, eps, HolderSpec::from_kappa(0.5)), -0.02);
}

TEST(RealPartial, Directions) {
  const auto dom = disc(1.0 / 16.0);
  const auto g = algebra("abelian(1)");
  const GForm f = sample(dom, g, "z^2", 0);
  EXPECT_LT(max_difference(real_partial(f, 0), sample(dom, g, "2*z", 0), dom->interior_mask()), 1e-12);
  EXPECT_LT(max_difference(real_partial(f, 1), sample(dom, g, "2*i*z", 0), dom->interior_mask()), 1e-12);
}

}  // namespace
