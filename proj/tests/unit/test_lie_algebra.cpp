#include <gtest/gtest.h>

#include "helpers.hpp"
#include "holoframe/oracle.hpp"

using namespace holoframe;
using namespace holoframe::testing;

namespace {

TEST(Bracket, AbelianIsZero) {
  const auto g = LieAlgebra::abelian(1);
  AlgebraElement one(1);
  one[0] = 1.0;
  EXPECT_EQ(g.bracket(one, one).norm(), 0.0);
}

TEST(Bracket, HeisenbergReadsStructureConstants) {
  const auto g = LieAlgebra::heisenberg3();
  const auto X = element(g, "X");
  const auto Y = element(g, "Y");
  const auto Z = element(g, "Z");
  EXPECT_EQ((g.bracket(X, Y) - Z).norm(), 0.0);
  EXPECT_EQ((g.bracket(Y, X) + Z).norm(), 0.0);
}

TEST(Bracket, Sl2MatchesMatrixCommutator) {
  const auto g = LieAlgebra::sl2C();
  const auto E = element(g, "E");
  const auto F = element(g, "F");
  const auto H = element(g, "H");
  EXPECT_LT((g.bracket(E, F) - H).norm(), 1e-15);
  const Mat comm = g.represent(E) * g.represent(F) - g.represent(F) * g.represent(E);
  EXPECT_LT((g.coordinates_of(comm) - H).norm(), 1e-14);
}

TEST(Bracket, AntisymmetricAndBilinear) {
  std::mt19937_64 rng(1);
  for (const char* name : {"heisenberg3", "sl2C", "gl(3)"}) {
    const auto g = LieAlgebra::builtin(name);
    for (int t = 0; t < 10; ++t) {
      const auto a = random_element(g, rng);
      const auto b = random_element(g, rng);
      const auto c = random_element(g, rng);
      const cplx s(0.3, -1.2);
      EXPECT_LT((g.bracket(a, b) + g.bracket(b, a)).norm(), 1e-13) << name;
      EXPECT_LT((g.bracket(s * a + c, b) - s * g.bracket(a, b) - g.bracket(c, b)).norm(), 1e-12) << name;
    }
  }
}

TEST(AdMatrix, ActsAsBracket) {
  std::mt19937_64 rng(2);
  for (const char* name : {"abelian(2)", "heisenberg3", "sl2C", "gl(2)"}) {
    const auto g = LieAlgebra::builtin(name);
    const auto a = random_element(g, rng);
    const auto b = random_element(g, rng);
    EXPECT_LT((g.ad_matrix(a) * b - g.bracket(a, b)).norm(), 1e-13) << name;
  }
  const auto ab = LieAlgebra::abelian(3);
  EXPECT_EQ(ab.ad_matrix(random_element(ab, rng)).norm(), 0.0);
}

TEST(AdMatrix, HeisenbergXMapsYToZ) {
  const auto g = LieAlgebra::heisenberg3();
  const Mat ad = g.ad_matrix(element(g, "X"));
  EXPECT_EQ((ad * element(g, "Y") - element(g, "Z")).norm(), 0.0);
  EXPECT_EQ((ad * element(g, "X")).norm(), 0.0);
  EXPECT_EQ((ad * element(g, "Z")).norm(), 0.0);
}

TEST(AdExp, ZeroIsIdentity) {
  const auto g = LieAlgebra::sl2C();
  EXPECT_EQ((g.ad_exp(g.zero()) - Mat::Identity(3, 3)).norm(), 0.0);
}

TEST(AdExp, HeisenbergTerminates) {
  const auto g = LieAlgebra::heisenberg3();
  const Mat A = g.ad_exp(element(g, "X"), {2, 1e-15});
  EXPECT_EQ((A * element(g, "Y") - element(g, "Y") - element(g, "Z")).norm(), 0.0);
}

TEST(AdExp, MatchesConjugationInRepresentation) {
  std::mt19937_64 rng(3);
  for (const char* name : {"sl2C", "heisenberg3", "gl(2)"}) {
    const auto g = LieAlgebra::builtin(name);
    for (int t = 0; t < 10; ++t) {
      auto u = random_element(g, rng);
      u *= 2.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / u.norm();
      const auto v = random_element(g, rng);
      const Mat s = g.exp_rep(u);
      const Mat conj = s * g.represent(v) * s.inverse();
      EXPECT_LT((g.ad_exp(u) * v - g.coordinates_of(conj)).norm(), 1e-8) << name;
    }
  }
  const auto g = LieAlgebra::sl2C();
  AlgebraElement u = 0.3 * element(g, "H");
  const Mat s = g.exp_rep(u);
  const auto E = element(g, "E");
  EXPECT_LT((g.ad_exp(u) * E - g.coordinates_of(s * g.represent(E) * s.inverse())).norm(), 1e-13);
}

TEST(AdExp, InverseAndAutomorphism) {
  std::mt19937_64 rng(4);
  const auto g = LieAlgebra::sl2C();
  for (int t = 0; t < 10; ++t) {
    const auto u = random_element(g, rng, 0.7);
    const auto a = random_element(g, rng);
    const auto b = random_element(g, rng);
    const Mat A = g.ad_exp(u);
    EXPECT_LT((A * g.ad_exp(-u) - Mat::Identity(3, 3)).norm(), 1e-12);
    EXPECT_LT((A * g.bracket(a, b) - g.bracket(A * a, A * b)).norm(), 1e-11);
  }
}

TEST(AdExp, TailBoundFailureThrows) {
  const auto g = LieAlgebra::sl2C();
  EXPECT_THROW((void)g.ad_exp(element(g, "H"), {1, 1e-15}), SeriesToleranceError);
}

TEST(DexpFactor, ZeroAndAbelianAreIdentity) {
  const auto g = LieAlgebra::sl2C();
  EXPECT_EQ((g.dexp_factor(g.zero()) - Mat::Identity(3, 3)).norm(), 0.0);
  std::mt19937_64 rng(5);
  const auto ab = LieAlgebra::abelian(1);
  EXPECT_EQ((ab.dexp_factor(random_element(ab, rng)) - Mat::Identity(1, 1)).norm(), 0.0);
}

TEST(DexpFactor, HeisenbergIsIdMinusHalfAd) {
  std::mt19937_64 rng(6);
  const auto g = LieAlgebra::heisenberg3();
  for (int t = 0; t < 5; ++t) {
    const auto u = random_element(g, rng);
    const Mat expect = Mat::Identity(3, 3) - 0.5 * g.ad_matrix(u);
    EXPECT_LT((g.dexp_factor(u) - expect).norm(), 1e-14);
  }
}

TEST(DexpFactor, DerivativeOfExponential) {
  std::mt19937_64 rng(7);
  const auto g = LieAlgebra::sl2C();
  for (int t = 0; t < 10; ++t) {
    const auto u = random_element(g, rng, 0.5);
    const auto v = random_element(g, rng);
    const double s = 1e-5;
    const Mat fd = (g.exp_rep(u + s * v) - g.exp_rep(u - s * v)) / (2 * s);
    const Mat expect = g.exp_rep(u) * g.represent(g.dexp_factor(u) * v);
    EXPECT_LT((fd - expect).norm(), 1e-8);
  }
}

TEST(ExpRep, ExactCases) {
  const auto gl1 = LieAlgebra::gl(1);
  AlgebraElement u(1);
  u[0] = cplx(0.0, M_PI);
  EXPECT_LT(std::abs(gl1.exp_rep(u)(0, 0) + 1.0), 4e-15);
  const auto h = LieAlgebra::heisenberg3();
  const AlgebraElement w = element(h, "X") + element(h, "Y");
  const Mat M = h.represent(w);
  EXPECT_LT((h.exp_rep(w) - (Mat::Identity(3, 3) + M + 0.5 * M * M)).norm(), 1e-15);
  EXPECT_EQ((h.exp_rep(h.zero()) - Mat::Identity(3, 3)).norm(), 0.0);
}

TEST(ExpRep, RelativeAccuracyForLargeArguments) {
  const auto g = LieAlgebra::sl2C();
  // exp(t H) = diag(e^t, e^-t)
  const AlgebraElement u = 4.0 * element(g, "H");
  const Mat e = g.exp_rep(u);
  EXPECT_LT(std::abs(e(0, 0) - std::exp(4.0)) / std::exp(4.0), 1e-13);
  EXPECT_LT(std::abs(e(1, 1) - std::exp(-4.0)) / std::exp(-4.0), 1e-12);
}

TEST(ExpRep, WithoutRepresentationThrows) {
  const auto g = LieAlgebra("bare", 1, {});
  EXPECT_THROW((void)g.exp_rep(g.zero()), DimensionError);
}

TEST(JacobiDefect, ValidAlgebrasAreExact) {
  for (const char* name : {"abelian(3)", "heisenberg3", "sl2C", "gl(3)"})
    EXPECT_EQ(LieAlgebra::builtin(name).jacobi_defect(), 0.0) << name;
}

TEST(JacobiDefect, CorruptedHeisenbergIsDetected) {
  // [X, Y] gains 0.1 Z without the antisymmetric partner.
  const LieAlgebra g("corrupt", 3,
                     {{0, 1, 2, cplx(1.1)}, {1, 0, 2, cplx(-1.0)}}, std::nullopt, {}, {"X", "Y", "Z"});
  EXPECT_NEAR(g.jacobi_defect(), 0.1, 1e-15);
}

TEST(JacobiDefect, BrokenJacobiIsDetected) {
  // [e0,e1]=e2, [e1,e2]=e0, [e2,e0]=e0 is antisymmetric but not a Lie algebra.
  const LieAlgebra g("broken", 3,
                     {{0, 1, 2, 1.0}, {1, 0, 2, -1.0}, {1, 2, 0, 1.0}, {2, 1, 0, -1.0}, {2, 0, 0, 1.0},
                      {0, 2, 0, -1.0}});
  EXPECT_EQ(g.antisymmetry_defect(), 0.0);
  EXPECT_GT(g.cyclic_jacobi_defect(), 0.5);
}

TEST(Representation, BuiltinsAreHomomorphisms) {
  for (const char* name : {"heisenberg3", "sl2C", "gl(2)", "abelian(2)"}) {
    const auto g = LieAlgebra::builtin(name);
    EXPECT_LT(g.representation_defect(), 1e-14) << name;
  }
}

TEST(Serialization, JsonRoundTrip) {
  for (const char* name : {"heisenberg3", "sl2C"}) {
    const auto g = LieAlgebra::builtin(name);
    const auto h = LieAlgebra::from_json(g.to_json());
    EXPECT_EQ(h.dim(), g.dim());
    EXPECT_EQ(h.nilpotency_order(), g.nilpotency_order());
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j)
        for (int k = 0; k < g.dim(); ++k) EXPECT_EQ(h.structure_constant(i, j, k), g.structure_constant(i, j, k));
    EXPECT_EQ(h.representation_size(), g.representation_size());
  }
}

TEST(Builtin, UnknownNameThrows) { EXPECT_THROW((void)LieAlgebra::builtin("e8"), ParseError); }

TEST(FdDexpOracle, MatchesKnownValues) {
  const auto g = LieAlgebra::heisenberg3();
  const auto v = fd_dexp_oracle(g, element(g, "X"), element(g, "Y"));
  EXPECT_LT((v - (element(g, "Y") - 0.5 * element(g, "Z"))).norm(), 1e-10);
  std::mt19937_64 rng(8);
  const auto s = LieAlgebra::sl2C();
  const auto w = random_element(s, rng);
  EXPECT_LT((fd_dexp_oracle(s, s.zero(), w) - w).norm(), 1e-7);
  for (int t = 0; t < 20; ++t) {
    auto u = random_element(s, rng);
    u /= u.norm();
    const auto x = random_element(s, rng);
    EXPECT_LT((fd_dexp_oracle(s, u, x) - s.dexp_factor(u) * x).norm(), 1e-7);
  }
}

}  // namespace
