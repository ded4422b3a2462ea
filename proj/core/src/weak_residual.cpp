#include "holoframe/weak_residual.hpp"

#include <algorithm>
#include <cmath>

namespace holoframe {

namespace {

struct BumpValue {
  double psi = 0.0;
  std::array<cplx, 2> dzbar{};
};

BumpValue bump(const TestForm& t, const GridDomain& dom, std::size_t p) {
  BumpValue b;
  std::array<cplx, 2> w{};
  double t2 = 0.0;
  for (int j = 0; j < dom.n(); ++j) {
    w[static_cast<std::size_t>(j)] = dom.z(p, j) - t.center[static_cast<std::size_t>(j)];
    t2 += std::norm(w[static_cast<std::size_t>(j)]);
  }
  const double rho2 = t.radius * t.radius;
  t2 /= rho2;
  if (t2 >= 1.0) return b;
  const double s = 1.0 - t2;
  b.psi = std::exp(1.0 - 1.0 / s);
  for (int j = 0; j < dom.n(); ++j)
    b.dzbar[static_cast<std::size_t>(j)] = -b.psi * w[static_cast<std::size_t>(j)] / (rho2 * s * s);
  return b;
}

}  // namespace

std::vector<TestForm> default_test_family(const GridDomain& domain, int algebra_dim) {
  const double r = domain.radius();
  const double h = domain.spacing();
  const double d = r / 4.0;
  const double rho = std::min(r / 2.0, r - 2.0 * h - d);
  if (rho < 2.0 * h) throw DomainError("grid too coarse for the default test family");
  const std::array<cplx, 2> z1{cplx(d, 0.0), cplx(-d, 0.0)};
  const std::array<cplx, 4> z2{cplx(d, 0.0), cplx(-d, 0.0), cplx(0.0, d), cplx(0.0, -d)};
  std::vector<TestForm> out;
  for (const cplx a : z1)
    for (const cplx b : z2)
      for (int k = 0; k < algebra_dim; ++k) {
        TestForm t;
        t.center = {a, domain.n() == 2 ? b : cplx{}};
        t.radius = rho;
        t.dual = AlgebraElement::Unit(algebra_dim, k);
        out.push_back(t);
      }
  return out;
}

WeakResidualReport weak_obstruction_residual(const GForm& alpha, const std::vector<TestForm>& tests) {
  if (alpha.degree() != 1) throw DimensionError("weak residual: needs a (0,1)-form");
  if (tests.empty()) throw DimensionError("weak residual: empty test family");
  WeakResidualReport rep;
  rep.per_test.assign(tests.size(), 0.0);
  const GridDomain& dom = alpha.domain();
  if (dom.n() == 1) return rep;
  const LieAlgebra& g = alpha.algebra();
  const int d = alpha.dim();
  AlgebraElement br(d);
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const TestForm& tf = tests[t];
    if (tf.dual.size() != d) throw DimensionError("weak residual: dual vector dimension");
    if (tf.dual.isZero(0.0)) continue;
    double mass = 0.0;
    cplx acc{};
    for (std::size_t p = 0; p < dom.size(); ++p) {
      const BumpValue b = bump(tf, dom, p);
      if (b.psi == 0.0) continue;
      if (!dom.interior(p)) throw DomainError("test form support leaves the interior");
      mass += b.psi;
      const auto a1 = alpha.value(0, p);
      const auto a2 = alpha.value(1, p);
      br.setZero();
      g.bracket_accumulate(alpha.at(0, p), alpha.at(1, p), 1.0, br.data());
      for (int k = 0; k < d; ++k)
        acc += tf.dual[k] * (a1[k] * b.dzbar[1] - a2[k] * b.dzbar[0] + br[k] * b.psi);
    }
    if (mass == 0.0) throw DomainError("test form support contains no nodes");
    // Unit discrete mass: the h^{2n} weights cancel.
    rep.per_test[t] = std::abs(acc / mass);
  }
  const auto it = std::max_element(rep.per_test.begin(), rep.per_test.end());
  rep.worst_test = static_cast<std::size_t>(it - rep.per_test.begin());
  rep.residual = *it;
  return rep;
}

double weak_obstruction_residual(const GForm& alpha) {
  if (alpha.domain().n() == 1) return 0.0;
  return weak_obstruction_residual(alpha, default_test_family(alpha.domain(), alpha.dim())).residual;
}

double integrability_gate(const GForm& alpha) {
  const double h = alpha.domain().spacing();
  return 10.0 * h * h * alpha.sup_norm();
}

}  // namespace holoframe
