#pragma once

#include <memory>
#include <random>
#include <string>

#include "holoframe/expression.hpp"
#include "holoframe/gform.hpp"
#include "holoframe/grid_domain.hpp"
#include "holoframe/lie_algebra.hpp"
#include "holoframe/polynomial.hpp"

namespace holoframe::testing {

inline AlgebraPtr algebra(const std::string& name) {
  return std::make_shared<const LieAlgebra>(LieAlgebra::builtin(name));
}

inline DomainPtr disc(double h, double r = 1.0) { return std::make_shared<const GridDomain>(1, r, h); }
inline DomainPtr polydisc(double h, double r = 1.0) { return std::make_shared<const GridDomain>(2, r, h); }

/// Samples a closed-form expression as a (0,q)-form; for q = 2 the text is
/// the dzbar1^dzbar2 coefficient.
inline GForm sample(const DomainPtr& dom, const AlgebraPtr& g, const std::string& text, int q) {
  if (q == 2) return sample_polynomial_form(dom, g, PolynomialForm{2, {parse_algebra_polynomial(text, *g, 2)}});
  return sample_polynomial_form(dom, g, parse_form(text, *g, dom->n(), q));
}

inline AlgebraElement random_element(const LieAlgebra& g, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  AlgebraElement v(g.dim());
  for (int k = 0; k < g.dim(); ++k) v[k] = cplx(gauss(rng), gauss(rng));
  return v;
}

inline AlgebraElement element(const LieAlgebra& g, const std::string& name) {
  return g.basis(*g.basis_index(name));
}

}  // namespace holoframe::testing
