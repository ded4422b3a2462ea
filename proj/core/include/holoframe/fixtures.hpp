#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holoframe/polynomial.hpp"

namespace holoframe {

/// A named closed-form test case: an algebra, a domain radius, and either a
/// potential u (lambda = l(exp u) is derived symbolically) or a form alpha.
struct ManufacturedCase {
  std::string name;
  std::string algebra;  ///< built-in algebra name
  int n = 1;
  double radius = 1.0;
  std::string u_expression;       ///< empty when the case is a bare form
  std::string alpha_expression;   ///< used when u_expression is empty
  bool integrable = true;
  std::string provenance;
};

const std::vector<ManufacturedCase>& fixture_registry();
/// Throws ParseError for unknown names.
const ManufacturedCase& find_fixture(const std::string& name);

/// Symbolic u and lambda for a case on a given algebra.
struct ClosedForms {
  std::optional<AlgebraPolynomial> u;
  PolynomialForm lambda;
};
/// lambda = dbar u for abelian algebras, dbar u - 1/2 [u, dbar u] for
/// algebras with ad^2 = 0; DimensionError otherwise.
ClosedForms closed_forms(const ManufacturedCase& c, const LieAlgebra& g);

/// Sampled pair (u, lambda) on a domain; u is absent for bare-form cases.
struct SampledCase {
  AlgebraPtr algebra;
  DomainPtr domain;
  std::optional<GForm> u;
  GForm lambda;
};

SampledCase manufactured_lambda(const ManufacturedCase& c, DomainPtr domain);
/// Convenience: builds the algebra and the domain (radius from the case).
SampledCase manufactured_lambda(const ManufacturedCase& c, double spacing,
                                double subdomain_fraction = 0.5);

}  // namespace holoframe
