#include "holoframe/fixtures.hpp"

#include "holoframe/expression.hpp"

namespace holoframe {

const std::vector<ManufacturedCase>& fixture_registry() {
  static const std::vector<ManufacturedCase> cases{
      {"abelian_1d", "abelian(1)", 1, 1.0, "zbar^2/2", "", true,
       "u = zbar^2/2, lambda = zbar dzbar"},
      {"heisenberg_step2_1d", "heisenberg3", 1, 1.0, "zbar*X + zbar^2*Y", "", true,
       "lambda = dbar u - 1/2 [u, dbar u] = (X + 2 zbar Y - 1/2 zbar^2 Z) dzbar"},
      {"heisenberg_step2_2d", "heisenberg3", 2, 0.25, "zbar1*X + zbar2*Y", "", true,
       "lambda = (X + 1/2 zbar2 Z) dzbar1 + (Y - 1/2 zbar1 Z) dzbar2, obstruction 0"},
      {"abelian_2d", "abelian(1)", 2, 0.25, "zbar1*zbar2", "", true,
       "u = zbar1 zbar2, lambda = zbar2 dzbar1 + zbar1 dzbar2"},
      {"nonintegrable_2d", "heisenberg3", 2, 0.375, "", "zbar2*X*dzbar1", false,
       "obstruction = -X dzbar1^dzbar2"},
      {"sl2c_large_1d", "sl2C", 1, 1.0, "", "(3*H + 3*E - 2*F)*zbar*dzbar", true,
       "large-amplitude form, needs rescaling"},
  };
  return cases;
}

const ManufacturedCase& find_fixture(const std::string& name) {
  for (const auto& c : fixture_registry())
    if (c.name == name) return c;
  throw ParseError("unknown fixture '" + name + "'");
}

ClosedForms closed_forms(const ManufacturedCase& c, const LieAlgebra& g) {
  ClosedForms out;
  if (c.u_expression.empty()) {
    out.lambda = parse_form(c.alpha_expression, g, c.n, 1);
    return out;
  }
  out.u = parse_algebra_polynomial(c.u_expression, g, c.n);
  if (g.nonzero_constants().empty()) {
    PolynomialForm u0{0, {*out.u}};
    out.lambda = dbar(u0, c.n);
  } else {
    out.lambda = mc_pullback_step2(g, *out.u, c.n);
  }
  return out;
}

SampledCase manufactured_lambda(const ManufacturedCase& c, DomainPtr domain) {
  if (domain->n() != c.n) throw DimensionError("fixture dimension does not match the domain");
  auto g = std::make_shared<const LieAlgebra>(LieAlgebra::builtin(c.algebra));
  const ClosedForms cf = closed_forms(c, *g);
  std::optional<GForm> u;
  if (cf.u) u = sample_polynomial_form(domain, g, PolynomialForm{0, {*cf.u}});
  GForm lambda = sample_polynomial_form(domain, g, cf.lambda);
  return SampledCase{g, domain, std::move(u), std::move(lambda)};
}

SampledCase manufactured_lambda(const ManufacturedCase& c, double spacing,
                                double subdomain_fraction) {
  auto dom = std::make_shared<const GridDomain>(c.n, c.radius, spacing, subdomain_fraction);
  return manufactured_lambda(c, dom);
}

}  // namespace holoframe
