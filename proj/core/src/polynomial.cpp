#include "holoframe/polynomial.hpp"

#include <sstream>

namespace holoframe {

namespace {

Exponents add(const Exponents& a, const Exponents& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

}  // namespace

ScalarPolynomial operator*(const ScalarPolynomial& a, const ScalarPolynomial& b) {
  ScalarPolynomial out;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) out += ScalarPolynomial::monomial(add(ea, eb), ca * cb);
  return out;
}

AlgebraPolynomial operator*(const ScalarPolynomial& a, const AlgebraPolynomial& b) {
  AlgebraPolynomial out;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms())
      out += AlgebraPolynomial::monomial(add(ea, eb), AlgebraElement(ca * cb));
  return out;
}

AlgebraPolynomial bracket(const LieAlgebra& g, const AlgebraPolynomial& a,
                          const AlgebraPolynomial& b) {
  AlgebraPolynomial out;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      if (ca.size() != g.dim() || cb.size() != g.dim())
        throw DimensionError("polynomial coefficient has wrong dimension");
      out += AlgebraPolynomial::monomial(add(ea, eb), g.bracket(ca, cb));
    }
  return out;
}

GForm sample_polynomial_form(DomainPtr domain, AlgebraPtr algebra, const PolynomialForm& form) {
  GForm out(domain, algebra, form.degree);
  if (static_cast<int>(form.components.size()) != out.components())
    throw DimensionError("closed-form component count does not match the form degree");
  const int n = domain->n();
  const int d = algebra->dim();
  for (int c = 0; c < out.components(); ++c) {
    const auto& poly = form.components[static_cast<std::size_t>(c)];
    std::vector<Exponents> exps;
    std::vector<AlgebraElement> coeffs;
    int top = 0;
    for (const auto& [e, coeff] : poly.terms()) {
      if (coeff.size() != d) throw DimensionError("coefficient dimension mismatch");
      if (n == 1 && (e[kZ2] || e[kZbar2]))
        throw DimensionError("expression uses z2 on a one-dimensional domain");
      exps.push_back(e);
      coeffs.push_back(coeff);
      for (int v : e) top = std::max(top, v);
    }
    std::vector<cplx> powers(static_cast<std::size_t>(4 * (top + 1)));
    for (std::size_t p = 0; p < out.nodes(); ++p) {
      const cplx z1 = domain->z(p, 0);
      const cplx z2 = n == 2 ? domain->z(p, 1) : cplx{};
      const std::array<cplx, 4> base{z1, std::conj(z1), z2, std::conj(z2)};
      for (int v = 0; v < 4; ++v) {
        cplx acc = 1.0;
        for (int k = 0; k <= top; ++k) {
          powers[static_cast<std::size_t>(v * (top + 1) + k)] = acc;
          acc *= base[static_cast<std::size_t>(v)];
        }
      }
      cplx* o = out.at(c, p);
      for (std::size_t t = 0; t < exps.size(); ++t) {
        cplx m = 1.0;
        for (int v = 0; v < 4; ++v) m *= powers[static_cast<std::size_t>(v * (top + 1) + exps[t][v])];
        for (int k = 0; k < d; ++k) o[k] += m * coeffs[t][k];
      }
    }
  }
  return out;
}

PolynomialForm dbar(const PolynomialForm& f, int n) {
  PolynomialForm out;
  out.degree = f.degree + 1;
  if (f.degree == 0) {
    for (int j = 0; j < n; ++j) out.components.push_back(f.components.at(0).dzbar(j));
  } else if (f.degree == 1 && n == 2) {
    out.components.push_back(f.components.at(1).dzbar(0) - f.components.at(0).dzbar(1));
  } else {
    throw DimensionError("symbolic dbar: degree too high");
  }
  return out;
}

PolynomialForm mc_pullback_step2(const LieAlgebra& g, const AlgebraPolynomial& u, int n) {
  if (!g.nilpotency_order() || *g.nilpotency_order() > 2)
    throw DimensionError("closed-form pullback needs an algebra with ad^2 = 0");
  PolynomialForm out;
  out.degree = 1;
  for (int j = 0; j < n; ++j) {
    const AlgebraPolynomial du = u.dzbar(j);
    AlgebraPolynomial c = bracket(g, u, du);
    c *= -0.5;
    out.components.push_back(du + c);
  }
  return out;
}

PolynomialForm obstruction(const LieAlgebra& g, const PolynomialForm& alpha) {
  if (alpha.degree != 1 || alpha.components.size() != 2)
    throw DimensionError("symbolic obstruction needs a (0,1)-form on n = 2");
  PolynomialForm f = dbar(alpha, 2);
  f.components[0] += bracket(g, alpha.components[0], alpha.components[1]);
  return f;
}

std::string to_string(const LieAlgebra& g, const AlgebraPolynomial& p) {
  static const char* vars[4] = {"z1", "zbar1", "z2", "zbar2"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    for (int k = 0; k < c.size(); ++k) {
      if (c[k] == cplx{}) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c[k].real() << (c[k].imag() < 0 ? "-" : "+") << std::abs(c[k].imag()) << "*i)";
      for (int v = 0; v < 4; ++v) {
        if (e[v] == 0) continue;
        os << "*" << vars[v];
        if (e[v] > 1) os << "^" << e[v];
      }
      os << "*" << g.basis_names()[static_cast<std::size_t>(k)];
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace holoframe
