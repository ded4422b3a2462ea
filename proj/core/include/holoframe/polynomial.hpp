#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "holoframe/gform.hpp"

namespace holoframe {

/// Exponents of (z1, zbar1, z2, zbar2).
using Exponents = std::array<int, 4>;

/// Variable slots in Exponents.
inline constexpr int kZ1 = 0;
inline constexpr int kZbar1 = 1;
inline constexpr int kZ2 = 2;
inline constexpr int kZbar2 = 3;

/// Polynomial in z_j and zbar_j with coefficients in T, where T is cplx or an
/// algebra element. Terms with zero coefficient are dropped on construction.
template <class T>
class Polynomial {
 public:
  using Terms = std::map<Exponents, T>;

  Polynomial() = default;
  explicit Polynomial(Terms terms) : terms_(std::move(terms)) { prune(); }
  static Polynomial constant(const T& c) { return Polynomial(Terms{{Exponents{}, c}}); }
  static Polynomial monomial(const Exponents& e, const T& c) { return Polynomial(Terms{{e, c}}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    prune();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    prune();
    return *this;
  }
  Polynomial& operator*=(cplx s) {
    for (auto& [e, c] : terms_) c = c * s;
    prune();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  Polynomial operator-() const { return cplx(-1.0) * *this; }

  /// d/d(var) treating the four variables as independent (Wirtinger calculus).
  Polynomial derivative(int var) const {
    Terms out;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      f[var] -= 1;
      out.emplace(f, c * cplx(static_cast<double>(e[var])));
    }
    return Polynomial(std::move(out));
  }
  /// d/dzbar_j, j in {0, 1}.
  Polynomial dzbar(int j) const { return derivative(j == 0 ? kZbar1 : kZbar2); }

  /// Evaluate at (z1, z2); zbar_j is the conjugate of z_j.
  T evaluate(cplx z1, cplx z2, const T& zero) const {
    T acc = zero;
    const std::array<cplx, 4> base{z1, std::conj(z1), z2, std::conj(z2)};
    for (const auto& [e, c] : terms_) {
      cplx m = 1.0;
      for (int v = 0; v < 4; ++v)
        for (int k = 0; k < e[v]; ++k) m *= base[static_cast<std::size_t>(v)];
      acc = acc + c * m;
    }
    return acc;
  }

 private:
  void add_term(const Exponents& e, const T& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
    }
  }
  void prune();

  Terms terms_;
};

using ScalarPolynomial = Polynomial<cplx>;
using AlgebraPolynomial = Polynomial<AlgebraElement>;

template <>
inline void Polynomial<cplx>::prune() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == cplx{}; });
}
template <>
inline void Polynomial<AlgebraElement>::prune() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.isZero(0.0); });
}

ScalarPolynomial operator*(const ScalarPolynomial& a, const ScalarPolynomial& b);
AlgebraPolynomial operator*(const ScalarPolynomial& a, const AlgebraPolynomial& b);
/// Pointwise bracket of two algebra-valued polynomials.
AlgebraPolynomial bracket(const LieAlgebra& g, const AlgebraPolynomial& a,
                          const AlgebraPolynomial& b);

/// Closed-form (0,q)-form: one algebra-valued polynomial per component.
struct PolynomialForm {
  int degree = 0;
  std::vector<AlgebraPolynomial> components;
};

/// Samples a closed-form (0,q)-form on a domain.
GForm sample_polynomial_form(DomainPtr domain, AlgebraPtr algebra, const PolynomialForm& form);

/// Symbolic dbar of a (0,0)- or (0,1)-form (same conventions as the grid dbar).
PolynomialForm dbar(const PolynomialForm& f, int n);
/// Symbolic D(ad_u) dbar(u) for algebras with ad^2 = 0 (exact truncation
/// dbar u - 1/2 [u, dbar u]). Throws for other algebras.
PolynomialForm mc_pullback_step2(const LieAlgebra& g, const AlgebraPolynomial& u, int n);
/// Symbolic dbar(alpha) + 1/2 [alpha ^ alpha] for n = 2.
PolynomialForm obstruction(const LieAlgebra& g, const PolynomialForm& alpha);

std::string to_string(const LieAlgebra& g, const AlgebraPolynomial& p);

}  // namespace holoframe
