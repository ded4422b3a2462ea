#pragma once

#include <string_view>

#include "holoframe/polynomial.hpp"

namespace holoframe {

/// Parses a closed-form (0,q)-form over `algebra` on C^n.
///
/// Grammar (whitespace ignored):
///   expr    := term (('+' | '-') term)*
///   term    := power (('*' | '/') power)*
///   power   := unary ('^' integer)?
///   unary   := '-' unary | '+' unary | primary
///   primary := number | 'i' | variable | basis name | 'dzbar1' | 'dzbar2' | '(' expr ')'
/// Variables are z1, zbar1, z2, zbar2; for n = 1 also z and zbar. Basis
/// names come from the algebra (X, Y, Z for heisenberg3; H, E, F for sl2C;
/// e1..ed otherwise). A one-dimensional algebra accepts plain scalars.
///
/// A (0,1)-form is written either with differentials ("zbar2*X*dzbar1") or
/// as n components separated by ';'. Division is by constants only.
PolynomialForm parse_form(std::string_view text, const LieAlgebra& algebra, int n, int degree);

/// Single algebra-valued polynomial (a (0,0)-form).
AlgebraPolynomial parse_algebra_polynomial(std::string_view text, const LieAlgebra& algebra, int n);

}  // namespace holoframe
