#pragma once

#include "holoframe/form_ops.hpp"

namespace holoframe {

/// exp(u)^{-1} (exp(u+sv) - exp(u-sv)) / 2s in basis coordinates; a
/// finite-difference approximation of D(ad_u) v. Needs a representation.
AlgebraElement fd_dexp_oracle(const LieAlgebra& g, const AlgebraElement& u,
                              const AlgebraElement& v, double step = 1e-4);

/// Pointwise exp(rho(u)) for a (0,0)-form.
MatrixField exp_rep_field(const GForm& u);

/// sigma^{-1} dbar sigma per dzbar component, for a one-component field of
/// invertible matrices. Throws DomainError at a singular node.
MatrixField matrix_mc(const MatrixField& sigma);

}  // namespace holoframe
