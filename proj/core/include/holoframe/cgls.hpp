#pragma once

#include <functional>
#include <vector>

#include "holoframe/types.hpp"

namespace holoframe {

/// y = A x and x = A^H y on flat complex vectors.
using LinearMap = std::function<void(const Vec& in, Vec& out)>;

struct CglsOptions {
  double tolerance = 1e-10;  ///< relative, see CglsResult::converged
  int max_iterations = 1000;
};

struct CglsResult {
  Vec x;
  int iterations = 0;
  double residual = 0.0;         ///< ||b - A x|| / ||b||
  double normal_residual = 0.0;  ///< ||A^H (b - A x)|| / ||A^H b||
  /// Either relative residual reached the tolerance.
  bool converged = false;
  std::vector<double> history;   ///< relative residual per iteration
};

/// Conjugate gradients on the normal equations (CGLS) for min ||A x - b||,
/// started from x0. From x0 = 0 the iterates stay in range(A^H), so the
/// limit is the minimal-norm least-squares solution.
CglsResult cgls(const LinearMap& apply, const LinearMap& apply_adjoint, const Vec& b,
                const Vec& x0, std::size_t unknowns, const CglsOptions& opts);

}  // namespace holoframe
