#pragma once

#include <array>
#include <vector>

#include "holoframe/gform.hpp"

namespace holoframe {

enum class BumpProfile { exponential };

/// Compactly supported test form psi(z) phi* with psi a radial bump on C^n,
/// psi = exp(1 - 1/(1 - t^2)) for t = |z - c| / radius < 1, scaled to unit
/// discrete mass. The (n, n-2) volume part is carried by the quadrature.
struct TestForm {
  std::array<cplx, 2> center{};
  double radius = 0.0;
  BumpProfile profile = BumpProfile::exponential;
  AlgebraElement dual;  ///< coordinates of phi* in the dual basis
};

/// 8 centers (z1 in {+-d}, z2 in {+-d, +-id}, d = r/4) with radius
/// min(r/2, r - 2h - d), each paired with every dual basis vector.
std::vector<TestForm> default_test_family(const GridDomain& domain, int algebra_dim);

struct WeakResidualReport {
  double residual = 0.0;       ///< max over tests
  std::size_t worst_test = 0;
  std::vector<double> per_test;
};

/// max over tests of | int <phi*, alpha_1 d psi/dzbar_2 - alpha_2 d psi/dzbar_1>
///                    + int <phi*, [alpha_1, alpha_2]> psi |
/// i.e. the obstruction paired with psi phi* after integration by parts.
/// The derivative of psi is analytic. Zero for n = 1. Throws DomainError if
/// a test's support leaves the interior, DimensionError on an empty list.
WeakResidualReport weak_obstruction_residual(const GForm& alpha, const std::vector<TestForm>& tests);
double weak_obstruction_residual(const GForm& alpha);

/// 10 h^2 sup|alpha|: residuals below this count as integrable.
double integrability_gate(const GForm& alpha);

}  // namespace holoframe
