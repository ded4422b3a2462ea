#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "holoframe/polynomial.hpp"

namespace holoframe {

/// Random algebra-valued polynomial: `terms` distinct monomials of total
/// degree <= `degree` in the variables of C^n with complex Gaussian
/// coefficient vectors, rescaled so the coefficient norms sum to `bound`.
/// The sup over the closed unit polydisc is then at most `bound`.
AlgebraPolynomial random_polynomial(const LieAlgebra& g, int n, int degree, int terms, double bound,
                                    std::mt19937_64& rng);
PolynomialForm random_polynomial_form(const LieAlgebra& g, int n, int q, int degree, int terms,
                                      double bound, std::mt19937_64& rng);

struct IdentityDefect {
  std::string identity;
  std::string algebra;
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass() const { return defect <= tolerance; }
};

nlohmann::json to_json(const std::vector<IdentityDefect>& rows);
/// Fixed-width table, one row per identity.
std::string format_table(const std::vector<IdentityDefect>& rows);

struct IdentitySuiteOptions {
  double radius = 1.0;
  double spacing = 1.0 / 32.0;
  std::uint64_t seed = 0;
  int degree = 3;
  int terms = 6;
  /// Sup bound of each random input component on the unit polydisc.
  double input_bound = 0.5;
  double tolerance = 1e-3;
  double abelian_tolerance = 1e-12;
  /// Lattice columns (along Re z1) owned by one slab; the polydisc is
  /// processed slab by slab with `halo` extra columns on each side.
  int slab_columns = 12;
  int halo = 2;
};

/// Gauge-calculus identities on C^2 for random polynomial alpha, b (0,1)-forms
/// and u:
///   sum_rule     obstruction(alpha+b) vs obstruction(alpha) + dbar b + [alpha^b] + 1/2[b^b]   (all nodes)
///   gauge_covariance obstruction(gauge(alpha,u)) vs Ad_exp(-u) obstruction(alpha)           (double interior)
///   kj           kj_identity_defect(alpha, u)                                                  (double interior)
///   rep_curvature dbar rho(alpha) + rho(alpha)^rho(alpha) vs rho(obstruction(alpha))          (all nodes; needs a representation)
/// Abelian algebras use abelian_tolerance.
/// Each slab is evaluated in fused node passes; no intermediate forms are
/// materialized.
std::vector<IdentityDefect> run_identity_suite(const LieAlgebra& g, const IdentitySuiteOptions& opts);

/// The same defects composed from obstruction, gauge_transform,
/// kj_identity_defect and rep_curvature on each slab. Slower and heavier;
/// kept as a cross-check for the fused evaluation.
std::vector<IdentityDefect> run_identity_suite_reference(const LieAlgebra& g,
                                                         const IdentitySuiteOptions& opts);

/// max over doubly-interior nodes of |dbar dbar u| for `samples` random
/// (0,0)-forms on a polydisc of the given size. Each form samples a random
/// polynomial of degree <= 3 with sup <= 1 on the unit polydisc.
double dbar_dbar_defect(const LieAlgebra& g, double radius, double spacing, int samples,
                        std::uint64_t seed);

}  // namespace holoframe
