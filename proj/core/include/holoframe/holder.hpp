#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "holoframe/gform.hpp"

namespace holoframe {

/// Hoelder exponent kappa = k + nu, kappa not an integer.
struct HolderSpec {
  double kappa = 0.5;
  int k = 0;
  double nu = 0.5;

  /// Throws DomainError for integer or non-positive kappa and for k > 2.
  static HolderSpec from_kappa(double kappa);
};

struct HolderOptions {
  /// Nodes over which sups and pairs range; empty means all nodes.
  std::vector<std::uint8_t> mask;
  bool force_exhaustive = false;
  std::size_t exhaustive_limit = 4096;
  std::size_t sampled_pairs = 1'000'000;
  std::uint64_t seed = 0;
};

struct HolderReport {
  double kappa = 0.0;
  int k = 0;
  double nu = 0.0;
  double value = 0.0;
  std::vector<double> sup_terms;  ///< sup norm of derivatives of order 0..k
  double seminorm = 0.0;          ///< nu-Hoelder seminorm of order-k derivatives
  std::uint64_t pair_count = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;

  nlohmann::json to_json() const;
};

/// Discrete C^kappa norm: value = max(sup_terms, seminorm). Derivatives are
/// real partials by the domain's difference stencils (all multi-indices of
/// each order); pointwise norms are Euclidean over stacked coefficients.
/// Pairs: all pairs when the masked node count is at most exhaustive_limit
/// or when forced; otherwise nearest-neighbour pairs plus sampled_pairs
/// random pairs stratified by distance decade (seeded, deterministic).
HolderReport holder_norm(const GForm& f, const HolderSpec& spec, const HolderOptions& opts = {});

/// Pullback by z -> eps z on the same grid: value eps^q alpha(eps z), by
/// tensor-cubic Lagrange interpolation (tensor-linear where the cubic
/// stencil leaves the grid). eps in (0, 1].
GForm rescale(const GForm& alpha, double eps);

/// eps * ||alpha restricted to the ball of radius eps r|| - ||rescale(alpha, eps)||.
double scaling_margin(const GForm& alpha, double eps, const HolderSpec& spec,
                      const HolderOptions& opts = {});

/// Real partial derivative along direction a of every component.
GForm real_partial(const GForm& f, int a);

}  // namespace holoframe
