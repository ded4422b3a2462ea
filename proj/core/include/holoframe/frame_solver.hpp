#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holoframe/canonical_solver.hpp"
#include "holoframe/form_ops.hpp"

namespace holoframe {

enum class SolveStatus { converged, rescaled_converged, failed_nonintegrable, failed_budget };
std::string to_string(SolveStatus s);

struct SolverConfig {
  double newton_tolerance = 1e-9;
  int max_newton_iters = 12;
  int dexp_truncation = 20;
  double series_tolerance = 1e-15;
  std::vector<double> epsilon_schedule{1.0, 0.5, 0.25, 0.125, 0.0625};
  HolderSpec kappa = HolderSpec::from_kappa(0.5);
  double accept_ratio_window = 0.1;
  /// Run the weak-obstruction gate for n = 2.
  bool check_integrability = true;
  /// Seed for sampled Hoelder pairs.
  std::uint64_t seed = 0;

  SeriesOptions series() const { return {dexp_truncation, series_tolerance}; }
  /// Throws DomainError on an invalid schedule or tolerances.
  void validate() const;
};

struct SolveResult {
  explicit SolveResult(GForm solution) : u(std::move(solution)) {}

  GForm u;
  std::vector<double> residual_history;
  double epsilon_used = 1.0;
  int iterations = 0;
  double K_norm = 0.0;
  double ratio = 0.0;
  SolveStatus status = SolveStatus::failed_budget;
  double weak_residual = 0.0;
  double gate = 0.0;
  std::string message;

  bool ok() const {
    return status == SolveStatus::converged || status == SolveStatus::rescaled_converged;
  }
  nlohmann::json to_json() const;
};

/// Frozen-differential Newton: u <- u - dbar_solve(mc_pullback(u) - lambda)
/// from u = 0, with residuals measured as sup over interior nodes.
SolveResult newton_frame_solve(const GForm& lambda, const CanonicalSolver& S,
                               const SolverConfig& cfg);

/// Newton on K(mc_pullback(u)) = K(lambda) with the same frozen inverse;
/// n = 2 only.
SolveResult kmap_newton_solve(const GForm& lambda, const CanonicalSolver& S,
                              const SolverConfig& cfg);

using SolverFactory = std::function<CanonicalSolver(const GridDomain&)>;

/// Walks the epsilon schedule, solving for rescale(alpha, eps). On success
/// at eps < 1 the solution lives on domain.scaled(eps): node i there sits
/// at eps times node i of the input grid and carries u_eps at node i.
SolveResult rescaled_solve(const GForm& alpha, const SolverFactory& factory,
                           const SolverConfig& cfg);

struct FrameReport {
  double residual_strong = 0.0;  ///< sup_interior |mc_pullback(u) - lambda|
  std::optional<double> residual_matrix;  ///< sup_interior |sigma^{-1} dbar sigma - rho(lambda)|
  double gauge_check = 0.0;      ///< n = 2: obstruction of the gauged form; n = 1: its sup
  double gauged_form_sup = 0.0;  ///< sup_interior |gauge_transform(lambda, -u)|
  std::optional<MatrixField> frame;

  nlohmann::json to_json() const;
};

FrameReport frame_and_verify(const GForm& u, const GForm& lambda, const SeriesOptions& opts = {},
                             bool keep_frame = false);

struct RatioPoint {
  double t = 0.0;
  double ratio = 1.0;
  SolveStatus status = SolveStatus::converged;
  int iterations = 0;
  double K_norm = 0.0;
  double lambda_norm = 0.0;
};

/// For each t: solve for t*lambda and record ||dbar u_t||_{C^kappa} / ||t lambda||_{C^kappa},
/// both over interior nodes with the same pair sample. t = 0 is reported as
/// ratio 1 without solving.
std::vector<RatioPoint> ratio_study(const GForm& lambda, const CanonicalSolver& S,
                                    const SolverConfig& cfg, const std::vector<double>& scales);

}  // namespace holoframe
