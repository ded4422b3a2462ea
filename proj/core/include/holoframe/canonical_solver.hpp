#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "holoframe/cgls.hpp"
#include "holoframe/holder.hpp"

namespace holoframe {

enum class SolverMode { cauchy, least_squares };
enum class Normalization { mean_zero, minimal_norm };

SolverMode parse_solver_mode(const std::string& s);
Normalization parse_normalization(const std::string& s);
std::string to_string(SolverMode m);
std::string to_string(Normalization n);

/// Right inverse of the discrete dbar. Equations are posed on interior
/// nodes (centered stencils); boundary-ring values of dbar u are not
/// constrained.
///
/// cauchy (n = 1): Cauchy transform, then a CGLS correction so the discrete
/// equations hold to cg_tolerance, then mean-zero normalization.
/// least_squares: CGLS from zero, i.e. the minimal-norm solution, the
/// discrete counterpart of dbar^* N.
struct CanonicalSolver {
  SolverMode mode = SolverMode::least_squares;
  Normalization normalization = Normalization::minimal_norm;
  double cg_tolerance = 1e-10;
  int cg_max_iters = 0;  ///< 0: 10 * sqrt(unknown count)

  /// Defaults for a domain: cauchy + mean_zero for n = 1, otherwise
  /// least_squares + minimal_norm.
  static CanonicalSolver for_dimension(int n);
  void validate(int n) const;
};

struct DbarSolveResult {
  explicit DbarSolveResult(GForm solution) : u(std::move(solution)) {}

  GForm u;
  double residual_sup = 0.0;  ///< sup over interior nodes of |dbar u - lambda|
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

/// Detailed solve; never throws on non-convergence.
DbarSolveResult dbar_solve_detailed(const CanonicalSolver& S, const GForm& lambda);
/// Throws ConvergenceError if the normal equations do not converge.
GForm dbar_solve(const CanonicalSolver& S, const GForm& lambda);

/// Minimal-norm v with dbar v = g on interior rows, for a (0,2)-form g.
DbarSolveResult dbar_solve_two(const CanonicalSolver& S, const GForm& g);

/// lambda + 1/2 (dbar^* N) [lambda ^ lambda]; n = 2.
GForm kmap(const CanonicalSolver& S, const GForm& lambda);

struct InteriorEstimate {
  double K_norm = 0.0;  ///< ||dbar u||_{C^kappa}
  double V_norm = 0.0;  ///< C^{kappa+1}-type norm of u on V
  double ratio = 0.0;   ///< V_norm / K_norm; NaN when both vanish
  bool undefined = false;
  HolderReport K_report;
  HolderReport V_report;

  nlohmann::json to_json() const;
};

/// K_norm = holder_norm(dbar u, kappa) over interior nodes; V_norm =
/// holder_norm(u, kappa + 1) over the subdomain V.
InteriorEstimate interior_estimate_report(const GForm& u, const GForm& lambda,
                                          const HolderSpec& spec, const HolderOptions& opts = {});

/// sup over interior nodes of |dbar u - lambda|.
double interior_residual(const GForm& u, const GForm& lambda);

}  // namespace holoframe
