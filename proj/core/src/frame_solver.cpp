#include "holoframe/frame_solver.hpp"

#include <cmath>
#include <limits>

#include "holoframe/oracle.hpp"
#include "holoframe/weak_residual.hpp"

namespace holoframe {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::rescaled_converged:
      return "rescaled_converged";
    case SolveStatus::failed_nonintegrable:
      return "failed_nonintegrable";
    case SolveStatus::failed_budget:
      return "failed_budget";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(newton_tolerance > 0.0)) throw DomainError("newton_tolerance must be positive");
  if (max_newton_iters < 0) throw DomainError("max_newton_iters must be non-negative");
  if (dexp_truncation < 0) throw DomainError("dexp_truncation must be non-negative");
  if (epsilon_schedule.empty()) throw DomainError("epsilon_schedule is empty");
  for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
    const double e = epsilon_schedule[i];
    if (!(e > 0.0) || e > 1.0) throw DomainError("epsilon_schedule entries must lie in (0, 1]");
    if (i > 0 && !(e < epsilon_schedule[i - 1]))
      throw DomainError("epsilon_schedule must be strictly decreasing");
  }
}

nlohmann::json SolveResult::to_json() const {
  return nlohmann::json{{"status", to_string(status)},
                        {"epsilon_used", epsilon_used},
                        {"iterations", iterations},
                        {"residual_history", residual_history},
                        {"final_residual", residual_history.empty() ? 0.0 : residual_history.back()},
                        {"K_norm", K_norm},
                        {"ratio", ratio},
                        {"weak_residual", weak_residual},
                        {"gate", gate},
                        {"message", message}};
}

namespace {

HolderOptions interior_options(const GridDomain& dom, std::uint64_t seed) {
  HolderOptions o;
  o.mask = dom.interior_mask();
  o.seed = seed;
  return o;
}

void fill_norms(SolveResult& res, const GForm& lambda, const SolverConfig& cfg) {
  const HolderOptions o = interior_options(lambda.domain(), cfg.seed);
  res.K_norm = holder_norm(dbar(res.u), cfg.kappa, o).value;
  const double ln = holder_norm(lambda, cfg.kappa, o).value;
  res.ratio = ln == 0.0 ? 1.0 : res.K_norm / ln;
}

bool integrability_gate_fails(SolveResult& res, const GForm& lambda, const SolverConfig& cfg) {
  if (lambda.domain().n() != 2 || !cfg.check_integrability) return false;
  res.weak_residual = weak_obstruction_residual(lambda);
  res.gate = integrability_gate(lambda);
  if (res.weak_residual > res.gate) {
    res.status = SolveStatus::failed_nonintegrable;
    res.message = "weak obstruction residual exceeds the integrability gate";
    return true;
  }
  return false;
}

// Shared Newton loop; `residual_of(u)` returns the form whose interior sup
// is driven to zero, and the update is u -= dbar_solve(that form).
template <class ResidualFn>
SolveResult newton_loop(const GForm& lambda, const CanonicalSolver& S, const SolverConfig& cfg,
                        ResidualFn residual_of) {
  cfg.validate();
  SolveResult res(GForm(lambda.domain_ptr(), lambda.algebra_ptr(), 0));
  if (integrability_gate_fails(res, lambda, cfg)) return res;
  const auto& mask = lambda.domain().interior_mask();
  try {
    GForm r = residual_of(res.u);
    double rn = r.sup_norm(mask);
    res.residual_history.push_back(rn);
    while (true) {
      if (rn <= cfg.newton_tolerance) {
        res.status = SolveStatus::converged;
        break;
      }
      if (res.iterations >= cfg.max_newton_iters) {
        res.status = SolveStatus::failed_budget;
        res.message = "Newton iteration budget exhausted";
        break;
      }
      DbarSolveResult step = dbar_solve_detailed(S, r);
      res.u -= step.u;
      ++res.iterations;
      r = residual_of(res.u);
      const double next = r.sup_norm(mask);
      res.residual_history.push_back(next);
      if (!std::isfinite(next) || next >= rn) {
        res.status = SolveStatus::failed_budget;
        res.message = "Newton residual did not decrease";
        break;
      }
      rn = next;
    }
  } catch (const SeriesToleranceError& e) {
    res.status = SolveStatus::failed_budget;
    res.message = e.what();
  } catch (const ConvergenceError& e) {
    res.status = SolveStatus::failed_budget;
    res.message = e.what();
  }
  if (res.ok()) fill_norms(res, lambda, cfg);
  return res;
}

}  // namespace

SolveResult newton_frame_solve(const GForm& lambda, const CanonicalSolver& S,
                               const SolverConfig& cfg) {
  if (lambda.degree() != 1) throw DimensionError("newton_frame_solve: needs a (0,1)-form");
  const SeriesOptions so = cfg.series();
  return newton_loop(lambda, S, cfg, [&](const GForm& u) { return mc_pullback(u, so) - lambda; });
}

SolveResult kmap_newton_solve(const GForm& lambda, const CanonicalSolver& S,
                              const SolverConfig& cfg) {
  if (lambda.degree() != 1 || lambda.domain().n() != 2)
    throw DimensionError("kmap_newton_solve: needs a (0,1)-form on n = 2");
  const SeriesOptions so = cfg.series();
  const GForm target = kmap(S, lambda);
  return newton_loop(lambda, S, cfg,
                     [&](const GForm& u) { return kmap(S, mc_pullback(u, so)) - target; });
}

SolveResult rescaled_solve(const GForm& alpha, const SolverFactory& factory,
                           const SolverConfig& cfg) {
  cfg.validate();
  SolveResult gate_probe(GForm(alpha.domain_ptr(), alpha.algebra_ptr(), 0));
  if (integrability_gate_fails(gate_probe, alpha, cfg)) return gate_probe;
  SolverConfig inner = cfg;
  inner.check_integrability = false;
  std::optional<SolveResult> last;
  for (const double eps : cfg.epsilon_schedule) {
    const GForm a = rescale(alpha, eps);
    SolveResult r = newton_frame_solve(a, factory(a.domain()), inner);
    r.weak_residual = gate_probe.weak_residual;
    r.gate = gate_probe.gate;
    r.epsilon_used = eps;
    if (r.ok()) {
      if (eps < 1.0) {
        auto scaled = std::make_shared<const GridDomain>(a.domain().scaled(eps));
        GForm u(scaled, alpha.algebra_ptr(), 0);
        std::copy(r.u.data().begin(), r.u.data().end(), u.data().begin());
        r.u = std::move(u);
        r.status = SolveStatus::rescaled_converged;
      }
      return r;
    }
    last = std::move(r);
  }
  last->status = SolveStatus::failed_budget;
  last->message = "epsilon schedule exhausted: " + last->message;
  return std::move(*last);
}

nlohmann::json FrameReport::to_json() const {
  nlohmann::json j{{"residual_strong", residual_strong},
                   {"gauge_check", gauge_check},
                   {"gauged_form_sup", gauged_form_sup}};
  j["residual_matrix"] = residual_matrix ? nlohmann::json(*residual_matrix) : nlohmann::json(nullptr);
  return j;
}

FrameReport frame_and_verify(const GForm& u, const GForm& lambda, const SeriesOptions& opts,
                             bool keep_frame) {
  FrameReport rep;
  const GridDomain& dom = u.domain();
  const auto& interior = dom.interior_mask();
  rep.residual_strong = max_difference(mc_pullback(u, opts), lambda, interior);
  GForm minus_u = u;
  minus_u *= -1.0;
  const GForm gauged = gauge_transform(lambda, minus_u, opts);
  rep.gauged_form_sup = gauged.sup_norm(interior);
  rep.gauge_check = dom.n() == 2 ? obstruction(gauged).sup_norm(dom.double_interior_mask())
                                 : rep.gauged_form_sup;
  if (u.algebra().has_representation()) {
    MatrixField sigma = exp_rep_field(u);
    const MatrixField mc = matrix_mc(sigma);
    rep.residual_matrix = MatrixField::max_deviation(mc, represent(lambda), interior);
    if (keep_frame) rep.frame = std::move(sigma);
  }
  return rep;
}

std::vector<RatioPoint> ratio_study(const GForm& lambda, const CanonicalSolver& S,
                                    const SolverConfig& cfg, const std::vector<double>& scales) {
  std::vector<RatioPoint> out;
  for (const double t : scales) {
    RatioPoint pt;
    pt.t = t;
    if (t == 0.0) {
      out.push_back(pt);
      continue;
    }
    GForm lt = lambda;
    lt *= t;
    SolveResult r = newton_frame_solve(lt, S, cfg);
    pt.status = r.status;
    pt.iterations = r.iterations;
    if (r.ok()) {
      const HolderOptions o = interior_options(lambda.domain(), cfg.seed);
      pt.K_norm = holder_norm(dbar(r.u), cfg.kappa, o).value;
      pt.lambda_norm = holder_norm(lt, cfg.kappa, o).value;
      pt.ratio = pt.K_norm / pt.lambda_norm;
    } else {
      pt.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace holoframe
