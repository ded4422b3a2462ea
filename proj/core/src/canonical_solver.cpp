#include "holoframe/canonical_solver.hpp"

#include <cmath>
#include <limits>

#include "holoframe/cauchy.hpp"
#include "holoframe/form_ops.hpp"

namespace holoframe {

SolverMode parse_solver_mode(const std::string& s) {
  if (s == "cauchy") return SolverMode::cauchy;
  if (s == "least_squares") return SolverMode::least_squares;
  throw ParseError("unknown solver mode '" + s + "'");
}

Normalization parse_normalization(const std::string& s) {
  if (s == "mean_zero") return Normalization::mean_zero;
  if (s == "minimal_norm") return Normalization::minimal_norm;
  throw ParseError("unknown normalization '" + s + "'");
}

std::string to_string(SolverMode m) { return m == SolverMode::cauchy ? "cauchy" : "least_squares"; }
std::string to_string(Normalization n) {
  return n == Normalization::mean_zero ? "mean_zero" : "minimal_norm";
}

CanonicalSolver CanonicalSolver::for_dimension(int n) {
  CanonicalSolver s;
  if (n == 1) {
    s.mode = SolverMode::cauchy;
    s.normalization = Normalization::mean_zero;
  }
  return s;
}

void CanonicalSolver::validate(int n) const {
  if (mode == SolverMode::cauchy && n != 1) throw DomainError("cauchy mode needs n = 1");
  if (!(cg_tolerance > 0.0)) throw DomainError("cg_tolerance must be positive");
  if (cg_max_iters < 0) throw DomainError("cg_max_iters must be non-negative");
}

namespace {

CglsOptions cg_options(const CanonicalSolver& S, std::size_t unknowns) {
  CglsOptions o;
  o.tolerance = S.cg_tolerance;
  o.max_iterations = S.cg_max_iters > 0
                         ? S.cg_max_iters
                         : static_cast<int>(10.0 * std::sqrt(static_cast<double>(unknowns)));
  return o;
}

Vec as_vec(const GForm& f) { return Eigen::Map<const Vec>(f.data().data(), static_cast<Eigen::Index>(f.data().size())); }

void assign(GForm& f, const Vec& v) { std::copy(v.data(), v.data() + v.size(), f.data().begin()); }

void mask_rows(GForm& f, std::span<const std::uint8_t> mask) {
  const auto d = static_cast<std::size_t>(f.dim());
  for (int c = 0; c < f.components(); ++c)
    for (std::size_t p = 0; p < f.nodes(); ++p)
      if (!mask[p]) std::fill(f.at(c, p), f.at(c, p) + d, cplx{});
}

// Least-squares solve of dbar x = rhs on interior rows, x of degree q.
CglsResult solve_rows(const CanonicalSolver& S, const GForm& rhs, int q, const Vec& x0) {
  const GridDomain& dom = rhs.domain();
  const auto& mask = dom.interior_mask();
  const int n = dom.n();
  const int w = rhs.dim();
  const std::size_t block = dom.size() * static_cast<std::size_t>(w);
  GForm b = rhs;
  mask_rows(b, mask);
  const std::size_t unknowns = (q == 0 ? 1 : static_cast<std::size_t>(n)) * block;
  auto apply = [&](const Vec& in, Vec& out) {
    out.setZero(static_cast<Eigen::Index>(b.data().size()));
    if (q == 0) {
      for (int j = 0; j < n; ++j)
        kernels::dbar_rows_accumulate(dom, in.data(), w, j, 1.0, out.data() + j * block, mask);
    } else {
      kernels::dbar_rows_accumulate(dom, in.data() + block, w, 0, 1.0, out.data(), mask);
      kernels::dbar_rows_accumulate(dom, in.data(), w, 1, -1.0, out.data(), mask);
    }
  };
  auto adjoint = [&](const Vec& in, Vec& out) {
    out.setZero(static_cast<Eigen::Index>(unknowns));
    if (q == 0) {
      for (int j = 0; j < n; ++j)
        kernels::dbar_adjoint_accumulate(dom, in.data() + j * block, w, j, 1.0, out.data(), mask);
    } else {
      kernels::dbar_adjoint_accumulate(dom, in.data(), w, 0, 1.0, out.data() + block, mask);
      kernels::dbar_adjoint_accumulate(dom, in.data(), w, 1, -1.0, out.data(), mask);
    }
  };
  return cgls(apply, adjoint, as_vec(b), x0, unknowns, cg_options(S, unknowns));
}

void subtract_mean(GForm& u) {
  const auto d = static_cast<std::size_t>(u.dim());
  Vec mean = Vec::Zero(u.dim());
  for (std::size_t p = 0; p < u.nodes(); ++p) mean += u.value(0, p);
  mean /= static_cast<double>(u.nodes());
  for (std::size_t p = 0; p < u.nodes(); ++p)
    for (std::size_t k = 0; k < d; ++k) u.at(0, p)[k] -= mean[static_cast<Eigen::Index>(k)];
}

}  // namespace

double interior_residual(const GForm& u, const GForm& lambda) {
  return max_difference(dbar(u), lambda, u.domain().interior_mask());
}

DbarSolveResult dbar_solve_detailed(const CanonicalSolver& S, const GForm& lambda) {
  if (lambda.degree() != 1) throw DimensionError("dbar_solve: needs a (0,1)-form");
  const int n = lambda.domain().n();
  S.validate(n);
  DbarSolveResult res{GForm(lambda.domain_ptr(), lambda.algebra_ptr(), 0)};
  if (lambda.is_zero()) {
    res.converged = true;
    return res;
  }
  if (S.mode == SolverMode::cauchy) {
    // Only interior rows are equations; boundary-ring values of lambda are
    // left out of the transform as well.
    GForm rows = lambda;
    mask_rows(rows, lambda.domain().interior_mask());
    GForm uc = cauchy_transform(rows);
    GForm r = lambda - dbar(uc);
    CglsResult c = solve_rows(S, r, 0, Vec());
    res.u = std::move(uc);
    GForm delta(lambda.domain_ptr(), lambda.algebra_ptr(), 0);
    assign(delta, c.x);
    res.u += delta;
    res.iterations = c.iterations;
    res.converged = c.converged;
    res.history = std::move(c.history);
  } else {
    CglsResult c = solve_rows(S, lambda, 0, Vec());
    assign(res.u, c.x);
    res.iterations = c.iterations;
    res.converged = c.converged;
    res.history = std::move(c.history);
  }
  if (S.normalization == Normalization::mean_zero) subtract_mean(res.u);
  res.residual_sup = interior_residual(res.u, lambda);
  return res;
}

GForm dbar_solve(const CanonicalSolver& S, const GForm& lambda) {
  DbarSolveResult r = dbar_solve_detailed(S, lambda);
  if (!r.converged)
    throw ConvergenceError("dbar_solve: normal equations did not converge in " +
                           std::to_string(r.iterations) + " iterations");
  return std::move(r.u);
}

DbarSolveResult dbar_solve_two(const CanonicalSolver& S, const GForm& g) {
  if (g.degree() != 2 || g.domain().n() != 2) throw DimensionError("dbar_solve_two: needs a (0,2)-form on n = 2");
  if (!(S.cg_tolerance > 0.0)) throw DomainError("cg_tolerance must be positive");
  DbarSolveResult res{GForm(g.domain_ptr(), g.algebra_ptr(), 1)};
  if (g.is_zero()) {
    res.converged = true;
    return res;
  }
  CglsResult c = solve_rows(S, g, 1, Vec());
  assign(res.u, c.x);
  res.iterations = c.iterations;
  res.converged = c.converged;
  res.history = std::move(c.history);
  res.residual_sup = max_difference(dbar(res.u), g, g.domain().interior_mask());
  return res;
}

GForm kmap(const CanonicalSolver& S, const GForm& lambda) {
  if (lambda.degree() != 1 || lambda.domain().n() != 2) throw DimensionError("kmap: needs a (0,1)-form on n = 2");
  GForm w = wedge_bracket(lambda, lambda);
  GForm out = lambda;
  if (w.is_zero()) return out;
  DbarSolveResult v = dbar_solve_two(S, w);
  if (!v.converged)
    throw ConvergenceError("kmap: normal equations did not converge in " +
                           std::to_string(v.iterations) + " iterations");
  v.u *= 0.5;
  out += v.u;
  return out;
}

nlohmann::json InteriorEstimate::to_json() const {
  nlohmann::json j{{"K_norm", K_norm}, {"V_norm", V_norm}, {"undefined", undefined},
                   {"K_report", K_report.to_json()}, {"V_report", V_report.to_json()}};
  j["ratio"] = undefined ? nlohmann::json(nullptr) : nlohmann::json(ratio);
  return j;
}

InteriorEstimate interior_estimate_report(const GForm& u, const GForm& lambda,
                                          const HolderSpec& spec, const HolderOptions& opts) {
  if (u.degree() != 0 || lambda.degree() != 1) throw DimensionError("interior_estimate_report: degrees");
  const GridDomain& dom = u.domain();
  InteriorEstimate out;
  HolderOptions ko = opts;
  ko.mask = dom.interior_mask();
  out.K_report = holder_norm(dbar(u), spec, ko);
  HolderOptions vo = opts;
  vo.mask = dom.subdomain_mask();
  out.V_report = holder_norm(u, HolderSpec::from_kappa(spec.kappa + 1.0), vo);
  out.K_norm = out.K_report.value;
  out.V_norm = out.V_report.value;
  if (out.K_norm == 0.0) {
    out.undefined = true;
    out.ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    out.ratio = out.V_norm / out.K_norm;
  }
  return out;
}

}  // namespace holoframe
