#include "holoframe/cgls.hpp"

namespace holoframe {

CglsResult cgls(const LinearMap& apply, const LinearMap& apply_adjoint, const Vec& b,
                const Vec& x0, std::size_t unknowns, const CglsOptions& opts) {
  CglsResult res;
  res.x = x0.size() ? x0 : Vec::Zero(static_cast<Eigen::Index>(unknowns));
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.x.setZero();
    res.converged = true;
    return res;
  }
  Vec r = b;
  Vec tmp(b.size());
  if (res.x.squaredNorm() > 0.0) {
    apply(res.x, tmp);
    r -= tmp;
  }
  Vec ahb(res.x.size());
  apply_adjoint(b, ahb);
  const double ahb_norm = std::max(ahb.norm(), 1e-300);
  Vec s(res.x.size());
  apply_adjoint(r, s);
  Vec p = s;
  Vec q(b.size());
  double gamma = s.squaredNorm();
  res.residual = r.norm() / bnorm;
  res.normal_residual = std::sqrt(gamma) / ahb_norm;
  res.history.push_back(res.residual);
  auto done = [&] {
    return res.residual <= opts.tolerance || res.normal_residual <= opts.tolerance;
  };
  while (!done() && res.iterations < opts.max_iterations) {
    apply(p, q);
    const double qq = q.squaredNorm();
    if (qq == 0.0) break;
    const double alpha = gamma / qq;
    res.x += alpha * p;
    r -= alpha * q;
    apply_adjoint(r, s);
    const double gamma_new = s.squaredNorm();
    p = s + (gamma_new / gamma) * p;
    gamma = gamma_new;
    ++res.iterations;
    res.residual = r.norm() / bnorm;
    res.normal_residual = std::sqrt(gamma) / ahb_norm;
    res.history.push_back(res.residual);
  }
  res.converged = done();
  return res;
}

}  // namespace holoframe
