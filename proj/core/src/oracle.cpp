#include "holoframe/oracle.hpp"

#include <string>

namespace holoframe {

AlgebraElement fd_dexp_oracle(const LieAlgebra& g, const AlgebraElement& u,
                              const AlgebraElement& v, double step) {
  if (!g.has_representation()) throw DimensionError("fd_dexp_oracle: no representation");
  if (u.size() != g.dim() || v.size() != g.dim()) throw DimensionError("fd_dexp_oracle: dimension");
  const Mat plus = g.exp_rep(u + step * v);
  const Mat minus = g.exp_rep(u - step * v);
  const Mat d = (plus - minus) / (2.0 * step);
  const Mat left = g.exp_rep(u).partialPivLu().solve(d);
  return g.coordinates_of(left);
}

MatrixField exp_rep_field(const GForm& u) {
  if (u.degree() != 0) throw DimensionError("exp_rep_field: needs a (0,0)-form");
  const LieAlgebra& g = u.algebra();
  if (!g.has_representation()) throw DimensionError("exp_rep_field: no representation");
  MatrixField out(u.domain_ptr(), g.representation_size(), 1);
  for (std::size_t p = 0; p < u.nodes(); ++p) out.matrix(0, p) = g.exp_rep(u.value(0, p));
  return out;
}

MatrixField matrix_mc(const MatrixField& sigma) {
  if (sigma.components != 1) throw DimensionError("matrix_mc: expects one matrix per node");
  const GridDomain& dom = *sigma.domain;
  const int r = sigma.rows;
  MatrixField ds(sigma.domain, r, dom.n());
  for (int j = 0; j < dom.n(); ++j)
    kernels::dbar_accumulate(dom, sigma.at(0, 0), r * r, j, 1.0, ds.at(j, 0));
  for (std::size_t p = 0; p < dom.size(); ++p) {
    const Eigen::PartialPivLU<Mat> lu(sigma.matrix(0, p));
    const double det = std::abs(lu.determinant());
    if (!(det > 1e-300) || lu.rcond() < 1e-14)
      throw DomainError("matrix_mc: singular frame at node " + std::to_string(p));
    for (int j = 0; j < dom.n(); ++j) ds.matrix(j, p) = lu.solve(Mat(ds.matrix(j, p)));
  }
  return ds;
}

}  // namespace holoframe
