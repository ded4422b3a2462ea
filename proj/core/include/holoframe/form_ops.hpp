#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "holoframe/gform.hpp"
#include "holoframe/matrix_exp.hpp"

namespace holoframe {

/// Raw difference kernels on node-major arrays holding `width` complex
/// entries per node. The stencil at each node is the domain's stencil:
/// centered (u[+1]-u[-1])/2h, forward (-3u0+4u1-u2)/2h, backward
/// (3u0-4u[-1]+u[-2])/2h.
namespace kernels {

/// out += scale * d/dx_a (in).
void derivative_accumulate(const GridDomain& g, const cplx* in, int width, int a, cplx scale,
                           cplx* out);
/// out += scale * (d/dx_a)^T (mask * in); rows outside the mask are ignored.
void derivative_transpose_accumulate(const GridDomain& g, const cplx* in, int width, int a,
                                     cplx scale, cplx* out, std::span<const std::uint8_t> mask);
/// out += scale * d/dzbar_j (in), d/dzbar = (d/dx + i d/dy)/2.
void dbar_accumulate(const GridDomain& g, const cplx* in, int width, int j, cplx scale, cplx* out);
/// out += scale * (d/dzbar_j)^H (mask * in).
void dbar_adjoint_accumulate(const GridDomain& g, const cplx* in, int width, int j, cplx scale,
                             cplx* out, std::span<const std::uint8_t> mask);

/// Fused d/dzbar_j on the rows selected by `mask` only: out[p] += scale * dbar_j(in)[p].
/// Rows outside the mask are left untouched.
void dbar_rows_accumulate(const GridDomain& g, const cplx* in, int width, int j, cplx scale,
                          cplx* out, std::span<const std::uint8_t> mask);

}  // namespace kernels

/// d-bar of a (0,q)-form, q < n. For q = 1, n = 2 the single component is
/// d/dzbar_1 b_2 - d/dzbar_2 b_1.
GForm dbar(const GForm& f);

/// Adjoint of dbar with respect to the coordinate inner product, restricted
/// to equation rows in `mask` (empty mask: all nodes). Input degree q+1,
/// output degree q.
GForm dbar_adjoint(const GForm& g, int target_degree, std::span<const std::uint8_t> mask = {});

/// [a ^ b]_{12} = [a_1, b_2] - [a_2, b_1]. Empty (0,2)-form when n = 1.
GForm wedge_bracket(const GForm& a, const GForm& b);

/// dbar(alpha) + 1/2 [alpha ^ alpha]; the empty (0,2)-form when n = 1.
GForm obstruction(const GForm& alpha);

/// Pointwise D(ad_u) dbar(u): the (0,1)-part of exp(u)^* theta.
GForm mc_pullback(const GForm& u, const SeriesOptions& opts = {});

/// Pointwise Ad_exp(sign * u(z)) applied to every component of `form`.
GForm adjoint_action(const GForm& u, const GForm& form, double sign,
                     const SeriesOptions& opts = {});

/// Ad_exp(-u) alpha + mc_pullback(u). When `transport` is given, Ad_exp(-u)
/// is also applied to it in place, reusing the per-node factors.
GForm gauge_transform(const GForm& alpha, const GForm& u, const SeriesOptions& opts = {},
                      GForm* transport = nullptr);

/// sup over the mask (default: double interior) of
/// dbar(b) + [alpha ^ b] + 1/2 [b ^ b] - (Ad_exp(-u) - id) obstruction(alpha)
/// with b = gauge_transform(alpha, u) - alpha.
double kj_identity_defect(const GForm& alpha, const GForm& u, const SeriesOptions& opts = {},
                          std::span<const std::uint8_t> mask = {});

/// Same defect from precomputed pieces: gauged = gauge_transform(alpha, u),
/// f_alpha = obstruction(alpha), transported_f = Ad_exp(-u) f_alpha.
double kj_identity_defect(const GForm& alpha, const GForm& gauged, const GForm& f_alpha,
                          const GForm& transported_f, std::span<const std::uint8_t> mask = {});

/// Matrix-valued (0,q) data: per component and node an r x r matrix stored
/// column-major, layout [component][node][entry].
struct MatrixField {
  DomainPtr domain;
  int rows = 0;
  int components = 0;
  std::vector<cplx> data;

  MatrixField() = default;
  MatrixField(DomainPtr d, int r, int comps)
      : domain(std::move(d)), rows(r), components(comps),
        data(static_cast<std::size_t>(comps) * domain->size() * r * r) {}

  std::size_t nodes() const { return domain->size(); }
  std::size_t stride() const { return static_cast<std::size_t>(rows) * rows; }
  cplx* at(int c, std::size_t p) { return data.data() + (c * nodes() + p) * stride(); }
  const cplx* at(int c, std::size_t p) const { return data.data() + (c * nodes() + p) * stride(); }
  Eigen::Map<Mat> matrix(int c, std::size_t p) { return {at(c, p), rows, rows}; }
  Eigen::Map<const Mat> matrix(int c, std::size_t p) const { return {at(c, p), rows, rows}; }

  /// max over masked nodes and components of the Frobenius norm of a - b.
  static double max_deviation(const MatrixField& a, const MatrixField& b,
                              std::span<const std::uint8_t> mask = {});
};

/// Pointwise rho applied to every component of a form.
MatrixField represent(const GForm& f);

struct RepCurvature {
  /// dbar rho(alpha) + rho(alpha) ^ rho(alpha), component 12.
  MatrixField curvature;
  /// rho(obstruction(alpha)).
  MatrixField represented_obstruction;
  double max_deviation = 0.0;
};

/// Requires n = 2 and a matrix representation. Deviation measured over the
/// mask (default: all nodes).
RepCurvature rep_curvature(const GForm& alpha, std::span<const std::uint8_t> mask = {});

/// max over masked nodes of the stacked Euclidean norm of a - b.
double max_difference(const GForm& a, const GForm& b, std::span<const std::uint8_t> mask = {});

}  // namespace holoframe
