#include "holoframe/form_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holoframe/parallel.hpp"

namespace holoframe {

namespace kernels {

namespace {

// Stencil nodes and weights (in units of 1/2h) for direction a at node p.
struct Taps {
  std::int64_t node[3];
  double weight[3];
  int count;
};

inline Taps taps(const GridDomain& g, std::size_t p, int a) {
  Taps t{};
  switch (g.stencil(p, a)) {
    case Stencil::centered:
      t.node[0] = g.step(p, a, -1);
      t.node[1] = g.step(p, a, 1);
      t.weight[0] = -1.0;
      t.weight[1] = 1.0;
      t.count = 2;
      break;
    case Stencil::forward:
      t.node[0] = static_cast<std::int64_t>(p);
      t.node[1] = g.step(p, a, 1);
      t.node[2] = g.neighbor(p, a, 2);
      t.weight[0] = -3.0;
      t.weight[1] = 4.0;
      t.weight[2] = -1.0;
      t.count = 3;
      break;
    case Stencil::backward:
      t.node[0] = static_cast<std::int64_t>(p);
      t.node[1] = g.step(p, a, -1);
      t.node[2] = g.neighbor(p, a, -2);
      t.weight[0] = 3.0;
      t.weight[1] = -4.0;
      t.weight[2] = 1.0;
      t.count = 3;
      break;
    case Stencil::none:
      t.count = 0;
      break;
  }
  return t;
}

}  // namespace

void derivative_accumulate(const GridDomain& g, const cplx* in, int width, int a, cplx scale,
                           cplx* out) {
  const cplx s = scale / (2.0 * g.spacing());
  const auto w = static_cast<std::size_t>(width);
  parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const Taps t = taps(g, p, a);
      cplx* o = out + p * w;
      for (int m = 0; m < t.count; ++m) {
        const cplx c = s * t.weight[m];
        const cplx* src = in + static_cast<std::size_t>(t.node[m]) * w;
        for (std::size_t k = 0; k < w; ++k) o[k] += c * src[k];
      }
    }
  });
}

void derivative_transpose_accumulate(const GridDomain& g, const cplx* in, int width, int a,
                                     cplx scale, cplx* out, std::span<const std::uint8_t> mask) {
  const cplx s = scale / (2.0 * g.spacing());
  const auto w = static_cast<std::size_t>(width);
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!mask.empty() && !mask[p]) continue;
    const Taps t = taps(g, p, a);
    const cplx* src = in + p * w;
    for (int m = 0; m < t.count; ++m) {
      const cplx c = s * t.weight[m];
      cplx* o = out + static_cast<std::size_t>(t.node[m]) * w;
      for (std::size_t k = 0; k < w; ++k) o[k] += c * src[k];
    }
  }
}

void dbar_accumulate(const GridDomain& g, const cplx* in, int width, int j, cplx scale, cplx* out) {
  dbar_rows_accumulate(g, in, width, j, scale, out, {});
}

void dbar_rows_accumulate(const GridDomain& g, const cplx* in, int width, int j, cplx scale,
                          cplx* out, std::span<const std::uint8_t> mask) {
  const cplx sx = 0.5 * scale / (2.0 * g.spacing());
  const cplx sy = cplx(0.0, 0.5) * scale / (2.0 * g.spacing());
  const auto w = static_cast<std::size_t>(width);
  const int ax = 2 * j;
  const int ay = 2 * j + 1;
  parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      if (!mask.empty() && !mask[p]) continue;
      cplx* o = out + p * w;
      if (g.stencil(p, ax) == Stencil::centered && g.stencil(p, ay) == Stencil::centered) {
        const cplx* xm = in + static_cast<std::size_t>(g.step(p, ax, -1)) * w;
        const cplx* xp = in + static_cast<std::size_t>(g.step(p, ax, 1)) * w;
        const cplx* ym = in + static_cast<std::size_t>(g.step(p, ay, -1)) * w;
        const cplx* yp = in + static_cast<std::size_t>(g.step(p, ay, 1)) * w;
        for (std::size_t k = 0; k < w; ++k) o[k] += sx * (xp[k] - xm[k]) + sy * (yp[k] - ym[k]);
        continue;
      }
      for (int a : {ax, ay}) {
        const Taps t = taps(g, p, a);
        const cplx s = a == ax ? sx : sy;
        for (int m = 0; m < t.count; ++m) {
          const cplx c = s * t.weight[m];
          const cplx* src = in + static_cast<std::size_t>(t.node[m]) * w;
          for (std::size_t k = 0; k < w; ++k) o[k] += c * src[k];
        }
      }
    }
  });
}

void dbar_adjoint_accumulate(const GridDomain& g, const cplx* in, int width, int j, cplx scale,
                             cplx* out, std::span<const std::uint8_t> mask) {
  // Adjoint of dbar_j: conj(1/2) D_x^T + conj(i/2) D_y^T.
  const cplx sx = 0.5 * scale / (2.0 * g.spacing());
  const cplx sy = cplx(0.0, -0.5) * scale / (2.0 * g.spacing());
  const auto w = static_cast<std::size_t>(width);
  const int ax = 2 * j;
  const int ay = 2 * j + 1;
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!mask.empty() && !mask[p]) continue;
    const cplx* src = in + p * w;
    if (g.stencil(p, ax) == Stencil::centered && g.stencil(p, ay) == Stencil::centered) {
      cplx* xm = out + static_cast<std::size_t>(g.step(p, ax, -1)) * w;
      cplx* xp = out + static_cast<std::size_t>(g.step(p, ax, 1)) * w;
      cplx* ym = out + static_cast<std::size_t>(g.step(p, ay, -1)) * w;
      cplx* yp = out + static_cast<std::size_t>(g.step(p, ay, 1)) * w;
      for (std::size_t k = 0; k < w; ++k) {
        const cplx vx = sx * src[k];
        const cplx vy = sy * src[k];
        xp[k] += vx;
        xm[k] -= vx;
        yp[k] += vy;
        ym[k] -= vy;
      }
      continue;
    }
    for (int a : {ax, ay}) {
      const Taps t = taps(g, p, a);
      const cplx s = a == ax ? sx : sy;
      for (int m = 0; m < t.count; ++m) {
        const cplx c = s * t.weight[m];
        cplx* o = out + static_cast<std::size_t>(t.node[m]) * w;
        for (std::size_t k = 0; k < w; ++k) o[k] += c * src[k];
      }
    }
  }
}

}  // namespace kernels

namespace {

template <class F>
void with_matrix_type(int d, F&& f) {
  if (d == 3) {
    f(Eigen::Matrix3cd{});
  } else if (d <= kSmallMatMax) {
    f(SmallMat{});
  } else {
    f(Mat{});
  }
}

void require_same(const GForm& a, const GForm& b, const char* what) {
  if (!a.domain().same_geometry(b.domain()) || a.dim() != b.dim() ||
      (a.algebra_ptr() != b.algebra_ptr() && a.algebra().id() != b.algebra().id()))
    throw DimensionError(std::string(what) + ": forms live on different domains or algebras");
}

}  // namespace

GForm dbar(const GForm& f) {
  const int n = f.domain().n();
  const int q = f.degree();
  if (q >= n) throw DimensionError("dbar: no (0," + std::to_string(q + 1) + ")-forms for n = " +
                                   std::to_string(n));
  GForm out(f.domain_ptr(), f.algebra_ptr(), q + 1);
  const int w = f.dim();
  if (q == 0) {
    for (int j = 0; j < n; ++j)
      kernels::dbar_rows_accumulate(f.domain(), f.at(0, 0), w, j, 1.0, out.at(j, 0), {});
  } else {
    kernels::dbar_rows_accumulate(f.domain(), f.at(1, 0), w, 0, 1.0, out.at(0, 0), {});
    kernels::dbar_rows_accumulate(f.domain(), f.at(0, 0), w, 1, -1.0, out.at(0, 0), {});
  }
  return out;
}

GForm dbar_adjoint(const GForm& g, int target_degree, std::span<const std::uint8_t> mask) {
  const int n = g.domain().n();
  if (target_degree < 0 || target_degree + 1 != g.degree() || g.degree() > n)
    throw DimensionError("dbar_adjoint: degree mismatch");
  GForm out(g.domain_ptr(), g.algebra_ptr(), target_degree);
  const int w = g.dim();
  if (target_degree == 0) {
    for (int j = 0; j < n; ++j)
      kernels::dbar_adjoint_accumulate(g.domain(), g.at(j, 0), w, j, 1.0, out.at(0, 0), mask);
  } else {
    kernels::dbar_adjoint_accumulate(g.domain(), g.at(0, 0), w, 0, 1.0, out.at(1, 0), mask);
    kernels::dbar_adjoint_accumulate(g.domain(), g.at(0, 0), w, 1, -1.0, out.at(0, 0), mask);
  }
  return out;
}

GForm wedge_bracket(const GForm& a, const GForm& b) {
  require_same(a, b, "wedge_bracket");
  if (a.degree() != 1 || b.degree() != 1) throw DimensionError("wedge_bracket: needs (0,1)-forms");
  GForm out(a.domain_ptr(), a.algebra_ptr(), 2);
  if (out.components() == 0) return out;
  const LieAlgebra& g = a.algebra();
  if (g.nonzero_constants().empty()) return out;
  parallel_for(a.nodes(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      cplx* o = out.at(0, p);
      g.bracket_accumulate(a.at(0, p), b.at(1, p), 1.0, o);
      g.bracket_accumulate(a.at(1, p), b.at(0, p), -1.0, o);
    }
  });
  return out;
}

GForm obstruction(const GForm& alpha) {
  if (alpha.degree() != 1) throw DimensionError("obstruction: needs a (0,1)-form");
  if (alpha.domain().n() == 1) return GForm(alpha.domain_ptr(), alpha.algebra_ptr(), 2);
  GForm f = dbar(alpha);
  const LieAlgebra& g = alpha.algebra();
  for (std::size_t p = 0; p < alpha.nodes(); ++p)
    g.bracket_accumulate(alpha.at(0, p), alpha.at(1, p), 1.0, f.at(0, p));
  return f;
}

GForm mc_pullback(const GForm& u, const SeriesOptions& opts) {
  if (u.degree() != 0) throw DimensionError("mc_pullback: needs a (0,0)-form");
  GForm du = dbar(u);
  const LieAlgebra& g = u.algebra();
  if (g.nonzero_constants().empty()) return du;
  const int d = u.dim();
  const int comps = du.components();
  with_matrix_type(d, [&](auto tag) {
    using M = decltype(tag);
    using V = Eigen::Matrix<cplx, M::RowsAtCompileTime, 1, 0, M::MaxRowsAtCompileTime, 1>;
    parallel_for(u.nodes(), [&](std::size_t begin, std::size_t end) {
      M D;
      V tmp(d);
      for (std::size_t p = begin; p < end; ++p) {
        try {
          g.dexp_factor_into(u.at(0, p), opts, D);
        } catch (const SeriesToleranceError& e) {
          throw SeriesToleranceError(std::string(e.what()) + " (worst node " + std::to_string(p) +
                                     ")");
        }
        for (int c = 0; c < comps; ++c) {
          Eigen::Map<V> v(du.at(c, p), d);
          tmp.noalias() = D * v;
          v = tmp;
        }
      }
    });
  });
  return du;
}

GForm adjoint_action(const GForm& u, const GForm& form, double sign, const SeriesOptions& opts) {
  if (u.degree() != 0) throw DimensionError("adjoint_action: u must be a (0,0)-form");
  require_same(u, form, "adjoint_action");
  GForm out = form;
  const LieAlgebra& g = u.algebra();
  if (g.nonzero_constants().empty()) return out;
  const int d = u.dim();
  with_matrix_type(d, [&](auto tag) {
    using M = decltype(tag);
    using V = Eigen::Matrix<cplx, M::RowsAtCompileTime, 1, 0, M::MaxRowsAtCompileTime, 1>;
    parallel_for(u.nodes(), [&](std::size_t begin, std::size_t end) {
      M A;
      V tmp(d);
      for (std::size_t p = begin; p < end; ++p) {
        g.ad_exp_into(u.at(0, p), sign, opts, A);
        for (int c = 0; c < out.components(); ++c) {
          Eigen::Map<V> v(out.at(c, p), d);
          tmp.noalias() = A * v;
          v = tmp;
        }
      }
    });
  });
  return out;
}

GForm gauge_transform(const GForm& alpha, const GForm& u, const SeriesOptions& opts,
                      GForm* transport) {
  if (alpha.degree() != 1) throw DimensionError("gauge_transform: alpha must be a (0,1)-form");
  if (u.degree() != 0) throw DimensionError("gauge_transform: u must be a (0,0)-form");
  require_same(u, alpha, "gauge_transform");
  if (transport) require_same(u, *transport, "gauge_transform");
  GForm out = dbar(u);
  const LieAlgebra& g = u.algebra();
  if (g.nonzero_constants().empty()) {
    out += alpha;
    return out;
  }
  const int d = u.dim();
  const int comps = out.components();
  with_matrix_type(d, [&](auto tag) {
    using M = decltype(tag);
    using V = Eigen::Matrix<cplx, M::RowsAtCompileTime, 1, 0, M::MaxRowsAtCompileTime, 1>;
    using CMap = Eigen::Map<const V>;
    using VMap = Eigen::Map<V>;
    parallel_for(u.nodes(), [&](std::size_t begin, std::size_t end) {
      M E;
      M D;
      V tmp(d);
      for (std::size_t p = begin; p < end; ++p) {
        try {
          g.gauge_factors_into(u.at(0, p), opts, E, D);
        } catch (const SeriesToleranceError& e) {
          throw SeriesToleranceError(std::string(e.what()) + " (worst node " + std::to_string(p) +
                                     ")");
        }
        for (int c = 0; c < comps; ++c) {
          VMap v(out.at(c, p), d);
          tmp.noalias() = D * v;
          tmp.noalias() += E * CMap(alpha.at(c, p), d);
          v = tmp;
        }
        if (transport)
          for (int c = 0; c < transport->components(); ++c) {
            VMap v(transport->at(c, p), d);
            tmp.noalias() = E * v;
            v = tmp;
          }
      }
    });
  });
  return out;
}

double max_difference(const GForm& a, const GForm& b, std::span<const std::uint8_t> mask) {
  a.require_compatible(b, "max_difference");
  double worst = 0.0;
  const auto d = static_cast<std::size_t>(a.dim());
  for (std::size_t p = 0; p < a.nodes(); ++p) {
    if (!mask.empty() && !mask[p]) continue;
    double sq = 0.0;
    for (int c = 0; c < a.components(); ++c) {
      const cplx* x = a.at(c, p);
      const cplx* y = b.at(c, p);
      for (std::size_t k = 0; k < d; ++k) sq += std::norm(x[k] - y[k]);
    }
    worst = std::max(worst, sq);
  }
  return std::sqrt(worst);
}

double kj_identity_defect(const GForm& alpha, const GForm& u, const SeriesOptions& opts,
                          std::span<const std::uint8_t> mask) {
  if (alpha.domain().n() != 2) throw DimensionError("kj_identity_defect: needs n = 2");
  const GForm f = obstruction(alpha);
  GForm transported = f;
  const GForm gauged = gauge_transform(alpha, u, opts, &transported);
  return kj_identity_defect(alpha, gauged, f, transported, mask);
}

double kj_identity_defect(const GForm& alpha, const GForm& gauged, const GForm& f_alpha,
                          const GForm& transported_f, std::span<const std::uint8_t> mask) {
  if (alpha.domain().n() != 2) throw DimensionError("kj_identity_defect: needs n = 2");
  GForm b = gauged;
  b -= alpha;
  GForm lhs = dbar(b);
  lhs += wedge_bracket(alpha, b);
  GForm half_bb = wedge_bracket(b, b);
  half_bb *= 0.5;
  lhs += half_bb;
  GForm rhs = transported_f;
  rhs -= f_alpha;
  if (mask.empty()) mask = alpha.domain().double_interior_mask();
  return max_difference(lhs, rhs, mask);
}

double MatrixField::max_deviation(const MatrixField& a, const MatrixField& b,
                                  std::span<const std::uint8_t> mask) {
  if (a.rows != b.rows || a.components != b.components || a.data.size() != b.data.size())
    throw DimensionError("MatrixField::max_deviation: shape mismatch");
  double worst = 0.0;
  const std::size_t s = a.stride();
  for (int c = 0; c < a.components; ++c)
    for (std::size_t p = 0; p < a.nodes(); ++p) {
      if (!mask.empty() && !mask[p]) continue;
      const cplx* x = a.at(c, p);
      const cplx* y = b.at(c, p);
      double sq = 0.0;
      for (std::size_t k = 0; k < s; ++k) sq += std::norm(x[k] - y[k]);
      worst = std::max(worst, sq);
    }
  return std::sqrt(worst);
}

MatrixField represent(const GForm& f) {
  const LieAlgebra& g = f.algebra();
  if (!g.has_representation()) throw DimensionError("algebra has no matrix representation");
  const int r = g.representation_size();
  const int d = f.dim();
  const std::size_t w = static_cast<std::size_t>(r) * r;
  std::vector<cplx> basis(static_cast<std::size_t>(d) * w);
  for (int i = 0; i < d; ++i)
    std::copy_n(g.representation()[static_cast<std::size_t>(i)].data(), w, basis.begin() + static_cast<std::ptrdiff_t>(i * w));
  MatrixField out(f.domain_ptr(), r, f.components());
  for (int c = 0; c < f.components(); ++c)
    parallel_for(f.nodes(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t p = begin; p < end; ++p) {
        cplx* m = out.at(c, p);
        const cplx* v = f.at(c, p);
        for (int i = 0; i < d; ++i) {
          const cplx* b = basis.data() + i * w;
          for (std::size_t k = 0; k < w; ++k) m[k] += v[i] * b[k];
        }
      }
    });
  return out;
}

RepCurvature rep_curvature(const GForm& alpha, std::span<const std::uint8_t> mask) {
  if (alpha.degree() != 1) throw DimensionError("rep_curvature: needs a (0,1)-form");
  if (alpha.domain().n() != 2) throw DimensionError("rep_curvature: needs n = 2");
  const MatrixField ra = represent(alpha);
  const GridDomain& dom = alpha.domain();
  const int r = ra.rows;
  const int w = r * r;

  RepCurvature out;
  out.curvature = MatrixField(alpha.domain_ptr(), r, 1);
  kernels::dbar_accumulate(dom, ra.at(1, 0), w, 0, 1.0, out.curvature.at(0, 0));
  kernels::dbar_accumulate(dom, ra.at(0, 0), w, 1, -1.0, out.curvature.at(0, 0));
  parallel_for(dom.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const cplx* a1 = ra.at(0, p);
      const cplx* a2 = ra.at(1, p);
      cplx* o = out.curvature.at(0, p);
      for (int col = 0; col < r; ++col)
        for (int k = 0; k < r; ++k) {
          const cplx x2 = a2[col * r + k];
          const cplx x1 = a1[col * r + k];
          for (int row = 0; row < r; ++row) o[col * r + row] += a1[k * r + row] * x2 - a2[k * r + row] * x1;
        }
    }
  });
  out.represented_obstruction = represent(obstruction(alpha));
  out.max_deviation = MatrixField::max_deviation(out.curvature, out.represented_obstruction, mask);
  return out;
}

}  // namespace holoframe
