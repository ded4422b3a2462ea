#include "holoframe/identity_suite.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "holoframe/form_ops.hpp"

namespace holoframe {

AlgebraPolynomial random_polynomial(const LieAlgebra& g, int n, int degree, int terms, double bound,
                                    std::mt19937_64& rng) {
  if (!(bound > 0.0)) throw DomainError("random_polynomial: bound must be positive");
  std::vector<Exponents> monomials;
  const int vars = 2 * n;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c)
        for (int d = 0; a + b + c + d <= degree; ++d) {
          if (vars == 2 && (c || d)) continue;
          monomials.push_back({a, b, c, d});
        }
  std::shuffle(monomials.begin(), monomials.end(), rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int count = std::min<int>(terms, static_cast<int>(monomials.size()));
  std::vector<AlgebraElement> coeffs;
  double total = 0.0;
  for (int t = 0; t < count; ++t) {
    AlgebraElement c(g.dim());
    for (int k = 0; k < g.dim(); ++k) c[k] = cplx(gauss(rng), gauss(rng));
    total += c.norm();
    coeffs.push_back(std::move(c));
  }
  AlgebraPolynomial out;
  for (int t = 0; t < count; ++t)
    out += AlgebraPolynomial::monomial(monomials[static_cast<std::size_t>(t)],
                                       coeffs[static_cast<std::size_t>(t)] * (bound / total));
  return out;
}

PolynomialForm random_polynomial_form(const LieAlgebra& g, int n, int q, int degree, int terms,
                                      double bound, std::mt19937_64& rng) {
  PolynomialForm f;
  f.degree = q;
  const int comps = form_component_count(n, q);
  for (int c = 0; c < comps; ++c) f.components.push_back(random_polynomial(g, n, degree, terms, bound, rng));
  return f;
}

nlohmann::json to_json(const std::vector<IdentityDefect>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows)
    out.push_back({{"identity", r.identity},
                   {"algebra", r.algebra},
                   {"defect", r.defect},
                   {"tolerance", r.tolerance},
                   {"status", r.pass() ? "PASS" : "FAIL"}});
  return out;
}

std::string format_table(const std::vector<IdentityDefect>& rows) {
  int wi = 8;
  int wa = 7;
  for (const auto& r : rows) {
    wi = std::max(wi, static_cast<int>(r.identity.size()));
    wa = std::max(wa, static_cast<int>(r.algebra.size()));
  }
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-*s  %13s  %10s  %s\n", wi, "identity", wa, "algebra", "defect",
                "tolerance", "status");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-*.*s  %-*.*s  %13.6e  %10.3e  %s\n", wi, wi, r.identity.c_str(), wa, wa,
                  r.algebra.c_str(), r.defect, r.tolerance, r.pass() ? "PASS" : "FAIL");
    os << line;
  }
  return os.str();
}

namespace {

// Owned-node mask on a slab: columns [lo, hi] of lattice coordinate 0,
// intersected with the full-domain mask selected by `kind`.
enum class MaskKind { all, double_interior };

std::vector<std::uint8_t> owned_mask(const GridDomain& slab, int lo, int hi, MaskKind kind) {
  std::vector<std::uint8_t> m(slab.size(), 0);
  for (std::size_t p = 0; p < slab.size(); ++p) {
    const int x = slab.lattice(p, 0);
    if (x < lo || x > hi) continue;
    if (kind == MaskKind::all) {
      m[p] = 1;
      continue;
    }
    // Window edges sit at least two columns from owned nodes, so the
    // slab's double interior agrees with the full domain's here.
    m[p] = slab.double_interior(p) ? 1 : 0;
  }
  return m;
}

}  // namespace

namespace {

struct SuiteInputs {
  PolynomialForm alpha;
  PolynomialForm b;
  PolynomialForm u;
};

SuiteInputs draw_inputs(const LieAlgebra& g, const IdentitySuiteOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  SuiteInputs in;
  in.alpha = random_polynomial_form(g, 2, 1, opts.degree, opts.terms, opts.input_bound, rng);
  in.b = random_polynomial_form(g, 2, 1, opts.degree, opts.terms, opts.input_bound, rng);
  in.u = random_polynomial_form(g, 2, 0, opts.degree, opts.terms, opts.input_bound, rng);
  return in;
}

// Node-major buffer of `slots` algebra vectors per node.
struct SlotBuffer {
  int d = 0;
  int slots = 0;
  std::vector<cplx> data;
  SlotBuffer(int dim, int count) : d(dim), slots(count) {}
  // Storage for `nodes` nodes. Contents are unspecified: every pass writes
  // its slots before reading them.
  void reserve_nodes(std::size_t nodes) {
    const std::size_t need = nodes * static_cast<std::size_t>(d) * slots;
    if (data.size() < need) data.resize(need);
  }
  std::size_t stride() const { return static_cast<std::size_t>(d) * slots; }
  cplx* at(std::size_t p, int slot) { return data.data() + p * stride() + slot * d; }
  const cplx* at(std::size_t p, int slot) const { return data.data() + p * stride() + slot * d; }
};

// Evaluates several polynomial components at every node from one shared
// monomial table per node.
class MonomialSampler {
 public:
  explicit MonomialSampler(const std::vector<const AlgebraPolynomial*>& polys) {
    std::map<Exponents, int> index;
    for (std::size_t s = 0; s < polys.size(); ++s)
      for (const auto& [e, c] : polys[s]->terms()) {
        auto [it, fresh] = index.emplace(e, static_cast<int>(monomials_.size()));
        if (fresh) monomials_.push_back(e);
        terms_.push_back({static_cast<int>(s), it->second});
        coeffs_.insert(coeffs_.end(), c.data(), c.data() + c.size());
      }
  }

  // Writes every slot of every node. The z1 half of each monomial is reused
  // across runs of nodes sharing z1; the z2 half is tabulated per lattice point.
  void sample(const GridDomain& dom, SlotBuffer& out) const {
    const std::size_t M = monomials_.size();
    const int d = out.d;
    const int R = dom.lattice_radius();
    const int side = 2 * R + 1;
    auto halves = [&](cplx z, int first, cplx* dst) {
      for (std::size_t m = 0; m < M; ++m) {
        const Exponents& e = monomials_[m];
        dst[m] = ipow(z, e[first]) * ipow(std::conj(z), e[first + 1]);
      }
    };
    std::vector<cplx> z2part(static_cast<std::size_t>(side) * side * M);
    for (int i = -R; i <= R; ++i)
      for (int j = -R; j <= R; ++j)
        halves(cplx(dom.spacing() * i, dom.spacing() * j), kZ2,
               z2part.data() + (static_cast<std::size_t>(i + R) * side + static_cast<std::size_t>(j + R)) * M);
    std::vector<cplx> z1part(M);
    std::vector<cplx> mono(M);
    bool have_z1 = false;
    cplx last_z1;
    const std::size_t stride = out.stride();
    for (std::size_t p = 0; p < dom.size(); ++p) {
      const cplx z1 = dom.z(p, 0);
      if (!have_z1 || z1 != last_z1) {
        halves(z1, kZ1, z1part.data());
        last_z1 = z1;
        have_z1 = true;
      }
      const cplx* zp2 = z2part.data() + (static_cast<std::size_t>(dom.lattice(p, 2) + R) * side +
                                         static_cast<std::size_t>(dom.lattice(p, 3) + R)) * M;
      for (std::size_t m = 0; m < M; ++m) mono[m] = z1part[m] * zp2[m];
      cplx* row = out.at(p, 0);
      std::fill(row, row + stride, cplx{});
      const cplx* c = coeffs_.data();
      for (const auto& t : terms_) {
        cplx* o = row + t.slot * d;
        const cplx m = mono[static_cast<std::size_t>(t.monomial)];
        for (int k = 0; k < d; ++k) o[k] += m * c[k];
        c += d;
      }
    }
  }

 private:
  static cplx ipow(cplx z, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
  }

  struct Term {
    int slot;
    int monomial;
  };
  std::vector<Exponents> monomials_;
  std::vector<Term> terms_;
  std::vector<cplx> coeffs_;
};

// out += scale * D_a(slot) at node p, using the node's own stencil.
void derivative_at(const GridDomain& dom, const SlotBuffer& buf, int slot, std::size_t p, int a,
                   cplx scale, cplx* out) {
  const int d = buf.d;
  auto add = [&](std::int64_t q, double w) {
    const cplx* v = buf.at(static_cast<std::size_t>(q), slot);
    const cplx c = scale * w;
    for (int k = 0; k < d; ++k) out[k] += c * v[k];
  };
  switch (dom.stencil(p, a)) {
    case Stencil::centered:
      add(dom.step(p, a, 1), 1.0);
      add(dom.step(p, a, -1), -1.0);
      break;
    case Stencil::forward:
      add(static_cast<std::int64_t>(p), -3.0);
      add(dom.step(p, a, 1), 4.0);
      add(dom.neighbor(p, a, 2), -1.0);
      break;
    case Stencil::backward:
      add(static_cast<std::int64_t>(p), 3.0);
      add(dom.step(p, a, -1), -4.0);
      add(dom.neighbor(p, a, -2), 1.0);
      break;
    case Stencil::none:
      break;
  }
}

// out += scale * dbar_j(slot) at node p.
void dbar_at(const GridDomain& dom, const SlotBuffer& buf, int slot, std::size_t p, int j, cplx scale,
             cplx* out) {
  const double inv = 1.0 / (2.0 * dom.spacing());
  const int ax = 2 * j;
  const int ay = ax + 1;
  if (dom.stencil(p, ax) == Stencil::centered && dom.stencil(p, ay) == Stencil::centered) {
    const cplx cx = 0.5 * inv * scale;
    const cplx cy = cplx(0.0, 0.5) * inv * scale;
    const cplx* xp = buf.at(static_cast<std::size_t>(dom.step(p, ax, 1)), slot);
    const cplx* xm = buf.at(static_cast<std::size_t>(dom.step(p, ax, -1)), slot);
    const cplx* yp = buf.at(static_cast<std::size_t>(dom.step(p, ay, 1)), slot);
    const cplx* ym = buf.at(static_cast<std::size_t>(dom.step(p, ay, -1)), slot);
    for (int k = 0; k < buf.d; ++k) out[k] += cx * (xp[k] - xm[k]) + cy * (yp[k] - ym[k]);
    return;
  }
  derivative_at(dom, buf, slot, p, ax, 0.5 * inv * scale, out);
  derivative_at(dom, buf, slot, p, ay, cplx(0.0, 0.5) * inv * scale, out);
}

// (dbar of the 1-form in slots s1, s2)_{12} = dbar_1(s2) - dbar_2(s1).
void dbar12_at(const GridDomain& dom, const SlotBuffer& buf, int s1, int s2, std::size_t p, cplx* out) {
  dbar_at(dom, buf, s2, p, 0, 1.0, out);
  dbar_at(dom, buf, s1, p, 1, -1.0, out);
}

// out += scale * [a ^ b]_{12} = scale * ([a1, b2] - [a2, b1]).
void wedge_at(const LieAlgebra& g, const cplx* a1, const cplx* a2, const cplx* b1, const cplx* b2,
              double scale, cplx* out) {
  g.bracket_accumulate(a1, b2, scale, out);
  g.bracket_accumulate(a2, b1, -scale, out);
}

// out += scale * [a ^ a]_{12} / 2 = scale * [a1, a2].
void half_wedge_self_at(const LieAlgebra& g, const cplx* a1, const cplx* a2, double scale, cplx* out) {
  g.bracket_accumulate(a1, a2, scale, out);
}

double distance(const cplx* a, const cplx* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += std::norm(a[k] - b[k]);
  return std::sqrt(s);
}

enum InSlot { kAlpha1, kAlpha2, kB1, kB2, kU, kInSlots };
enum MidSlot { kGauged1, kGauged2, kDbarAlpha, kObstruction, kTransported, kMidSlots };

// Gauged form on columns lo-1..hi+1; obstruction of alpha and its Ad_exp(-u)
// transport on the owned columns lo..hi.
template <class M>
void gauge_pass(const GridDomain& dom, const LieAlgebra& g, int lo, int hi, const SlotBuffer& in,
                SlotBuffer& mid) {
  const int d = g.dim();
  const bool abelian = g.nonzero_constants().empty();
  using V = Eigen::Matrix<cplx, M::RowsAtCompileTime, 1, 0, M::MaxRowsAtCompileTime, 1>;
  using CMap = Eigen::Map<const V>;
  using VMap = Eigen::Map<V>;
  M E;
  M D;
  V du(d);
  V f(d);
  const SeriesOptions series;
  for (std::size_t p = 0; p < dom.size(); ++p) {
    const int x = dom.lattice(p, 0);
    if (x < lo - 1 || x > hi + 1) continue;
    const bool owned = x >= lo && x <= hi;
    if (!abelian) g.gauge_factors_into(in.at(p, kU), series, E, D);
    for (int j = 0; j < 2; ++j) {
      du.setZero();
      dbar_at(dom, in, kU, p, j, 1.0, du.data());
      const CMap a(in.at(p, kAlpha1 + j), d);
      VMap out(mid.at(p, kGauged1 + j), d);
      if (abelian) {
        out = a + du;
      } else {
        out.noalias() = E * a;
        out.noalias() += D * du;
      }
    }
    if (!owned) continue;
    cplx* da = mid.at(p, kDbarAlpha);
    std::fill(da, da + d, cplx{});
    dbar12_at(dom, in, kAlpha1, kAlpha2, p, da);
    f = CMap(da, d);
    half_wedge_self_at(g, in.at(p, kAlpha1), in.at(p, kAlpha2), 1.0, f.data());
    VMap(mid.at(p, kObstruction), d) = f;
    VMap tr(mid.at(p, kTransported), d);
    if (abelian) {
      tr = f;
    } else {
      tr.noalias() = E * f;
    }
  }
}

struct SuiteMaxima {
  double sum_rule = 0.0;
  double covariance = 0.0;
  double kj = 0.0;
  double curvature = 0.0;
};

void identity_pass(const GridDomain& dom, const LieAlgebra& g, int lo, int hi, const SlotBuffer& in,
                   const SlotBuffer& mid, SuiteMaxima& acc) {
  const int d = g.dim();
  const int r = g.representation_size();
  const auto rr = static_cast<std::size_t>(r) * r;
  std::vector<cplx> basis(static_cast<std::size_t>(d) * rr);
  for (int i = 0; i < d && r > 0; ++i)
    std::copy_n(g.representation()[static_cast<std::size_t>(i)].data(), rr,
                basis.begin() + static_cast<std::ptrdiff_t>(i * rr));
  auto represent = [&](const cplx* v, cplx* m) {
    std::fill(m, m + rr, cplx{});
    for (int i = 0; i < d; ++i)
      for (std::size_t k = 0; k < rr; ++k) m[k] += v[i] * basis[i * rr + k];
  };
  std::vector<cplx> db(static_cast<std::size_t>(d)), dg(db), lhs(db), rhs(db), bsum1(db), bsum2(db), B1(db),
      B2(db);
  std::vector<cplx> r1(rr), r2(rr), rd(rr), rf(rr);
  for (std::size_t p = 0; p < dom.size(); ++p) {
    const int x = dom.lattice(p, 0);
    if (x < lo || x > hi) continue;
    const cplx* a1 = in.at(p, kAlpha1);
    const cplx* a2 = in.at(p, kAlpha2);
    const cplx* b1 = in.at(p, kB1);
    const cplx* b2 = in.at(p, kB2);
    const cplx* f = mid.at(p, kObstruction);
    const cplx* da = mid.at(p, kDbarAlpha);
    std::fill(db.begin(), db.end(), cplx{});
    dbar12_at(dom, in, kB1, kB2, p, db.data());

    // obstruction(alpha + b) against the expanded right-hand side.
    for (int k = 0; k < d; ++k) {
      lhs[k] = da[k] + db[k];
      bsum1[k] = a1[k] + b1[k];
      bsum2[k] = a2[k] + b2[k];
      rhs[k] = f[k] + db[k];
    }
    half_wedge_self_at(g, bsum1.data(), bsum2.data(), 1.0, lhs.data());
    wedge_at(g, a1, a2, b1, b2, 1.0, rhs.data());
    half_wedge_self_at(g, b1, b2, 1.0, rhs.data());
    acc.sum_rule = std::max(acc.sum_rule, distance(lhs.data(), rhs.data(), d));

    if (r > 0) {
      represent(a1, r1.data());
      represent(a2, r2.data());
      represent(da, rd.data());
      represent(f, rf.data());
      double sq = 0.0;
      for (int col = 0; col < r; ++col)
        for (int row = 0; row < r; ++row) {
          cplx c = rd[static_cast<std::size_t>(col * r + row)];
          for (int k = 0; k < r; ++k)
            c += r1[static_cast<std::size_t>(k * r + row)] * r2[static_cast<std::size_t>(col * r + k)] -
                 r2[static_cast<std::size_t>(k * r + row)] * r1[static_cast<std::size_t>(col * r + k)];
          sq += std::norm(c - rf[static_cast<std::size_t>(col * r + row)]);
        }
      acc.curvature = std::max(acc.curvature, std::sqrt(sq));
    }

    if (!dom.double_interior(p)) continue;
    const cplx* g1 = mid.at(p, kGauged1);
    const cplx* g2 = mid.at(p, kGauged2);
    const cplx* tr = mid.at(p, kTransported);
    std::fill(dg.begin(), dg.end(), cplx{});
    dbar12_at(dom, mid, kGauged1, kGauged2, p, dg.data());

    // obstruction(gauged) against Ad_exp(-u) obstruction(alpha).
    lhs = dg;
    half_wedge_self_at(g, g1, g2, 1.0, lhs.data());
    acc.covariance = std::max(acc.covariance, distance(lhs.data(), tr, d));

    // With B = gauged - alpha: dbar B + [alpha ^ B] + 1/2 [B ^ B] against (Ad_exp(-u) - 1) f.
    for (int k = 0; k < d; ++k) {
      B1[k] = g1[k] - a1[k];
      B2[k] = g2[k] - a2[k];
      lhs[k] = dg[k] - da[k];
      rhs[k] = tr[k] - f[k];
    }
    wedge_at(g, a1, a2, B1.data(), B2.data(), 1.0, lhs.data());
    half_wedge_self_at(g, B1.data(), B2.data(), 1.0, lhs.data());
    acc.kj = std::max(acc.kj, distance(lhs.data(), rhs.data(), d));
  }
}

std::vector<IdentityDefect> defect_rows(const LieAlgebra& g, const IdentitySuiteOptions& opts,
                                        const SuiteMaxima& m) {
  const bool abelian = g.nonzero_constants().empty();
  const double tol = abelian ? opts.abelian_tolerance : opts.tolerance;
  std::vector<IdentityDefect> rows{{"sum_rule", g.id(), m.sum_rule, tol},
                                   {"gauge_covariance", g.id(), m.covariance, tol},
                                   {"kj", g.id(), m.kj, tol}};
  if (g.has_representation()) rows.push_back({"rep_curvature", g.id(), m.curvature, tol});
  return rows;
}

}  // namespace

std::vector<IdentityDefect> run_identity_suite(const LieAlgebra& g, const IdentitySuiteOptions& opts) {
  if (opts.halo < 2) throw DomainError("identity suite needs a halo of at least 2 columns");
  if (opts.slab_columns < 1) throw DomainError("identity suite needs at least one column per slab");
  const SuiteInputs inputs = draw_inputs(g, opts);
  const MonomialSampler sampler({&inputs.alpha.components[0], &inputs.alpha.components[1],
                                 &inputs.b.components[0], &inputs.b.components[1],
                                 &inputs.u.components[0]});
  const int d = g.dim();
  const int R = GridDomain::lattice_radius_for(opts.radius, opts.spacing);
  // Central slabs first: they are the largest, so the buffers never grow.
  std::vector<int> starts;
  for (int lo = -R; lo <= R; lo += opts.slab_columns) starts.push_back(lo);
  auto offcenter = [&](int lo) { return std::abs(2 * lo + opts.slab_columns - 1); };
  std::stable_sort(starts.begin(), starts.end(), [&](int a, int b) { return offcenter(a) < offcenter(b); });
  SuiteMaxima acc;
  SlotBuffer in(d, kInSlots);
  SlotBuffer mid(d, kMidSlots);
  for (const int lo : starts) {
    const int hi = std::min(R, lo + opts.slab_columns - 1);
    const GridDomain slab(2, opts.radius, opts.spacing, 0.5, LatticeWindow{lo - opts.halo, hi + opts.halo});
    in.reserve_nodes(slab.size());
    sampler.sample(slab, in);
    mid.reserve_nodes(slab.size());
    if (d == 3) {
      gauge_pass<Eigen::Matrix3cd>(slab, g, lo, hi, in, mid);
    } else if (d <= kSmallMatMax) {
      gauge_pass<SmallMat>(slab, g, lo, hi, in, mid);
    } else {
      gauge_pass<Mat>(slab, g, lo, hi, in, mid);
    }
    identity_pass(slab, g, lo, hi, in, mid, acc);
  }
  return defect_rows(g, opts, acc);
}

std::vector<IdentityDefect> run_identity_suite_reference(const LieAlgebra& g,
                                                        const IdentitySuiteOptions& opts) {
  if (opts.halo < 2) throw DomainError("identity suite needs a halo of at least 2 columns");
  auto algebra = std::make_shared<const LieAlgebra>(g);
  std::mt19937_64 rng(opts.seed);
  const PolynomialForm alpha_c = random_polynomial_form(g, 2, 1, opts.degree, opts.terms, opts.input_bound, rng);
  const PolynomialForm b_c = random_polynomial_form(g, 2, 1, opts.degree, opts.terms, opts.input_bound, rng);
  const PolynomialForm u_c = random_polynomial_form(g, 2, 0, opts.degree, opts.terms, opts.input_bound, rng);

  const bool abelian = g.nonzero_constants().empty();
  const double tol = abelian ? opts.abelian_tolerance : opts.tolerance;
  const bool rep = g.has_representation();
  double sum_rule = 0.0;
  double covariance = 0.0;
  double kj = 0.0;
  double curvature = 0.0;

  const int R = GridDomain::lattice_radius_for(opts.radius, opts.spacing);
  for (int lo = -R; lo <= R; lo += opts.slab_columns) {
    const int hi = std::min(R, lo + opts.slab_columns - 1);
    auto slab = std::make_shared<const GridDomain>(
        2, opts.radius, opts.spacing, 0.5, LatticeWindow{lo - opts.halo, hi + opts.halo});
    const auto all = owned_mask(*slab, lo, hi, MaskKind::all);
    const auto dint = owned_mask(*slab, lo, hi, MaskKind::double_interior);
    const GForm alpha = sample_polynomial_form(slab, algebra, alpha_c);
    const GForm b = sample_polynomial_form(slab, algebra, b_c);
    const GForm u = sample_polynomial_form(slab, algebra, u_c);

    const GForm f_alpha = obstruction(alpha);
    {
      GForm rhs = f_alpha + dbar(b);
      rhs += wedge_bracket(alpha, b);
      GForm bb = wedge_bracket(b, b);
      bb *= 0.5;
      rhs += bb;
      sum_rule = std::max(sum_rule, max_difference(obstruction(alpha + b), rhs, all));
    }
    GForm transported = f_alpha;
    const GForm gauged = gauge_transform(alpha, u, {}, &transported);
    covariance = std::max(covariance, max_difference(obstruction(gauged), transported, dint));
    kj = std::max(kj, kj_identity_defect(alpha, gauged, f_alpha, transported, dint));
    if (rep) curvature = std::max(curvature, rep_curvature(alpha, all).max_deviation);
  }
  std::vector<IdentityDefect> rows{{"sum_rule", g.id(), sum_rule, tol},
                                   {"gauge_covariance", g.id(), covariance, tol},
                                   {"kj", g.id(), kj, tol}};
  if (rep) rows.push_back({"rep_curvature", g.id(), curvature, tol});
  return rows;
}

double dbar_dbar_defect(const LieAlgebra& g, double radius, double spacing, int samples,
                        std::uint64_t seed) {
  auto algebra = std::make_shared<const LieAlgebra>(g);
  auto dom = std::make_shared<const GridDomain>(2, radius, spacing);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const PolynomialForm pf = random_polynomial_form(g, 2, 0, 3, 10, 1.0, rng);
    const GForm u = sample_polynomial_form(dom, algebra, pf);
    worst = std::max(worst, dbar(dbar(u)).sup_norm(dom->double_interior_mask()));
  }
  return worst;
}

}  // namespace holoframe
