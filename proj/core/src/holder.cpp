#include "holoframe/holder.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "holoframe/form_ops.hpp"

namespace holoframe {

HolderSpec HolderSpec::from_kappa(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
  const double k = std::floor(kappa);
  const double nu = kappa - k;
  if (nu < 1e-12 || nu > 1.0 - 1e-12) throw DomainError("kappa must not be an integer");
  if (k > 2) throw DomainError("derivative orders above 2 are not supported");
  return HolderSpec{kappa, static_cast<int>(k), nu};
}

nlohmann::json HolderReport::to_json() const {
  return nlohmann::json{{"kappa", kappa},     {"k", k},
                        {"nu", nu},           {"value", value},
                        {"sup_terms", sup_terms}, {"seminorm", seminorm},
                        {"pair_count", pair_count}, {"seed", seed}};
}

GForm real_partial(const GForm& f, int a) {
  GForm out(f.domain_ptr(), f.algebra_ptr(), f.degree());
  for (int c = 0; c < f.components(); ++c)
    kernels::derivative_accumulate(f.domain(), f.at(c, 0), f.dim(), a, 1.0, out.at(c, 0));
  return out;
}

namespace {

// Node-major packing of several forms: [node][field][component*dim].
struct Packed {
  std::size_t width = 0;  // complex entries per field
  std::size_t fields = 0;
  std::vector<cplx> data;

  const cplx* at(std::size_t p, std::size_t fld) const {
    return data.data() + (p * fields + fld) * width;
  }
};

Packed pack(const std::vector<GForm>& forms, const std::vector<std::size_t>& nodes) {
  Packed out;
  out.fields = forms.size();
  if (forms.empty()) return out;
  const auto d = static_cast<std::size_t>(forms[0].dim());
  out.width = d * static_cast<std::size_t>(forms[0].components());
  out.data.resize(nodes.size() * out.fields * out.width);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t fl = 0; fl < out.fields; ++fl) {
      cplx* dst = out.data.data() + (i * out.fields + fl) * out.width;
      for (int c = 0; c < forms[fl].components(); ++c) {
        const cplx* src = forms[fl].at(c, nodes[i]);
        std::copy(src, src + d, dst + static_cast<std::size_t>(c) * d);
      }
    }
  return out;
}

double pointwise_norm(const cplx* v, std::size_t w) {
  double s = 0.0;
  for (std::size_t k = 0; k < w; ++k) s += std::norm(v[k]);
  return std::sqrt(s);
}

// Largest over fields of ||F(x) - F(y)||^2.
double pair_difference_sq(const Packed& P, std::size_t i, std::size_t j) {
  double worst = 0.0;
  for (std::size_t fl = 0; fl < P.fields; ++fl) {
    const cplx* a = P.at(i, fl);
    const cplx* b = P.at(j, fl);
    double s = 0.0;
    for (std::size_t k = 0; k < P.width; ++k) s += std::norm(a[k] - b[k]);
    worst = std::max(worst, s);
  }
  return worst;
}

}  // namespace

HolderReport holder_norm(const GForm& f, const HolderSpec& spec, const HolderOptions& opts) {
  const HolderSpec s = HolderSpec::from_kappa(spec.kappa);
  const GridDomain& dom = f.domain();
  const int D = dom.real_dim();
  if (!opts.mask.empty() && opts.mask.size() != dom.size())
    throw DimensionError("holder_norm: mask size mismatch");
  if (s.k > 0 && dom.lattice_radius() < 2 * s.k + 1)
    throw DomainError("holder_norm: grid too coarse for the derivative order");

  HolderReport rep;
  rep.kappa = s.kappa;
  rep.k = s.k;
  rep.nu = s.nu;
  rep.seed = opts.seed;

  std::vector<std::size_t> nodes;
  for (std::size_t p = 0; p < dom.size(); ++p)
    if (opts.mask.empty() || opts.mask[p]) nodes.push_back(p);
  if (nodes.empty()) throw DomainError("holder_norm: empty node set");

  // Derivative fields by order: order 0 is f itself.
  std::vector<GForm> current{f};
  std::vector<std::vector<int>> current_index{{}};
  for (int m = 0;; ++m) {
    const Packed P = pack(current, nodes);
    double sup = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t fl = 0; fl < P.fields; ++fl) sup = std::max(sup, pointwise_norm(P.at(i, fl), P.width));
    rep.sup_terms.push_back(sup);
    if (m == s.k) {
      // Seminorm of the order-k fields.
      const double h = dom.spacing();
      auto lattice_dist2 = [&](std::size_t i, std::size_t j) {
        std::int64_t d2 = 0;
        for (int a = 0; a < D; ++a) {
          const std::int64_t t = dom.lattice(nodes[i], a) - dom.lattice(nodes[j], a);
          d2 += t * t;
        }
        return d2;
      };
      const int R = dom.lattice_radius();
      std::vector<double> inv_pow(static_cast<std::size_t>(4 * D) * R * R + 1, 0.0);
      for (std::size_t q = 1; q < inv_pow.size(); ++q)
        inv_pow[q] = std::pow(h * h * static_cast<double>(q), -s.nu);  // |x-y|^{-2 nu}
      double worst = 0.0;
      std::uint64_t count = 0;
      const std::size_t N = nodes.size();
      if (opts.force_exhaustive || N <= opts.exhaustive_limit) {
        rep.exhaustive = true;
        for (std::size_t i = 0; i < N; ++i)
          for (std::size_t j = i + 1; j < N; ++j) {
            const double v = pair_difference_sq(P, i, j) * inv_pow[static_cast<std::size_t>(lattice_dist2(i, j))];
            worst = std::max(worst, v);
          }
        count = static_cast<std::uint64_t>(N) * (N - 1) / 2;
      } else {
        std::vector<std::int64_t> position(dom.size(), -1);
        for (std::size_t i = 0; i < N; ++i) position[nodes[i]] = static_cast<std::int64_t>(i);
        auto visit = [&](std::size_t i, std::size_t j) {
          worst = std::max(worst, pair_difference_sq(P, i, j) *
                                      inv_pow[static_cast<std::size_t>(lattice_dist2(i, j))]);
          ++count;
        };
        for (std::size_t i = 0; i < N; ++i)
          for (int a = 0; a < D; ++a) {
            const auto nb = dom.step(nodes[i], a, 1);
            if (nb >= 0 && position[static_cast<std::size_t>(nb)] >= 0)
              visit(i, static_cast<std::size_t>(position[static_cast<std::size_t>(nb)]));
          }
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<std::size_t> pick(0, N - 1);
        std::normal_distribution<double> gauss;
        std::uniform_real_distribution<double> unit;
        const double max_len = 2.0 * R * std::sqrt(static_cast<double>(dom.n()));
        const int decades = std::max(1, static_cast<int>(std::ceil(std::log10(max_len))));
        const std::size_t per_decade = opts.sampled_pairs / static_cast<std::size_t>(decades);
        std::array<int, 4> target{};
        for (int dec = 0; dec < decades; ++dec) {
          const double lo = std::pow(10.0, dec);
          const double hi = std::min(max_len, std::pow(10.0, dec + 1));
          std::size_t got = 0;
          for (std::size_t attempt = 0; got < per_decade && attempt < 4 * per_decade; ++attempt) {
            const std::size_t i = pick(rng);
            const double len = lo * std::pow(hi / lo, unit(rng));
            std::array<double, 4> dir{};
            double nrm = 0.0;
            for (int a = 0; a < D; ++a) {
              dir[static_cast<std::size_t>(a)] = gauss(rng);
              nrm += dir[static_cast<std::size_t>(a)] * dir[static_cast<std::size_t>(a)];
            }
            nrm = std::sqrt(nrm);
            if (nrm == 0.0) continue;
            for (int a = 0; a < D; ++a)
              target[static_cast<std::size_t>(a)] =
                  dom.lattice(nodes[i], a) +
                  static_cast<int>(std::lround(len * dir[static_cast<std::size_t>(a)] / nrm));
            const auto j = dom.find(std::span<const int>(target.data(), static_cast<std::size_t>(D)));
            if (!j || position[*j] < 0 || *j == nodes[i]) continue;
            visit(i, static_cast<std::size_t>(position[*j]));
            ++got;
          }
        }
      }
      rep.seminorm = std::sqrt(worst);
      rep.pair_count = count;
      break;
    }
    std::vector<GForm> next;
    std::vector<std::vector<int>> next_index;
    for (std::size_t fl = 0; fl < current.size(); ++fl) {
      const int start = current_index[fl].empty() ? 0 : current_index[fl].back();
      for (int a = start; a < D; ++a) {
        next.push_back(real_partial(current[fl], a));
        auto idx = current_index[fl];
        idx.push_back(a);
        next_index.push_back(idx);
      }
    }
    current = std::move(next);
    current_index = std::move(next_index);
  }
  rep.value = std::max(rep.seminorm, *std::max_element(rep.sup_terms.begin(), rep.sup_terms.end()));
  return rep;
}

namespace {

// Lagrange weights for nodes base-1..base+2 at offset t in [0,1) from base.
std::array<double, 4> cubic_weights(double t) {
  return {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
          -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
}

}  // namespace

GForm rescale(const GForm& alpha, double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw DomainError("rescale: eps must lie in (0, 1]");
  if (eps == 1.0) return alpha;
  const GridDomain& dom = alpha.domain();
  const int D = dom.real_dim();
  const auto d = static_cast<std::size_t>(alpha.dim());
  const double factor = std::pow(eps, alpha.degree());
  GForm out(alpha.domain_ptr(), alpha.algebra_ptr(), alpha.degree());

  std::array<int, 4> base{};
  std::array<double, 4> frac{};
  std::array<int, 4> c{};
  std::vector<std::pair<std::size_t, double>> taps;
  for (std::size_t p = 0; p < dom.size(); ++p) {
    for (int a = 0; a < D; ++a) {
      const double x = eps * dom.lattice(p, a);
      base[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(x));
      frac[static_cast<std::size_t>(a)] = x - base[static_cast<std::size_t>(a)];
    }
    taps.clear();
    // Cubic: 4^D taps.
    bool ok = true;
    int total = 1;
    for (int a = 0; a < D; ++a) total *= 4;
    for (int m = 0; m < total && ok; ++m) {
      double w = 1.0;
      int code = m;
      for (int a = 0; a < D; ++a) {
        const int o = code % 4;
        code /= 4;
        c[static_cast<std::size_t>(a)] = base[static_cast<std::size_t>(a)] - 1 + o;
        w *= cubic_weights(frac[static_cast<std::size_t>(a)])[static_cast<std::size_t>(o)];
      }
      const auto node = dom.find(std::span<const int>(c.data(), static_cast<std::size_t>(D)));
      if (!node) {
        ok = false;
        break;
      }
      if (w != 0.0) taps.emplace_back(*node, w);
    }
    if (!ok) {
      taps.clear();
      ok = true;
      for (int m = 0; m < (1 << D) && ok; ++m) {
        double w = 1.0;
        for (int a = 0; a < D; ++a) {
          const int o = (m >> a) & 1;
          c[static_cast<std::size_t>(a)] = base[static_cast<std::size_t>(a)] + o;
          const double t = frac[static_cast<std::size_t>(a)];
          w *= o ? t : 1.0 - t;
        }
        if (w == 0.0) continue;
        const auto node = dom.find(std::span<const int>(c.data(), static_cast<std::size_t>(D)));
        if (!node) {
          ok = false;
          break;
        }
        taps.emplace_back(*node, w);
      }
      if (!ok) throw DomainError("rescale: point eps*z is not resolvable on the grid");
    }
    for (int comp = 0; comp < alpha.components(); ++comp) {
      cplx* o = out.at(comp, p);
      for (const auto& [q, w] : taps) {
        const cplx* src = alpha.at(comp, q);
        for (std::size_t k = 0; k < d; ++k) o[k] += (factor * w) * src[k];
      }
    }
  }
  return out;
}

double scaling_margin(const GForm& alpha, double eps, const HolderSpec& spec,
                      const HolderOptions& opts) {
  if (!(eps > 0.0) || eps > 1.0) throw DomainError("scaling_margin: eps must lie in (0, 1]");
  const GridDomain& dom = alpha.domain();
  HolderOptions restricted = opts;
  restricted.mask = dom.ball_mask(eps * dom.radius());
  if (!opts.mask.empty())
    for (std::size_t p = 0; p < dom.size(); ++p) restricted.mask[p] = restricted.mask[p] && opts.mask[p];
  const double left = eps * holder_norm(alpha, spec, restricted).value;
  const double right = holder_norm(rescale(alpha, eps), spec, opts).value;
  return left - right;
}

}  // namespace holoframe
