#include "holoframe/grid_domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace holoframe {

namespace {

using Point = std::pair<int, int>;

// Disc lattice points with iterative removal of points lacking a second-order
// stencil along x or y.
std::vector<Point> pruned_disc(int R, double rr) {
  std::set<Point> pts;
  const double bound = rr * rr * (1.0 + 1e-12) + 1e-9;
  for (int i = -R; i <= R; ++i)
    for (int j = -R; j <= R; ++j)
      if (static_cast<double>(i) * i + static_cast<double>(j) * j <= bound) pts.insert({i, j});

  auto has = [&pts](int i, int j) { return pts.count({i, j}) != 0; };
  auto stencil_ok = [&has](int i, int j, int di, int dj) {
    const bool p1 = has(i + di, j + dj);
    const bool m1 = has(i - di, j - dj);
    return (p1 && m1) || (p1 && has(i + 2 * di, j + 2 * dj)) || (m1 && has(i - 2 * di, j - 2 * dj));
  };
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Point> drop;
    for (const auto& [i, j] : pts)
      if (!stencil_ok(i, j, 1, 0) || !stencil_ok(i, j, 0, 1)) drop.push_back({i, j});
    for (const auto& p : drop) pts.erase(p);
    changed = !drop.empty();
  }
  return {pts.begin(), pts.end()};
}

}  // namespace

GridDomain::GridDomain(int n, double radius, double spacing, double subdomain_fraction,
                       std::optional<LatticeWindow> window)
    : n_(n), r_(radius), h_(spacing), fraction_(subdomain_fraction), window_(window) {
  if (n_ != 1 && n_ != 2) throw DomainError("complex dimension must be 1 or 2");
  if (!(h_ > 0.0)) throw DomainError("grid spacing must be positive");
  if (!(r_ > 0.0)) throw DomainError("domain radius must be positive");
  if (!(fraction_ > 0.0 && fraction_ < 1.0)) throw DomainError("subdomain fraction must lie in (0,1)");
  const double rr = r_ / h_;
  R_ = lattice_radius_for(r_, h_);
  if (R_ < 3) throw DomainError("grid spacing too coarse for the radius");
  if (R_ > 16000) throw DomainError("grid too fine");

  const auto disc = pruned_disc(R_, rr);
  const int D = real_dim();

  box_lo_.fill(0);
  box_extent_.fill(1);
  for (int a = 0; a < D; ++a) {
    box_lo_[a] = -R_;
    box_extent_[a] = 2 * R_ + 1;
  }
  if (window_) {
    const int lo = std::max(-R_, window_->lo);
    const int hi = std::min(R_, window_->hi);
    if (lo > hi) throw DomainError("lattice window does not meet the domain");
    box_lo_[0] = lo;
    box_extent_[0] = hi - lo + 1;
  }
  box_stride_.fill(0);
  std::int64_t stride = 1;
  for (int a = D - 1; a >= 0; --a) {
    box_stride_[a] = stride;
    stride *= box_extent_[a];
  }
  box_to_node_.assign(static_cast<std::size_t>(stride), -1);

  auto in_window = [this](int x0) {
    return x0 >= box_lo_[0] && x0 < box_lo_[0] + box_extent_[0];
  };
  if (n_ == 1) {
    for (const auto& [i, j] : disc) {
      if (!in_window(i)) continue;
      coords_.push_back(static_cast<std::int16_t>(i));
      coords_.push_back(static_cast<std::int16_t>(j));
    }
  } else {
    for (const auto& [i1, j1] : disc) {
      if (!in_window(i1)) continue;
      for (const auto& [i2, j2] : disc) {
        coords_.push_back(static_cast<std::int16_t>(i1));
        coords_.push_back(static_cast<std::int16_t>(j1));
        coords_.push_back(static_cast<std::int16_t>(i2));
        coords_.push_back(static_cast<std::int16_t>(j2));
      }
    }
  }
  count_ = coords_.size() / D;
  if (count_ == 0) throw DomainError("empty grid domain");

  std::vector<std::int64_t> box(count_);
  for (std::size_t p = 0; p < count_; ++p) {
    std::int64_t idx = 0;
    for (int a = 0; a < D; ++a) idx += (coords_[p * D + a] - box_lo_[a]) * box_stride_[a];
    box[p] = idx;
    box_to_node_[static_cast<std::size_t>(idx)] = static_cast<std::int32_t>(p);
  }
  // Neighbor lookup through the box index; the coordinate bound check keeps
  // offsets from wrapping into the next row.
  auto nb = [&](std::size_t p, int a, int off) -> std::int32_t {
    const int x = coords_[p * D + a] - box_lo_[a] + off;
    if (x < 0 || x >= box_extent_[a]) return -1;
    return box_to_node_[static_cast<std::size_t>(box[p] + off * box_stride_[a])];
  };

  steps_.resize(count_ * D * 2);
  stencils_.resize(count_ * D);
  interior_.assign(count_, 1);
  for (std::size_t p = 0; p < count_; ++p) {
    for (int a = 0; a < D; ++a) {
      const std::int32_t m1 = nb(p, a, -1);
      const std::int32_t p1 = nb(p, a, 1);
      steps_[(p * D + a) * 2] = m1;
      steps_[(p * D + a) * 2 + 1] = p1;
      Stencil s;
      if (p1 >= 0 && m1 >= 0) {
        s = Stencil::centered;
      } else if (p1 >= 0 && nb(p, a, 2) >= 0) {
        s = Stencil::forward;
      } else if (m1 >= 0 && nb(p, a, -2) >= 0) {
        s = Stencil::backward;
      } else if (a == 0 && window_ && (coords_[p * D] - window_->lo <= 1 || window_->hi - coords_[p * D] <= 1)) {
        s = Stencil::none;
      } else {
        throw DomainError("lattice window too narrow for second-order stencils");
      }
      stencils_[p * D + a] = s;
      if (s != Stencil::centered) interior_[p] = 0;
    }
  }
  double_interior_.assign(count_, 0);
  for (std::size_t p = 0; p < count_; ++p) {
    if (!interior_[p]) continue;
    bool ok = true;
    for (int a = 0; a < D && ok; ++a)
      for (int off : {0, 1}) ok = ok && interior_[static_cast<std::size_t>(steps_[(p * D + a) * 2 + off])];
    double_interior_[p] = ok ? 1 : 0;
  }
  subdomain_ = ball_mask(fraction_ * r_);
  for (std::size_t p = 0; p < count_; ++p) subdomain_[p] = subdomain_[p] && interior_[p];
}

int GridDomain::lattice_radius_for(double radius, double spacing) {
  return static_cast<int>(std::floor(radius / spacing + 1e-9));
}

std::int64_t GridDomain::box_index(std::span<const int> c) const {
  std::int64_t idx = 0;
  for (int a = 0; a < real_dim(); ++a) {
    const std::int64_t off = c[a] - box_lo_[a];
    if (off < 0 || off >= box_extent_[a]) return -1;
    idx += off * box_stride_[a];
  }
  return idx;
}

std::optional<std::size_t> GridDomain::find(std::span<const int> lattice_coords) const {
  if (static_cast<int>(lattice_coords.size()) != real_dim()) throw DimensionError("find: wrong coordinate count");
  const auto idx = box_index(lattice_coords);
  if (idx < 0) return std::nullopt;
  const auto node = box_to_node_[static_cast<std::size_t>(idx)];
  if (node < 0) return std::nullopt;
  return static_cast<std::size_t>(node);
}

std::int64_t GridDomain::neighbor(std::size_t node, int a, int offset) const {
  const int D = real_dim();
  std::int64_t idx = 0;
  for (int b = 0; b < D; ++b) {
    std::int64_t off = coords_[node * D + b] - box_lo_[b];
    if (b == a) off += offset;
    if (off < 0 || off >= box_extent_[b]) return -1;
    idx += off * box_stride_[b];
  }
  return box_to_node_[static_cast<std::size_t>(idx)];
}

std::vector<std::uint8_t> GridDomain::ball_mask(double radius) const {
  std::vector<std::uint8_t> mask(count_, 0);
  const double bound = radius * radius * (1.0 + 1e-12) + 1e-300;
  for (std::size_t p = 0; p < count_; ++p) {
    bool inside = true;
    for (int j = 0; j < n_; ++j) inside = inside && std::norm(z(p, j)) <= bound;
    mask[p] = inside ? 1 : 0;
  }
  return mask;
}

GridDomain GridDomain::scaled(double eps) const {
  if (!(eps > 0.0)) throw DomainError("scale factor must be positive");
  return GridDomain(n_, r_ * eps, h_ * eps, fraction_, window_);
}

double GridDomain::cell_volume() const { return std::pow(h_, real_dim()); }

bool GridDomain::same_geometry(const GridDomain& other) const {
  if (this == &other) return true;
  return n_ == other.n_ && r_ == other.r_ && h_ == other.h_ && count_ == other.count_ &&
         coords_ == other.coords_;
}

}  // namespace holoframe
