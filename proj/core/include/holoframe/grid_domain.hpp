#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "holoframe/types.hpp"

namespace holoframe {

/// Stencil used for a first derivative along one real direction.
/// `none` only occurs within one column of the edges of a windowed domain, where the
/// window cuts off the one-sided stencil; derivatives there are zero.
enum class Stencil : std::uint8_t { centered, forward, backward, none };

/// Restricts a domain to lattice columns lo <= i_0 <= hi of the first real
/// coordinate (Re z_1). Used to process large polydiscs in slabs.
struct LatticeWindow {
  int lo = 0;
  int hi = 0;
};

/// Lattice (h Z)^{2n} intersected with the closed disc (n = 1) or polydisc
/// (n = 2) of radius r around the origin.
///
/// Lattice points without a second-order stencil in some real direction (the
/// tips of the disc) are pruned; the polydisc is the product of pruned discs.
/// Node order is lexicographic in the lattice coordinates, so it is identical
/// for a domain and any rescaled copy of it.
///
/// Real directions are numbered a = 2(j-1) for Re z_j and a = 2(j-1)+1 for
/// Im z_j.
class GridDomain {
 public:
  GridDomain(int n, double radius, double spacing, double subdomain_fraction = 0.5,
             std::optional<LatticeWindow> window = std::nullopt);

  int n() const { return n_; }
  int real_dim() const { return 2 * n_; }
  double radius() const { return r_; }
  double spacing() const { return h_; }
  double subdomain_fraction() const { return fraction_; }
  /// Lattice radius R = floor(r/h): coordinates lie in [-R, R].
  int lattice_radius() const { return R_; }
  /// The lattice radius a domain of this radius and spacing would have.
  static int lattice_radius_for(double radius, double spacing);
  const std::optional<LatticeWindow>& window() const { return window_; }

  std::size_t size() const { return count_; }

  /// Integer lattice coordinate of a node along real direction a.
  int lattice(std::size_t node, int a) const { return coords_[node * real_dim() + a]; }
  double coordinate(std::size_t node, int a) const { return h_ * lattice(node, a); }
  cplx z(std::size_t node, int j) const {
    return {coordinate(node, 2 * j), coordinate(node, 2 * j + 1)};
  }

  /// Node at lattice coordinates, if present.
  std::optional<std::size_t> find(std::span<const int> lattice_coords) const;
  /// Node reached from `node` by `offset` lattice steps along direction a, or -1.
  std::int64_t neighbor(std::size_t node, int a, int offset) const;
  /// Cached +-1 neighbors: `step(node, a, +1)` equals neighbor(node, a, 1).
  std::int32_t step(std::size_t node, int a, int sign) const {
    return steps_[(node * real_dim() + a) * 2 + (sign > 0 ? 1 : 0)];
  }

  Stencil stencil(std::size_t node, int a) const { return stencils_[node * real_dim() + a]; }

  /// Nodes whose stencils are centered in every direction.
  bool interior(std::size_t node) const { return interior_[node] != 0; }
  /// Interior nodes whose +-1 neighbors in every direction are interior.
  bool double_interior(std::size_t node) const { return double_interior_[node] != 0; }
  /// Nodes of the compact subdomain V = polydisc of radius fraction * r,
  /// intersected with the interior.
  bool in_subdomain(std::size_t node) const { return subdomain_[node] != 0; }

  const std::vector<std::uint8_t>& interior_mask() const { return interior_; }
  const std::vector<std::uint8_t>& double_interior_mask() const { return double_interior_; }
  const std::vector<std::uint8_t>& subdomain_mask() const { return subdomain_; }
  std::vector<std::uint8_t> all_mask() const { return std::vector<std::uint8_t>(count_, 1); }
  /// Nodes with |z_j| <= radius for all j.
  std::vector<std::uint8_t> ball_mask(double radius) const;

  /// Same lattice with radius and spacing multiplied by eps; node i of the
  /// result sits at eps times the position of node i here.
  GridDomain scaled(double eps) const;

  /// Quadrature weight h^{2n} of one lattice cell.
  double cell_volume() const;

  bool same_geometry(const GridDomain& other) const;

 private:
  std::int64_t box_index(std::span<const int> c) const;

  int n_;
  double r_;
  double h_;
  double fraction_;
  int R_;
  std::optional<LatticeWindow> window_;
  std::size_t count_ = 0;
  std::vector<std::int16_t> coords_;
  std::array<int, 4> box_lo_{};
  std::array<std::int64_t, 4> box_extent_{};
  std::array<std::int64_t, 4> box_stride_{};
  std::vector<std::int32_t> box_to_node_;
  std::vector<std::int32_t> steps_;
  std::vector<Stencil> stencils_;
  std::vector<std::uint8_t> interior_;
  std::vector<std::uint8_t> double_interior_;
  std::vector<std::uint8_t> subdomain_;
};

}  // namespace holoframe
