#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "holoframe/grid_domain.hpp"
#include "holoframe/lie_algebra.hpp"

namespace holoframe {

using DomainPtr = std::shared_ptr<const GridDomain>;
using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Increasing multi-indices (i_1 < ... < i_q) in {0..n-1}, in the order used
/// for the components of a (0,q)-form.
std::vector<std::vector<int>> form_multi_indices(int n, int q);
int form_component_count(int n, int q);

/// Lie-algebra-valued (0,q)-form sampled on a grid: for every increasing
/// multi-index I, the coefficient of dzbar_I as an algebra element per node.
///
/// Storage is [component][node][coefficient]. The domain and algebra are
/// shared and immutable; a GForm is a value.
class GForm {
 public:
  GForm(DomainPtr domain, AlgebraPtr algebra, int degree);

  static GForm zeros(DomainPtr domain, AlgebraPtr algebra, int degree) {
    return GForm(std::move(domain), std::move(algebra), degree);
  }
  /// f(node, component) returns the coefficient as an algebra element.
  static GForm sample(DomainPtr domain, AlgebraPtr algebra, int degree,
                      const std::function<AlgebraElement(std::size_t, int)>& f);

  const GridDomain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  const LieAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  int degree() const { return degree_; }
  int components() const { return components_; }
  int dim() const { return algebra_->dim(); }
  std::size_t nodes() const { return domain_->size(); }
  std::vector<int> multi_index(int component) const;

  cplx* at(int component, std::size_t node) {
    return data_.data() + (static_cast<std::size_t>(component) * nodes() + node) * dim();
  }
  const cplx* at(int component, std::size_t node) const {
    return data_.data() + (static_cast<std::size_t>(component) * nodes() + node) * dim();
  }
  Eigen::Map<Vec> value(int component, std::size_t node) { return {at(component, node), dim()}; }
  Eigen::Map<const Vec> value(int component, std::size_t node) const {
    return {at(component, node), dim()};
  }
  /// Node-major block of one component: nodes() * dim() entries.
  std::span<cplx> component_data(int component) {
    return {at(component, 0), nodes() * static_cast<std::size_t>(dim())};
  }
  std::span<const cplx> component_data(int component) const {
    return {at(component, 0), nodes() * static_cast<std::size_t>(dim())};
  }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  /// Max over masked nodes of the Euclidean norm of the stacked coefficients
  /// of all components. Empty mask means all nodes.
  double sup_norm(std::span<const std::uint8_t> mask = {}) const;
  bool is_zero() const;

  GForm& operator+=(const GForm& other);
  GForm& operator-=(const GForm& other);
  GForm& operator*=(cplx s);
  friend GForm operator+(GForm a, const GForm& b) { return a += b; }
  friend GForm operator-(GForm a, const GForm& b) { return a -= b; }
  friend GForm operator*(cplx s, GForm a) { return a *= s; }

  /// Same domain geometry, algebra and degree.
  bool compatible(const GForm& other) const;
  void require_compatible(const GForm& other, const char* what) const;

 private:
  DomainPtr domain_;
  AlgebraPtr algebra_;
  int degree_;
  int components_;
  std::vector<cplx> data_;
};

}  // namespace holoframe
