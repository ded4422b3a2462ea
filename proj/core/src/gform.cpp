#include "holoframe/gform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace holoframe {

std::vector<std::vector<int>> form_multi_indices(int n, int q) {
  std::vector<std::vector<int>> out;
  if (q < 0 || q > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(q));
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == q) {
      out.push_back(idx);
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[static_cast<std::size_t>(pos)] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

int form_component_count(int n, int q) { return static_cast<int>(form_multi_indices(n, q).size()); }

GForm::GForm(DomainPtr domain, AlgebraPtr algebra, int degree)
    : domain_(std::move(domain)), algebra_(std::move(algebra)), degree_(degree) {
  if (!domain_ || !algebra_) throw DimensionError("GForm needs a domain and an algebra");
  if (degree_ < 0 || degree_ > 2) throw DimensionError("form degree must be 0, 1 or 2");
  // Degree above n is the empty form (no components), used for n = 1 obstructions.
  components_ = degree_ > domain_->n() ? 0 : form_component_count(domain_->n(), degree_);
  data_.assign(static_cast<std::size_t>(components_) * domain_->size() * algebra_->dim(), cplx{});
}

GForm GForm::sample(DomainPtr domain, AlgebraPtr algebra, int degree,
                    const std::function<AlgebraElement(std::size_t, int)>& f) {
  GForm out(std::move(domain), std::move(algebra), degree);
  for (int c = 0; c < out.components(); ++c)
    for (std::size_t p = 0; p < out.nodes(); ++p) {
      const AlgebraElement v = f(p, c);
      if (v.size() != out.dim()) throw DimensionError("sampled value has wrong dimension");
      out.value(c, p) = v;
    }
  return out;
}

std::vector<int> GForm::multi_index(int component) const {
  return form_multi_indices(domain_->n(), degree_).at(static_cast<std::size_t>(component));
}

double GForm::sup_norm(std::span<const std::uint8_t> mask) const {
  double worst = 0.0;
  const auto d = static_cast<std::size_t>(dim());
  for (std::size_t p = 0; p < nodes(); ++p) {
    if (!mask.empty() && !mask[p]) continue;
    double sq = 0.0;
    for (int c = 0; c < components_; ++c) {
      const cplx* v = at(c, p);
      for (std::size_t k = 0; k < d; ++k) sq += std::norm(v[k]);
    }
    worst = std::max(worst, sq);
  }
  return std::sqrt(worst);
}

bool GForm::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](cplx v) { return v == cplx{}; });
}

bool GForm::compatible(const GForm& other) const {
  return degree_ == other.degree_ && algebra_->dim() == other.algebra_->dim() &&
         (algebra_ == other.algebra_ || algebra_->id() == other.algebra_->id()) &&
         domain_->same_geometry(*other.domain_);
}

void GForm::require_compatible(const GForm& other, const char* what) const {
  if (!compatible(other)) throw DimensionError(std::string(what) + ": mismatched forms");
}

GForm& GForm::operator+=(const GForm& other) {
  require_compatible(other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

GForm& GForm::operator-=(const GForm& other) {
  require_compatible(other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

GForm& GForm::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

}  // namespace holoframe
