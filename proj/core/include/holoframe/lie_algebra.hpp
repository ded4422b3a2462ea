#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "holoframe/matrix_exp.hpp"
#include "holoframe/types.hpp"

namespace holoframe {

/// One nonzero structure constant: [e_i, e_j] has coefficient `value` on e_k.
struct StructureConstant {
  int i = 0;
  int j = 0;
  int k = 0;
  cplx value;
};

/// Finite-dimensional complex Lie algebra given by structure constants in a
/// fixed basis, optionally with a matrix representation rho(e_i).
///
/// Construction only checks shapes. Validity (antisymmetry, Jacobi, the
/// representation being a homomorphism) is reported by jacobi_defect() and
/// representation_defect() so callers can decide how to react.
///
/// Immutable after construction; all member functions are const and
/// thread-safe.
class LieAlgebra {
 public:
  LieAlgebra(std::string id, int dim, const std::vector<StructureConstant>& constants,
             std::optional<int> nilpotency_order = std::nullopt,
             std::vector<Mat> representation = {}, std::vector<std::string> basis_names = {});

  static LieAlgebra abelian(int dim);
  static LieAlgebra heisenberg3();
  static LieAlgebra sl2C();
  static LieAlgebra gl(int r);

  /// `abelian(d)`, `heisenberg3`, `sl2C`, `gl(r)`.
  static LieAlgebra builtin(std::string_view name);

  /// Algebra definition document: dim, structure_constants as [i,j,k,re,im]
  /// triplets, optional nilpotency_order, optional matrix_rep as row-major
  /// [[re,im],...] lists, optional basis names and id.
  static LieAlgebra from_json(const nlohmann::json& doc);
  static LieAlgebra load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  const std::string& id() const { return id_; }
  int dim() const { return dim_; }
  std::optional<int> nilpotency_order() const { return nilpotency_; }
  bool has_representation() const { return !rep_.empty(); }
  int representation_size() const { return rep_.empty() ? 0 : static_cast<int>(rep_.front().rows()); }
  const std::vector<Mat>& representation() const { return rep_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  std::optional<int> basis_index(std::string_view name) const;
  AlgebraElement basis(int i) const;
  AlgebraElement zero() const { return AlgebraElement::Zero(dim_); }

  /// c[i][j][k], dense.
  cplx structure_constant(int i, int j, int k) const {
    return c_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  const std::vector<StructureConstant>& nonzero_constants() const { return nonzero_; }

  AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) const;

  /// out += scale * [a, b] on raw coefficient arrays of length dim().
  void bracket_accumulate(const cplx* a, const cplx* b, cplx scale, cplx* out) const;

  Mat ad_matrix(const AlgebraElement& a) const;
  template <class M>
  void ad_matrix_into(const cplx* a, M& out) const;

  /// e^{ad_u} = Ad_{exp u}.
  Mat ad_exp(const AlgebraElement& u, const SeriesOptions& opts = {}) const;
  /// D(ad_u) = sum_m (-ad_u)^m/(m+1)!, the pullback of the Maurer-Cartan form by exp.
  Mat dexp_factor(const AlgebraElement& u, const SeriesOptions& opts = {}) const;

  /// Per-node kernels on raw coefficient arrays. `ad` is scratch of size dim x dim.
  template <class M>
  void ad_exp_into(const cplx* u, double sign, const SeriesOptions& opts, M& out) const;
  template <class M>
  void dexp_factor_into(const cplx* u, const SeriesOptions& opts, M& out) const;
  /// Ad_exp(-u) and the dexp factor D(ad_u) together; both are series in -ad_u.
  template <class M>
  void gauge_factors_into(const cplx* u, const SeriesOptions& opts, M& ad_exp_minus, M& dexp) const;

  /// rho(a) = sum a_i rho(e_i).
  Mat represent(const AlgebraElement& a) const;
  /// Matrix exponential of rho(u).
  Mat exp_rep(const AlgebraElement& u) const;
  /// Least-squares coordinates of a matrix in span{rho(e_i)}.
  AlgebraElement coordinates_of(const Mat& m) const;
  /// False when rho is not injective on the basis; coordinates_of then
  /// returns the minimal-norm preimage.
  bool representation_faithful() const { return rep_rank_ == dim_; }

  /// max(antisymmetry defect, cyclic Jacobi defect) over basis triples;
  /// zero exactly for a valid Lie algebra.
  double jacobi_defect() const;
  double antisymmetry_defect() const;
  double cyclic_jacobi_defect() const;
  /// max_ij || rho([e_i,e_j]) - [rho(e_i), rho(e_j)] ||, 0 without a representation.
  double representation_defect() const;

 private:
  void check_truncation(const SeriesOptions& opts) const;

  std::string id_;
  int dim_ = 0;
  std::vector<cplx> c_;
  std::vector<StructureConstant> nonzero_;
  std::optional<int> nilpotency_;
  std::vector<Mat> rep_;
  std::vector<std::string> names_;
  Mat rep_basis_;  // columns vec(rho(e_i))
  Eigen::CompleteOrthogonalDecomposition<Mat> rep_solver_;
  int rep_rank_ = 0;
};

template <class M>
void LieAlgebra::ad_matrix_into(const cplx* a, M& out) const {
  out.setZero(dim_, dim_);
  // ad_a(e_j) = sum_i a_i [e_i, e_j] = sum_k a_i c[i][j][k] e_k
  for (const auto& s : nonzero_) out(s.k, s.j) += a[s.i] * s.value;
}

template <class M>
void LieAlgebra::ad_exp_into(const cplx* u, double sign, const SeriesOptions& opts,
                             M& out) const {
  check_truncation(opts);
  M ad;
  ad_matrix_into(u, ad);
  if (sign != 1.0) ad *= sign;
  if (nilpotency_) {
    out = exp_nilpotent(ad, *nilpotency_);
  } else {
    out = exp_series(ad, opts);
  }
}

template <class M>
void LieAlgebra::dexp_factor_into(const cplx* u, const SeriesOptions& opts, M& out) const {
  check_truncation(opts);
  M ad;
  ad_matrix_into(u, ad);
  ad *= -1.0;
  if (nilpotency_) {
    out = phi_nilpotent(ad, *nilpotency_);
  } else {
    out = phi_series(ad, opts);
  }
}

inline void LieAlgebra::bracket_accumulate(const cplx* a, const cplx* b, cplx scale, cplx* out) const {
  for (const auto& s : nonzero_) out[s.k] += (scale * s.value) * (a[s.i] * b[s.j]);
}

template <class M>
void LieAlgebra::gauge_factors_into(const cplx* u, const SeriesOptions& opts, M& ad_exp_minus,
                                    M& dexp) const {
  check_truncation(opts);
  M ad;
  ad_matrix_into(u, ad);
  ad *= -1.0;
  if (nilpotency_) {
    ad_exp_minus = exp_nilpotent(ad, *nilpotency_);
    dexp = phi_nilpotent(ad, *nilpotency_);
  } else {
    exp_phi_series(ad, opts, ad_exp_minus, dexp);
  }
}

}  // namespace holoframe
