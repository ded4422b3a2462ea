#include "holoframe/lie_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>

namespace holoframe {

namespace {

Mat unit(int r, int i, int j) {
  Mat m = Mat::Zero(r, r);
  m(i, j) = 1.0;
  return m;
}

int parse_parenthesized(std::string_view name, std::string_view prefix) {
  const auto inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), value);
  if (ec != std::errc() || ptr != inner.data() + inner.size() || value <= 0) {
    throw ParseError("bad algebra size in '" + std::string(name) + "'");
  }
  return value;
}

cplx read_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError("expected a number or [re, im]");
}

}  // namespace

LieAlgebra::LieAlgebra(std::string id, int dim, const std::vector<StructureConstant>& constants,
                       std::optional<int> nilpotency_order, std::vector<Mat> representation,
                       std::vector<std::string> basis_names)
    : id_(std::move(id)),
      dim_(dim),
      nilpotency_(nilpotency_order),
      rep_(std::move(representation)),
      names_(std::move(basis_names)) {
  if (dim_ <= 0) throw DimensionError("Lie algebra dimension must be positive");
  if (nilpotency_ && *nilpotency_ <= 0) throw DimensionError("nilpotency order must be positive");
  c_.assign(static_cast<std::size_t>(dim_) * dim_ * dim_, cplx{});
  for (const auto& s : constants) {
    if (s.i < 0 || s.j < 0 || s.k < 0 || s.i >= dim_ || s.j >= dim_ || s.k >= dim_) {
      throw DimensionError("structure constant index out of range");
    }
    c_[(static_cast<std::size_t>(s.i) * dim_ + s.j) * dim_ + s.k] += s.value;
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (const auto v = structure_constant(i, j, k); v != cplx{}) nonzero_.push_back({i, j, k, v});

  if (names_.empty()) {
    for (int i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i + 1));
  } else if (static_cast<int>(names_.size()) != dim_) {
    throw DimensionError("basis name count does not match dimension");
  }

  if (!rep_.empty()) {
    if (static_cast<int>(rep_.size()) != dim_) {
      throw DimensionError("matrix representation must list one matrix per basis element");
    }
    const auto r = rep_.front().rows();
    for (const auto& m : rep_) {
      if (m.rows() != r || m.cols() != r) throw DimensionError("representation matrices must be r x r");
    }
    rep_basis_.resize(r * r, dim_);
    for (int i = 0; i < dim_; ++i) rep_basis_.col(i) = rep_[i].reshaped();
    rep_solver_.compute(rep_basis_);
    rep_rank_ = static_cast<int>(rep_solver_.rank());
    if (rep_rank_ < dim_) {
      std::clog << "warning: representation of '" << id_
                << "' is not faithful on the basis; coordinates use least squares\n";
    }
  }
}

LieAlgebra LieAlgebra::abelian(int dim) {
  std::vector<Mat> rep;
  for (int i = 0; i < dim; ++i) rep.push_back(unit(dim, i, i));
  return LieAlgebra("abelian(" + std::to_string(dim) + ")", dim, {}, 1, std::move(rep));
}

LieAlgebra LieAlgebra::heisenberg3() {
  // [X, Y] = Z, Z central; strictly upper triangular 3x3 representation.
  std::vector<StructureConstant> c{{0, 1, 2, 1.0}, {1, 0, 2, -1.0}};
  std::vector<Mat> rep{unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)};
  return LieAlgebra("heisenberg3", 3, c, 2, std::move(rep), {"X", "Y", "Z"});
}

LieAlgebra LieAlgebra::sl2C() {
  // basis H, E, F: [H,E] = 2E, [H,F] = -2F, [E,F] = H
  std::vector<StructureConstant> c{{0, 1, 1, 2.0},  {1, 0, 1, -2.0}, {0, 2, 2, -2.0},
                                   {2, 0, 2, 2.0},  {1, 2, 0, 1.0},  {2, 1, 0, -1.0}};
  Mat h = Mat::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  std::vector<Mat> rep{h, unit(2, 0, 1), unit(2, 1, 0)};
  return LieAlgebra("sl2C", 3, c, std::nullopt, std::move(rep), {"H", "E", "F"});
}

LieAlgebra LieAlgebra::gl(int r) {
  if (r <= 0) throw DimensionError("gl(r) needs r > 0");
  const int d = r * r;
  auto index = [r](int a, int b) { return a * r + b; };
  std::vector<StructureConstant> c;
  std::vector<Mat> rep;
  std::vector<std::string> names;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      rep.push_back(unit(r, a, b));
      names.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
    }
  // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int cc = 0; cc < r; ++cc)
        for (int dd = 0; dd < r; ++dd) {
          if (b == cc) c.push_back({index(a, b), index(cc, dd), index(a, dd), 1.0});
          if (dd == a) c.push_back({index(a, b), index(cc, dd), index(cc, b), -1.0});
        }
  std::optional<int> nil;
  if (r == 1) nil = 1;
  return LieAlgebra("gl(" + std::to_string(r) + ")", d, c, nil, std::move(rep), std::move(names));
}

LieAlgebra LieAlgebra::builtin(std::string_view name) {
  if (name == "heisenberg3") return heisenberg3();
  if (name == "sl2C") return sl2C();
  if (name.starts_with("abelian(") && name.ends_with(")")) {
    return abelian(parse_parenthesized(name, "abelian"));
  }
  if (name.starts_with("gl(") && name.ends_with(")")) return gl(parse_parenthesized(name, "gl"));
  throw ParseError("unknown built-in algebra '" + std::string(name) + "'");
}

LieAlgebra LieAlgebra::from_json(const nlohmann::json& doc) {
  try {
    const int dim = doc.at("dim").get<int>();
    std::vector<StructureConstant> constants;
    for (const auto& t : doc.value("structure_constants", nlohmann::json::array())) {
      if (!t.is_array() || (t.size() != 4 && t.size() != 5)) {
        throw ParseError("structure constant entries are [i, j, k, re(, im)]");
      }
      const double im = t.size() == 5 ? t[4].get<double>() : 0.0;
      constants.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>(),
                           cplx(t[3].get<double>(), im)});
    }
    std::optional<int> nil;
    if (doc.contains("nilpotency_order") && !doc["nilpotency_order"].is_null()) {
      nil = doc["nilpotency_order"].get<int>();
    }
    std::vector<Mat> rep;
    if (doc.contains("matrix_rep")) {
      for (const auto& m : doc["matrix_rep"]) {
        const auto rows = static_cast<Eigen::Index>(m.size());
        Mat mat(rows, rows);
        for (Eigen::Index a = 0; a < rows; ++a) {
          if (static_cast<Eigen::Index>(m[a].size()) != rows) throw ParseError("matrix_rep rows must be square");
          for (Eigen::Index b = 0; b < rows; ++b) mat(a, b) = read_complex(m[a][b]);
        }
        rep.push_back(std::move(mat));
      }
    }
    std::vector<std::string> names;
    if (doc.contains("basis")) names = doc["basis"].get<std::vector<std::string>>();
    return LieAlgebra(doc.value("id", std::string("custom")), dim, constants, nil, std::move(rep),
                      std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("algebra definition: ") + e.what());
  }
}

LieAlgebra LieAlgebra::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open algebra file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("algebra file " + path.string() + ": " + e.what());
  }
  return from_json(doc);
}

nlohmann::json LieAlgebra::to_json() const {
  nlohmann::json doc;
  doc["id"] = id_;
  doc["dim"] = dim_;
  doc["basis"] = names_;
  auto sc = nlohmann::json::array();
  for (const auto& s : nonzero_) sc.push_back({s.i, s.j, s.k, s.value.real(), s.value.imag()});
  doc["structure_constants"] = sc;
  doc["nilpotency_order"] = nilpotency_ ? nlohmann::json(*nilpotency_) : nlohmann::json(nullptr);
  if (!rep_.empty()) {
    auto reps = nlohmann::json::array();
    for (const auto& m : rep_) {
      auto rows = nlohmann::json::array();
      for (Eigen::Index a = 0; a < m.rows(); ++a) {
        auto row = nlohmann::json::array();
        for (Eigen::Index b = 0; b < m.cols(); ++b) row.push_back({m(a, b).real(), m(a, b).imag()});
        rows.push_back(row);
      }
      reps.push_back(rows);
    }
    doc["matrix_rep"] = reps;
  }
  return doc;
}

std::optional<int> LieAlgebra::basis_index(std::string_view name) const {
  for (int i = 0; i < dim_; ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

AlgebraElement LieAlgebra::basis(int i) const {
  if (i < 0 || i >= dim_) throw DimensionError("basis index out of range");
  AlgebraElement e = AlgebraElement::Zero(dim_);
  e(i) = 1.0;
  return e;
}

AlgebraElement LieAlgebra::bracket(const AlgebraElement& a, const AlgebraElement& b) const {
  if (a.size() != dim_ || b.size() != dim_) throw DimensionError("bracket: dimension mismatch");
  AlgebraElement out = AlgebraElement::Zero(dim_);
  bracket_accumulate(a.data(), b.data(), 1.0, out.data());
  return out;
}

Mat LieAlgebra::ad_matrix(const AlgebraElement& a) const {
  if (a.size() != dim_) throw DimensionError("ad_matrix: dimension mismatch");
  Mat out;
  ad_matrix_into(a.data(), out);
  return out;
}

void LieAlgebra::check_truncation(const SeriesOptions& opts) const {
  if (nilpotency_ && opts.truncation < *nilpotency_ - 1) {
    throw SeriesToleranceError("truncation " + std::to_string(opts.truncation) +
                               " below nilpotency order of " + id_);
  }
}

Mat LieAlgebra::ad_exp(const AlgebraElement& u, const SeriesOptions& opts) const {
  if (u.size() != dim_) throw DimensionError("ad_exp: dimension mismatch");
  Mat out;
  ad_exp_into(u.data(), 1.0, opts, out);
  return out;
}

Mat LieAlgebra::dexp_factor(const AlgebraElement& u, const SeriesOptions& opts) const {
  if (u.size() != dim_) throw DimensionError("dexp_factor: dimension mismatch");
  Mat out;
  dexp_factor_into(u.data(), opts, out);
  return out;
}

Mat LieAlgebra::represent(const AlgebraElement& a) const {
  if (rep_.empty()) throw DimensionError("algebra '" + id_ + "' has no matrix representation");
  if (a.size() != dim_) throw DimensionError("represent: dimension mismatch");
  Mat m = Mat::Zero(rep_.front().rows(), rep_.front().cols());
  for (int i = 0; i < dim_; ++i)
    if (a(i) != cplx{}) m += a(i) * rep_[i];
  return m;
}

Mat LieAlgebra::exp_rep(const AlgebraElement& u) const { return expm(represent(u)); }

AlgebraElement LieAlgebra::coordinates_of(const Mat& m) const {
  if (rep_.empty()) throw DimensionError("algebra '" + id_ + "' has no matrix representation");
  const Vec flat = m.reshaped();
  return rep_solver_.solve(flat);
}

double LieAlgebra::antisymmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        worst = std::max(worst, std::abs(structure_constant(i, j, k) + structure_constant(j, i, k)));
  return worst;
}

double LieAlgebra::cyclic_jacobi_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        const auto a = basis(i);
        const auto b = basis(j);
        const auto c = basis(k);
        const Vec sum = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        worst = std::max(worst, sum.norm());
      }
  return worst;
}

double LieAlgebra::jacobi_defect() const { return std::max(antisymmetry_defect(), cyclic_jacobi_defect()); }

double LieAlgebra::representation_defect() const {
  if (rep_.empty()) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      const Mat lhs = represent(bracket(basis(i), basis(j)));
      const Mat rhs = rep_[i] * rep_[j] - rep_[j] * rep_[i];
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace holoframe
