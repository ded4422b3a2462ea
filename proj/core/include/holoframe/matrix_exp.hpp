#pragma once

#include <cmath>
#include <string>
#include <algorithm>
#include <array>

#include "holoframe/types.hpp"

namespace holoframe {

/// Options for the truncated power series used by exp and the dexp factor.
struct SeriesOptions {
  int truncation = 20;
  double tolerance = 1e-15;
};

/// Matrices of order <= 9 live on the stack; per-node kernels use this type.
using SmallMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 9, 9>;
inline constexpr int kSmallMatMax = 9;

namespace detail {

template <class M>
double one_norm(const M& x) {
  if (x.size() == 0) return 0.0;
  return x.cwiseAbs2().cwiseSqrt().colwise().sum().maxCoeff();
}

inline int scaling_exponent(double norm, double target) {
  if (!(norm > target)) return 0;
  return static_cast<int>(std::ceil(std::log2(norm / target)));
}

// e = sum_{m<=t} X^m/m!, phi = sum_{m<=t} X^m/(m+1)! for X in the half ball.
// The sum stops at the first m whose tail bound is below tolerance/4.
inline constexpr int kMaxBlock = 8;

template <class M>
void taylor_pair(const M& x, const SeriesOptions& opts, M& e, M* phi) {
  const auto d = x.rows();
  const double nx = one_norm(x);
  if (opts.truncation < 0) throw SeriesToleranceError("negative series truncation");
  // bound[m] = nx^(m+1)/(m+1)!, so the tail after m terms is at most 2*bound[m].
  int stop = opts.truncation;
  double bound = nx;
  for (int m = 0; m <= opts.truncation; ++m) {
    if (m > 0) bound *= nx / (m + 1);
    if (m == opts.truncation && 2.0 * bound > opts.tolerance) {
      throw SeriesToleranceError("series tail bound " + std::to_string(2.0 * bound) +
                                 " exceeds tolerance at truncation " +
                                 std::to_string(opts.truncation));
    }
    if (m > 0 && 2.0 * bound <= 0.25 * opts.tolerance) {
      stop = m;
      break;
    }
  }
  if (!phi) {
    M term = M::Identity(d, d);
    M next(d, d);
    e = term;
    for (int m = 1; m <= stop; ++m) {
      next.noalias() = term * x;
      term = next / static_cast<double>(m);
      e += term;
    }
    return;
  }
  // phi = sum_{k<=stop} X^k/(k+1)! by Paterson-Stockmeyer, then e = 1 + X phi.
  const int coeffs = stop + 1;
  int q = 1;
  while (q * q < coeffs && q < kMaxBlock) ++q;
  std::array<M, kMaxBlock + 1> pw;
  pw[0] = M::Identity(d, d);
  for (int k = 1; k <= q; ++k) pw[static_cast<std::size_t>(k)].noalias() = pw[static_cast<std::size_t>(k - 1)] * x;
  auto coeff = [](int k) {
    double fact = 1.0;
    for (int i = 2; i <= k + 1; ++i) fact *= i;
    return 1.0 / fact;
  };
  const int blocks = (coeffs + q - 1) / q;
  M acc(d, d);
  M block(d, d);
  for (int b = blocks - 1; b >= 0; --b) {
    block.setZero(d, d);
    for (int k = 0; k < q && b * q + k < coeffs; ++k)
      block += coeff(b * q + k) * pw[static_cast<std::size_t>(k)];
    if (b == blocks - 1) {
      acc = block;
    } else {
      M next(d, d);
      next.noalias() = acc * pw[static_cast<std::size_t>(q)];
      acc = next + block;
    }
  }
  *phi = acc;
  e.noalias() = x * acc;
  e += pw[0];
}

}  // namespace detail

/// Sum_{m=0}^{t} X^m / m!, after scaling X to 1-norm <= 1/2 and squaring back.
/// Throws SeriesToleranceError if the scaled tail bound exceeds the tolerance.
template <class M>
M exp_series(const M& x, const SeriesOptions& opts) {
  const int s = detail::scaling_exponent(detail::one_norm(x), 0.5);
  const M scaled = x / std::ldexp(1.0, s);
  M e;
  detail::taylor_pair(scaled, opts, e, static_cast<M*>(nullptr));
  for (int i = 0; i < s; ++i) e = (e * e).eval();
  return e;
}

/// e^X and phi(X) = (e^X - 1)/X = Sum X^m/(m+1)! from one scaled Taylor pass,
/// doubled back with e^{2X} = (e^X)^2 and phi(2X) = phi(X)(e^X + 1)/2.
template <class M>
void exp_phi_series(const M& x, const SeriesOptions& opts, M& e, M& phi) {
  const int s = detail::scaling_exponent(detail::one_norm(x), 0.5);
  const M scaled = x / std::ldexp(1.0, s);
  detail::taylor_pair(scaled, opts, e, &phi);
  const auto d = x.rows();
  for (int i = 0; i < s; ++i) {
    M next(d, d);
    next.noalias() = phi * e;
    phi = 0.5 * (next + phi);
    next.noalias() = e * e;
    e = next;
  }
}

template <class M>
M phi_series(const M& x, const SeriesOptions& opts) {
  M e;
  M phi;
  exp_phi_series(x, opts, e, phi);
  return phi;
}

/// Exact finite sums for nilpotent X with X^order = 0.
template <class M>
M exp_nilpotent(const M& x, int order) {
  const auto d = x.rows();
  M term = M::Identity(d, d);
  M sum = term;
  for (int m = 1; m < order; ++m) {
    term = (term * x / static_cast<double>(m)).eval();
    sum += term;
  }
  return sum;
}

template <class M>
M phi_nilpotent(const M& x, int order) {
  const auto d = x.rows();
  M power = M::Identity(d, d);
  M sum = power;
  double fact = 1.0;
  for (int m = 1; m < order; ++m) {
    power = (power * x).eval();
    fact *= static_cast<double>(m + 1);
    sum += power / fact;
  }
  return sum;
}

/// exp(X) for representation matrices: scaling and squaring with a Taylor
/// core accurate to ~1e-16 relative.
Mat expm(const Mat& x);

}  // namespace holoframe
