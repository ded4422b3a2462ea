#include "holoframe/cauchy.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace holoframe {

namespace {

// Antiderivatives with d2/dxdy P = x/(x^2+y^2), d2/dxdy Q = y/(x^2+y^2).
double P(double x, double y) {
  const double r2 = x * x + y * y;
  if (r2 == 0.0) return 0.0;
  const double t = x == 0.0 ? 0.0 : x * std::atan(y / x);
  return 0.5 * y * std::log(r2) + t;
}

double Q(double x, double y) { return P(y, x); }

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!ptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  cplx* data() { return reinterpret_cast<cplx*>(ptr); }
  fftw_complex* ptr;
};

struct Plan {
  Plan(int n0, int n1, fftw_complex* buf, int sign) {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(n0, n1, buf, buf, sign, FFTW_ESTIMATE);
    if (!plan) throw Error("FFT planning failed");
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  fftw_plan plan;
};

}  // namespace

cplx cauchy_cell_integral(cplx center, double h) {
  const double a1 = center.real() - 0.5 * h;
  const double a2 = center.real() + 0.5 * h;
  const double b1 = center.imag() - 0.5 * h;
  const double b2 = center.imag() + 0.5 * h;
  auto box = [&](double (*F)(double, double)) {
    return F(a2, b2) - F(a1, b2) - F(a2, b1) + F(a1, b1);
  };
  // 1/s = (x - i y)/(x^2 + y^2)
  return {box(P), -box(Q)};
}

GForm cauchy_transform(const GForm& lambda) {
  const GridDomain& dom = lambda.domain();
  if (dom.n() != 1) throw DimensionError("cauchy_transform: planar domains only");
  if (lambda.degree() != 1) throw DimensionError("cauchy_transform: needs a (0,1)-form");
  const int R = dom.lattice_radius();
  const int side = 2 * R + 1;
  const int M = 2 * side;  // zero padding for linear convolution
  const auto MM = static_cast<std::size_t>(M) * M;
  const double h = dom.spacing();

  FftwBuffer kernel(MM);
  FftwBuffer work(MM);
  Plan forward_k(M, M, kernel.ptr, FFTW_FORWARD);
  Plan forward(M, M, work.ptr, FFTW_FORWARD);
  Plan backward(M, M, work.ptr, FFTW_BACKWARD);

  // Kernel indexed by lattice offset (di, dj) in [-2R, 2R], wrapped mod M.
  cplx* K = kernel.data();
  std::fill(K, K + MM, cplx{});
  for (int di = -2 * R; di <= 2 * R; ++di)
    for (int dj = -2 * R; dj <= 2 * R; ++dj) {
      const auto i = static_cast<std::size_t>((di + M) % M);
      const auto j = static_cast<std::size_t>((dj + M) % M);
      K[i * M + j] = cauchy_cell_integral(cplx(di * h, dj * h), h) / std::numbers::pi;
    }
  fftw_execute(forward_k.plan);

  GForm u(lambda.domain_ptr(), lambda.algebra_ptr(), 0);
  cplx* W = work.data();
  const double norm = 1.0 / static_cast<double>(MM);
  for (int k = 0; k < lambda.dim(); ++k) {
    std::fill(W, W + MM, cplx{});
    bool any = false;
    for (std::size_t p = 0; p < dom.size(); ++p) {
      const cplx v = lambda.at(0, p)[k];
      if (v == cplx{}) continue;
      any = true;
      const auto i = static_cast<std::size_t>(dom.lattice(p, 0) + R);
      const auto j = static_cast<std::size_t>(dom.lattice(p, 1) + R);
      W[i * M + j] = v;
    }
    if (!any) continue;
    fftw_execute(forward.plan);
    for (std::size_t m = 0; m < MM; ++m) W[m] *= K[m] * norm;
    fftw_execute(backward.plan);
    for (std::size_t p = 0; p < dom.size(); ++p) {
      const auto i = static_cast<std::size_t>(dom.lattice(p, 0) + R);
      const auto j = static_cast<std::size_t>(dom.lattice(p, 1) + R);
      u.at(0, p)[k] = W[i * M + j];
    }
  }
  return u;
}

}  // namespace holoframe
