#include "holoframe/matrix_exp.hpp"

namespace holoframe {

Mat expm(const Mat& x) {
  if (x.rows() != x.cols()) throw DimensionError("expm of a non-square matrix");
  const int s = detail::scaling_exponent(detail::one_norm(x), 0.25);
  const Mat scaled = x / std::ldexp(1.0, s);
  Mat e;
  detail::taylor_pair(scaled, SeriesOptions{30, 1e-18}, e, static_cast<Mat*>(nullptr));
  for (int i = 0; i < s; ++i) e = (e * e).eval();
  return e;
}

}  // namespace holoframe
