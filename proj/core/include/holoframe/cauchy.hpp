#pragma once

#include "holoframe/gform.hpp"

namespace holoframe {

/// Integral of 1/s over the axis-aligned square of side h centred at c,
/// evaluated in closed form.
cplx cauchy_cell_integral(cplx center, double h);

/// Solid Cauchy transform on a planar grid,
///   u(z) = (1/pi) sum_w lambda(w) * int_{cell(w)} dA(s) / (z - s),
/// with lambda piecewise constant on the lattice cells (every cell,
/// including the singular one, integrated exactly). Evaluated by FFT
/// convolution. Then dbar u = lambda in the continuum sense.
GForm cauchy_transform(const GForm& lambda);

}  // namespace holoframe
