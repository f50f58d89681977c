#pragma once

#include <algorithm>
#include <cmath>

#include "pdtomo/arrays.hpp"

// Pixel-driven parallel-beam Radon transform and its exact adjoint.
//
// Forward: every pixel center projects onto the detector line and its mass
// is split between the two nearest detector cells by the triangular weight
// below (anterpolation). Backprojection is the transpose of the same weights
// under the weighted image/sinogram inner products, which is linear
// interpolation of neighboring detector values at the projected offset.

namespace pdtomo {

// Triangular detector sensitivity profile, support (-delta_s, delta_s),
// peak value delta_s at t = 0.
inline double hat_weight(double t, double delta_s) {
    return std::max(0.0, delta_s - std::abs(t));
}

// g_pq = (dx^2/ds^2) * sum_ij hat(x_ij . theta_q - s_p) f_ij
Sinogram radon_forward(const Image& image, const DetectorGrid& detector,
                       const AngleSet& angles);

// f_ij = sum_q (w_q/ds) * sum_p hat(x_ij . theta_q - s_p) g_pq
// At most the two detectors nearest the projected offset contribute;
// offsets beyond [s_first - ds, s_last + ds] contribute nothing.
Image radon_backproject(const Sinogram& sinogram, const ImageGrid& grid);

}  // namespace pdtomo
