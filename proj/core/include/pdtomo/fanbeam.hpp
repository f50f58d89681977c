#pragma once

#include "pdtomo/arrays.hpp"

// Pixel-driven fanbeam transform and its exact adjoint.
//
// A pixel center x maps, for source angle alpha, to the fan detector offset
//   xi(x) = (x . theta) * R / (x . theta_perp + R_E)
// and its mass is split between the two nearest detector cells like in the
// parallel case. The transform is weighted by 1/(x . theta_perp + R_E)
// inside the pixel sum and by sqrt(xi_p^2 + R^2) outside it; the adjoint
// carries the same factors. Only pixels with center inside B(0, R_E) belong
// to the image space; a nonzero value outside it is a hard error.

namespace pdtomo {

Sinogram fan_forward(const Image& image, const FanGeometry& geometry,
                     const AngleSet& angles);

Image fan_backproject(const Sinogram& sinogram, const FanGeometry& geometry,
                      const ImageGrid& grid);

struct ParallelCoords {
    double s;    // parallel detector offset, |s| < R_E
    double phi;  // parallel projection angle
};

// Reparametrization of a fan ray (xi, alpha) as a parallel ray (s, phi):
// s = xi * R_E / sqrt(xi^2 + R^2), phi = alpha - atan(xi / R).
ParallelCoords fan_to_parallel_coords(double xi, double alpha,
                                      const FanGeometry& geometry);

// Inverse of the offset map: xi(s) = R * s / sqrt(R_E^2 - s^2), |s| < R_E.
double parallel_to_fan_offset(double s, const FanGeometry& geometry);

}  // namespace pdtomo
