#pragma once

#include "pdtomo/arrays.hpp"

namespace pdtomo {

// Ray-driven Radon transform with the Joseph interpolation kernel: each ray
// is marched one pixel row (or column, whichever axis is closer to the ray
// direction) at a time, the image is sampled by linear interpolation across
// the other axis, and the sum is scaled to a line integral. Not adjoint to
// radon_backproject; serves as the non-adjoint comparison baseline.
Sinogram joseph_forward(const Image& image, const DetectorGrid& detector,
                        const AngleSet& angles);

}  // namespace pdtomo
