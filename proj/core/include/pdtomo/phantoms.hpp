#pragma once

#include "pdtomo/arrays.hpp"

// Test images and the closed-form projection oracle for the centered disc.

namespace pdtomo {

// Indicator of the disc B(0, r), averaged per pixel by supersample x
// supersample midpoint sampling. Pixels fully inside the disc are exactly 1,
// fully outside exactly 0.
Image rasterize_disc(const ImageGrid& grid, double r, int supersample = 4);

// Modified Shepp-Logan head phantom on [-1,1]^2, sampled at pixel centers.
Image rasterize_shepp_logan(const ImageGrid& grid);

// Closed-form parallel-beam reference sinogram of the disc test case:
// g(s) = sqrt(r^2 - s^2) for |s| <= r, 0 otherwise, for every angle.
// This is the projection of the disc at amplitude 1/2; the unit indicator
// projects to the chord length, twice this value.
Sinogram analytic_disc_sinogram(const DetectorGrid& detector,
                                const AngleSet& angles, double r);

// Indefinite integral of s -> sqrt(r^2 - s^2)_+ ; odd, nondecreasing,
// constant outside [-r, r].
double disc_projection_integral(double s, double r);

}  // namespace pdtomo
