#include "pdtomo/joseph.hpp"

#include <cmath>
#include <vector>

namespace pdtomo {

namespace {

// Linear interpolation of one image row/column at fractional index u;
// outside the lattice the image is zero.
inline double interp(const double* values, int n, std::ptrdiff_t stride,
                     double u) {
    const double fl = std::floor(u);
    const int k = static_cast<int>(fl);
    const double frac = u - fl;
    double v = 0.0;
    if (k >= 0 && k < n) v += (1.0 - frac) * values[k * stride];
    if (k + 1 >= 0 && k + 1 < n) v += frac * values[(k + 1) * stride];
    return v;
}

}  // namespace

Sinogram joseph_forward(const Image& image, const DetectorGrid& detector,
                        const AngleSet& angles) {
    const ImageGrid& grid = image.grid();
    const int nx = grid.nx(), ny = grid.ny();
    const int p_count = detector.count(), q_count = angles.count();
    const double dx = grid.delta_x();
    const double cx = 0.5 * (nx - 1), cy = 0.5 * (ny - 1);

    std::vector<double> cos_q(q_count), sin_q(q_count);
    for (int q = 0; q < q_count; ++q) {
        cos_q[q] = std::cos(angles.angle(q));
        sin_q[q] = std::sin(angles.angle(q));
    }

    Sinogram out(detector, angles);
    const double* f = image.data();
    double* g = out.data();

#pragma omp parallel for collapse(2) schedule(static)
    for (int q = 0; q < q_count; ++q) {
        for (int p = 0; p < p_count; ++p) {
            const double c = cos_q[q], s = sin_q[q];
            const double sp = detector.offset(p);
            double sum = 0.0;
            if (std::abs(c) >= std::abs(s)) {
                // ray {x . theta = sp} is closer to vertical; one sample per row
                for (int j = 0; j < ny; ++j) {
                    const double x = (sp - s * grid.y(j)) / c;
                    sum += interp(f + static_cast<std::size_t>(j) * nx, nx, 1,
                                  x / dx + cx);
                }
                g[static_cast<std::size_t>(q) * p_count + p] =
                    sum * dx / std::abs(c);
            } else {
                for (int i = 0; i < nx; ++i) {
                    const double y = (sp - c * grid.x(i)) / s;
                    sum += interp(f + i, ny, nx, y / dx + cy);
                }
                g[static_cast<std::size_t>(q) * p_count + p] =
                    sum * dx / std::abs(s);
            }
        }
    }
    return out;
}

}  // namespace pdtomo
