#include "pdtomo/radon.hpp"

#include <cmath>
#include <vector>

namespace pdtomo {

namespace {

// Index range [first, last] of lattice coordinates u(k) = du*(k - c0) falling
// in [lo, hi], widened by one entry on each side; the caller re-checks the
// actual weight, so the widening only guards rounding of the bounds.
// lo/hi may be infinite.
inline bool index_range(double lo, double hi, double du, double c0, int n,
                        int& first, int& last) {
    double a = lo / du + c0 - 1.0;
    double b = hi / du + c0 + 1.0;
    if (a < 0.0) a = 0.0;
    if (b > n - 1.0) b = n - 1.0;
    if (!(a <= b)) return false;
    first = static_cast<int>(std::ceil(a));
    last = static_cast<int>(std::floor(b));
    return first <= last;
}

}  // namespace

Sinogram radon_forward(const Image& image, const DetectorGrid& detector,
                       const AngleSet& angles) {
    const ImageGrid& grid = image.grid();
    const int nx = grid.nx(), ny = grid.ny();
    const int p_count = detector.count(), q_count = angles.count();
    const double dx = grid.delta_x();
    const double ds = detector.delta_s();
    const double scale = (dx * dx) / (ds * ds);
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
            double val = 0.0;
            if (std::abs(c) >= std::abs(s)) {
                // near-vertical lines: for each row solve c*x in
                // (sp - ds - s*y, sp + ds + ... ), |c| >= 1/sqrt(2)
                for (int j = 0; j < ny; ++j) {
                    const double y = grid.y(j);
                    const double b1 = (sp - ds - s * y) / c;
                    const double b2 = (sp + ds - s * y) / c;
                    int i0, i1;
                    if (!index_range(std::min(b1, b2), std::max(b1, b2), dx,
                                     cx, nx, i0, i1))
                        continue;
                    const double* row = f + static_cast<std::size_t>(j) * nx;
                    for (int i = i0; i <= i1; ++i) {
                        const double tau = c * grid.x(i) + s * y - sp;
                        const double w = hat_weight(tau, ds);
                        if (w > 0.0) val += w * row[i];
                    }
                }
            } else {
                // near-horizontal lines: solve for y per column, |s| >= 1/sqrt(2)
                for (int i = 0; i < nx; ++i) {
                    const double x = grid.x(i);
                    const double b1 = (sp - ds - c * x) / s;
                    const double b2 = (sp + ds - c * x) / s;
                    int j0, j1;
                    if (!index_range(std::min(b1, b2), std::max(b1, b2), dx,
                                     cy, ny, j0, j1))
                        continue;
                    for (int j = j0; j <= j1; ++j) {
                        const double tau = c * x + s * grid.y(j) - sp;
                        const double w = hat_weight(tau, ds);
                        if (w > 0.0)
                            val += w * f[static_cast<std::size_t>(j) * nx + i];
                    }
                }
            }
            g[static_cast<std::size_t>(q) * p_count + p] = scale * val;
        }
    }
    return out;
}

Image radon_backproject(const Sinogram& sinogram, const ImageGrid& grid) {
    const DetectorGrid& detector = sinogram.detector();
    const AngleSet& angles = sinogram.angles();
    const int nx = grid.nx(), ny = grid.ny();
    const int p_count = detector.count(), q_count = angles.count();
    const double ds = detector.delta_s();
    const double s0 = detector.offset(0);

    std::vector<double> cos_q(q_count), sin_q(q_count), wq(q_count);
    for (int q = 0; q < q_count; ++q) {
        cos_q[q] = std::cos(angles.angle(q));
        sin_q[q] = std::sin(angles.angle(q));
        wq[q] = angles.weight(q) / ds;
    }

    Image out(grid);
    const double* g = sinogram.data();
    double* f = out.data();

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < nx; ++i) {
            const double x = grid.x(i);
            double val = 0.0;
            for (int q = 0; q < q_count; ++q) {
                const double dotp = cos_q[q] * x + sin_q[q] * y;
                const double pf = (dotp - s0) / ds;
                // both neighbors out of range <=> pf outside (-1, P)
                if (!(pf > -1.0 && pf < p_count)) continue;
                const int p0 = static_cast<int>(std::floor(pf));
                const int pa = std::max(p0, 0);
                const int pb = std::min(p0 + 1, p_count - 1);
                double inner = 0.0;
                for (int p = pa; p <= pb; ++p) {
                    const double w = hat_weight(dotp - detector.offset(p), ds);
                    if (w > 0.0)
                        inner +=
                            w * g[static_cast<std::size_t>(q) * p_count + p];
                }
                val += wq[q] * inner;
            }
            f[static_cast<std::size_t>(j) * nx + i] = val;
        }
    }
    return out;
}

}  // namespace pdtomo
