#include "pdtomo/fanbeam.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pdtomo/radon.hpp"

namespace pdtomo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_grid(const ImageGrid& grid, const FanGeometry& geometry) {
    const double re = geometry.source_radius();
    if (!(grid.delta_x() < (re - 1.0) / std::sqrt(2.0)))
        throw std::invalid_argument(
            "fanbeam: pixel size too large, need delta_x < (R_E - 1)/sqrt(2)");
}

void check_support(const Image& image, const FanGeometry& geometry) {
    const ImageGrid& grid = image.grid();
    const double re2 =
        geometry.source_radius() * geometry.source_radius();
    // fast path: whole grid inside B(0, R_E)
    const double ex = std::max(std::abs(grid.x(0)), grid.x(grid.nx() - 1));
    const double ey = std::max(std::abs(grid.y(0)), grid.y(grid.ny() - 1));
    if (ex * ex + ey * ey < re2) return;
    const double* f = image.data();
    for (int j = 0; j < grid.ny(); ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < grid.nx(); ++i) {
            const double x = grid.x(i);
            if (x * x + y * y >= re2 &&
                f[static_cast<std::size_t>(j) * grid.nx() + i] != 0.0)
                throw std::invalid_argument(
                    "fanbeam: nonzero pixel center outside B(0, R_E)");
        }
    }
}

// Clip the interval [lo, hi] by the affine condition a*u + b > 0 (or < 0 for
// Less). Returns false if the condition rules out every u.
enum class Side { Greater, Less };

inline bool clip(double a, double b, Side side, double& lo, double& hi) {
    if (a == 0.0) return side == Side::Greater ? b > 0.0 : b < 0.0;
    const double bound = -b / a;
    const bool lower = (side == Side::Greater) == (a > 0.0);
    if (lower)
        lo = std::max(lo, bound);
    else
        hi = std::min(hi, bound);
    return lo <= hi;
}

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

Sinogram fan_forward(const Image& image, const FanGeometry& geometry,
                     const AngleSet& angles) {
    const ImageGrid& grid = image.grid();
    check_grid(grid, geometry);
    check_support(image, geometry);

    const DetectorGrid& detector = geometry.detector();
    const int nx = grid.nx(), ny = grid.ny();
    const int p_count = detector.count(), q_count = angles.count();
    const double dx = grid.delta_x();
    const double dxi = detector.delta_s();
    const double re = geometry.source_radius();
    const double rd = geometry.source_detector_distance();
    const double re2 = re * re;
    const double scale = (dx * dx) / (dxi * dxi);
    const double cx = 0.5 * (nx - 1), cy = 0.5 * (ny - 1);

    std::vector<double> cos_q(q_count), sin_q(q_count);
    for (int q = 0; q < q_count; ++q) {
        cos_q[q] = std::cos(angles.angle(q));
        sin_q[q] = std::sin(angles.angle(q));
    }
    std::vector<double> ray_norm(p_count);  // sqrt(xi_p^2 + R^2)
    for (int p = 0; p < p_count; ++p) {
        const double xi = detector.offset(p);
        ray_norm[p] = std::sqrt(xi * xi + rd * rd);
    }

    Sinogram out(detector, angles);
    const double* f = image.data();
    double* g = out.data();

#pragma omp parallel for collapse(2) schedule(static)
    for (int q = 0; q < q_count; ++q) {
        for (int p = 0; p < p_count; ++p) {
            const double c = cos_q[q], s = sin_q[q];
            const double xip = detector.offset(p);
            const double xi_lo = xip - dxi, xi_hi = xip + dxi;
            // central ray direction xi*theta + R*theta_perp
            const double dir_x = xip * c - rd * s;
            const double dir_y = xip * s + rd * c;
            double val = 0.0;
            if (std::abs(dir_y) >= std::abs(dir_x)) {
                for (int j = 0; j < ny; ++j) {
                    const double y = grid.y(j);
                    // numerator R*(c*x + s*y) vs xi' * (-s*x + c*y + R_E),
                    // valid multiplication since x.theta_perp + R_E > 0 on
                    // B(0, R_E); outsiders are dropped below
                    double lo = -kInf, hi = kInf;
                    if (!clip(rd * c + xi_lo * s,
                              rd * s * y - xi_lo * (c * y + re), Side::Greater,
                              lo, hi))
                        continue;
                    if (!clip(rd * c + xi_hi * s,
                              rd * s * y - xi_hi * (c * y + re), Side::Less,
                              lo, hi))
                        continue;
                    int i0, i1;
                    if (!index_range(lo, hi, dx, cx, nx, i0, i1)) continue;
                    const double* row = f + static_cast<std::size_t>(j) * nx;
                    for (int i = i0; i <= i1; ++i) {
                        const double x = grid.x(i);
                        if (x * x + y * y >= re2) continue;
                        const double e = -s * x + c * y + re;
                        const double xi = (c * x + s * y) * rd / e;
                        const double w = hat_weight(xi - xip, dxi);
                        if (w > 0.0) val += w * row[i] / e;
                    }
                }
            } else {
                for (int i = 0; i < nx; ++i) {
                    const double x = grid.x(i);
                    double lo = -kInf, hi = kInf;
                    if (!clip(rd * s - xi_lo * c,
                              x * (rd * c + xi_lo * s) - xi_lo * re,
                              Side::Greater, lo, hi))
                        continue;
                    if (!clip(rd * s - xi_hi * c,
                              x * (rd * c + xi_hi * s) - xi_hi * re, Side::Less,
                              lo, hi))
                        continue;
                    int j0, j1;
                    if (!index_range(lo, hi, dx, cy, ny, j0, j1)) continue;
                    for (int j = j0; j <= j1; ++j) {
                        const double y = grid.y(j);
                        if (x * x + y * y >= re2) continue;
                        const double e = -s * x + c * y + re;
                        const double xi = (c * x + s * y) * rd / e;
                        const double w = hat_weight(xi - xip, dxi);
                        if (w > 0.0)
                            val +=
                                w * f[static_cast<std::size_t>(j) * nx + i] / e;
                    }
                }
            }
            g[static_cast<std::size_t>(q) * p_count + p] =
                scale * ray_norm[p] * val;
        }
    }
    return out;
}

Image fan_backproject(const Sinogram& sinogram, const FanGeometry& geometry,
                      const ImageGrid& grid) {
    if (!(sinogram.detector() == geometry.detector()))
        throw std::invalid_argument(
            "fan_backproject: sinogram detector does not match geometry");
    check_grid(grid, geometry);

    const DetectorGrid& detector = geometry.detector();
    const AngleSet& angles = sinogram.angles();
    const int nx = grid.nx(), ny = grid.ny();
    const int p_count = detector.count(), q_count = angles.count();
    const double dxi = detector.delta_s();
    const double xi0 = detector.offset(0);
    const double re = geometry.source_radius();
    const double rd = geometry.source_detector_distance();
    const double re2 = re * re;

    std::vector<double> cos_q(q_count), sin_q(q_count), wq(q_count);
    for (int q = 0; q < q_count; ++q) {
        cos_q[q] = std::cos(angles.angle(q));
        sin_q[q] = std::sin(angles.angle(q));
        wq[q] = angles.weight(q) / dxi;
    }
    std::vector<double> ray_norm(p_count);
    for (int p = 0; p < p_count; ++p) {
        const double xi = detector.offset(p);
        ray_norm[p] = std::sqrt(xi * xi + rd * rd);
    }

    Image out(grid);
    const double* g = sinogram.data();
    double* f = out.data();

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < nx; ++i) {
            const double x = grid.x(i);
            if (x * x + y * y >= re2) continue;  // outside the image space
            double val = 0.0;
            for (int q = 0; q < q_count; ++q) {
                const double e = -sin_q[q] * x + cos_q[q] * y + re;
                const double xi = (cos_q[q] * x + sin_q[q] * y) * rd / e;
                const double pf = (xi - xi0) / dxi;
                if (!(pf > -1.0 && pf < p_count)) continue;
                const int p0 = static_cast<int>(std::floor(pf));
                const int pa = std::max(p0, 0);
                const int pb = std::min(p0 + 1, p_count - 1);
                double inner = 0.0;
                for (int p = pa; p <= pb; ++p) {
                    const double w = hat_weight(xi - detector.offset(p), dxi);
                    if (w > 0.0)
                        inner += w * ray_norm[p] *
                                 g[static_cast<std::size_t>(q) * p_count + p];
                }
                val += wq[q] * inner / e;
            }
            f[static_cast<std::size_t>(j) * nx + i] = val;
        }
    }
    return out;
}

ParallelCoords fan_to_parallel_coords(double xi, double alpha,
                                      const FanGeometry& geometry) {
    const double rd = geometry.source_detector_distance();
    const double s =
        xi * geometry.source_radius() / std::sqrt(xi * xi + rd * rd);
    return {s, alpha - std::atan(xi / rd)};
}

double parallel_to_fan_offset(double s, const FanGeometry& geometry) {
    const double re = geometry.source_radius();
    if (!(std::abs(s) < re))
        throw std::invalid_argument(
            "parallel_to_fan_offset: requires |s| < R_E");
    return geometry.source_detector_distance() * s /
           std::sqrt(re * re - s * s);
}

}  // namespace pdtomo
