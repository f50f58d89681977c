#include "pdtomo/phantoms.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdtomo {

Image rasterize_disc(const ImageGrid& grid, double r, int supersample) {
    if (!(r > 0.0))
        throw std::invalid_argument("rasterize_disc: radius must be > 0");
    if (supersample < 1)
        throw std::invalid_argument("rasterize_disc: supersample must be >= 1");

    Image out(grid);
    const int k = supersample;
    const double r2 = r * r;
    const double dx = grid.delta_x();
    const double inv_count = 1.0 / (k * k);
    double* f = out.data();
    const int nx = grid.nx(), ny = grid.ny();

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const double yc = grid.y(j);
        for (int i = 0; i < nx; ++i) {
            const double xc = grid.x(i);
            int inside = 0;
            for (int b = 0; b < k; ++b) {
                const double y = yc + dx * ((b + 0.5) / k - 0.5);
                for (int a = 0; a < k; ++a) {
                    const double x = xc + dx * ((a + 0.5) / k - 0.5);
                    if (x * x + y * y <= r2) ++inside;
                }
            }
            f[static_cast<std::size_t>(j) * nx + i] = inside * inv_count;
        }
    }
    return out;
}

namespace {

struct Ellipse {
    double intensity;
    double a, b;        // semi-axes
    double x0, y0;      // center
    double phi_deg;     // rotation, degrees counterclockwise
};

// Modified Shepp-Logan parameter table (Toft/MATLAB variant).
constexpr std::array<Ellipse, 10> kSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0},
    {-0.2, 0.11, 0.31, 0.22, 0.0, -18.0},
    {-0.2, 0.16, 0.41, -0.22, 0.0, 18.0},
    {0.1, 0.21, 0.25, 0.0, 0.35, 0.0},
    {0.1, 0.046, 0.046, 0.0, 0.1, 0.0},
    {0.1, 0.046, 0.046, 0.0, -0.1, 0.0},
    {0.1, 0.046, 0.023, -0.08, -0.605, 0.0},
    {0.1, 0.023, 0.023, 0.0, -0.605, 0.0},
    {0.1, 0.023, 0.046, 0.06, -0.605, 0.0},
}};

}  // namespace

Image rasterize_shepp_logan(const ImageGrid& grid) {
    struct Prepared {
        double cos_phi, sin_phi, x0, y0, inv_a2, inv_b2, intensity;
    };
    std::array<Prepared, kSheppLogan.size()> prep;
    for (std::size_t e = 0; e < kSheppLogan.size(); ++e) {
        const Ellipse& el = kSheppLogan[e];
        const double phi = el.phi_deg * std::numbers::pi / 180.0;
        prep[e] = {std::cos(phi), std::sin(phi), el.x0,         el.y0,
                   1.0 / (el.a * el.a), 1.0 / (el.b * el.b), el.intensity};
    }

    Image out(grid);
    double* f = out.data();
    const int nx = grid.nx(), ny = grid.ny();

#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) {
        const double y = grid.y(j);
        for (int i = 0; i < nx; ++i) {
            const double x = grid.x(i);
            double v = 0.0;
            for (const Prepared& el : prep) {
                const double dx = x - el.x0;
                const double dy = y - el.y0;
                const double u = dx * el.cos_phi + dy * el.sin_phi;
                const double w = -dx * el.sin_phi + dy * el.cos_phi;
                if (u * u * el.inv_a2 + w * w * el.inv_b2 <= 1.0)
                    v += el.intensity;
            }
            f[static_cast<std::size_t>(j) * nx + i] = v;
        }
    }
    return out;
}

Sinogram analytic_disc_sinogram(const DetectorGrid& detector,
                                const AngleSet& angles, double r) {
    if (!(r > 0.0))
        throw std::invalid_argument("analytic_disc_sinogram: radius must be > 0");
    Sinogram out(detector, angles);
    const int p_count = detector.count();
    std::vector<double> column(p_count);
    for (int p = 0; p < p_count; ++p) {
        const double s = detector.offset(p);
        column[p] = (std::abs(s) <= r) ? std::sqrt(r * r - s * s) : 0.0;
    }
    double* g = out.data();
    for (int q = 0; q < angles.count(); ++q)
        for (int p = 0; p < p_count; ++p)
            g[static_cast<std::size_t>(q) * p_count + p] = column[p];
    return out;
}

double disc_projection_integral(double s, double r) {
    const double c = std::min(r, std::max(-r, s));
    return 0.5 * (c * std::sqrt(r * r - c * c) + r * r * std::asin(c / r));
}

}  // namespace pdtomo
