#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "naive_ref.hpp"
#include "pdtomo/analysis.hpp"
#include "pdtomo/parallel.hpp"
#include "pdtomo/phantoms.hpp"
#include "pdtomo/radon.hpp"
#include "pdtomo/rng.hpp"

using namespace pdtomo;
using std::numbers::pi;

TEST_SUITE_BEGIN("radon");

TEST_CASE("hat weight profile") {
    const double ds = 0.25;
    CHECK(hat_weight(0.0, ds) == ds);
    CHECK(hat_weight(ds, ds) == 0.0);
    CHECK(hat_weight(-ds, ds) == 0.0);
    CHECK(hat_weight(ds / 2, ds) == ds / 2);
    CHECK(hat_weight(2 * ds, ds) == 0.0);
}

TEST_CASE("unit center pixel projects onto the central detector") {
    const ImageGrid grid = ImageGrid::square(3, 2.0);
    const DetectorGrid det(3, 2.0);
    Image f(grid);
    f.at(1, 1) = 1.0;

    SUBCASE("axis-aligned angle") {
        const Sinogram g =
            radon_forward(f, det, AngleSet::sparse({0.0}));
        CHECK(g.at(1, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(g.at(0, 0) == 0.0);
        CHECK(g.at(2, 0) == 0.0);
    }
    SUBCASE("diagonal angle sees the same center offset") {
        const Sinogram g =
            radon_forward(f, det, AngleSet::sparse({pi / 4}));
        CHECK(g.at(1, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(g.at(0, 0) == 0.0);
        CHECK(g.at(2, 0) == 0.0);
    }
}

TEST_CASE("zero image maps to the zero sinogram") {
    const Image f(ImageGrid::square(5, 2.0));
    const Sinogram g =
        radon_forward(f, DetectorGrid(7, 2.0), AngleSet::full_uniform(3, pi));
    for (double v : g.values()) CHECK(v == 0.0);
}

TEST_CASE("single detector backprojects onto one image column") {
    const ImageGrid grid = ImageGrid::square(3, 2.0);
    Sinogram g(DetectorGrid(3, 2.0), AngleSet::full_uniform(1, 2 * pi));
    g.at(1, 0) = 1.0;
    const Image f = radon_backproject(g, grid);
    for (int j = 0; j < 3; ++j) {
        CHECK(f.at(0, j) == 0.0);
        CHECK(f.at(1, j) == doctest::Approx(2 * pi).epsilon(1e-14));
        CHECK(f.at(2, j) == 0.0);
    }
}

TEST_CASE("zero sinogram backprojects to the zero image") {
    const Sinogram g(DetectorGrid(4, 2.0), AngleSet::full_uniform(5, pi));
    const Image f = radon_backproject(g, ImageGrid::square(6, 2.0));
    for (double v : f.values()) CHECK(v == 0.0);
}

TEST_CASE("offsets beyond the detector span contribute nothing") {
    // pixel centers at +-0.6; detector spans offsets +-0.25 with ds = 0.5
    const ImageGrid grid(2, 1, 1.2);
    Sinogram g(DetectorGrid(2, 1.0), AngleSet::sparse({0.0}));
    g.at(0, 0) = 1.0;
    g.at(1, 0) = 1.0;
    const Image f = radon_backproject(g, grid);
    // t = -0.6: only the nearer detector (s=-0.25, w=0.15) contributes
    CHECK(f.at(0, 0) == doctest::Approx(1.0 / 0.5 * 0.15).epsilon(1e-13));
    CHECK(f.at(1, 0) == doctest::Approx(1.0 / 0.5 * 0.15).epsilon(1e-13));

    const ImageGrid far(2, 1, 1.6);  // centers +-0.8, beyond s_last + ds
    const Image f2 = radon_backproject(g, far);
    CHECK(f2.at(0, 0) == 0.0);
    CHECK(f2.at(1, 0) == 0.0);
}

TEST_CASE("hat weights form a partition of unity over the detector span") {
    const DetectorGrid det(31, 2.0);
    const double ds = det.delta_s();
    const double s_first = det.offset(0), s_last = det.offset(det.count() - 1);
    std::mt19937_64 engine(3);
    for (int k = 0; k < 1000; ++k) {
        const double t =
            s_first + (s_last - s_first) * 0.5 * (uniform_pm1(engine) + 1.0);
        double sum = 0.0;
        for (int p = 0; p < det.count(); ++p)
            sum += hat_weight(t - det.offset(p), ds) / ds;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("per-angle mass conservation for a supported phantom") {
    const ImageGrid grid = ImageGrid::square(64, 2.0);
    const DetectorGrid det(96, 2.2);
    const AngleSet angles = AngleSet::full_uniform(9, pi, 0.13);
    const Image f = rasterize_disc(grid, 0.6);
    double pixel_mass = 0.0;
    for (double v : f.values()) pixel_mass += v;
    pixel_mass *= grid.delta_x() * grid.delta_x();

    const Sinogram g = radon_forward(f, det, angles);
    for (int q = 0; q < angles.count(); ++q) {
        double detector_mass = 0.0;
        for (int p = 0; p < det.count(); ++p) detector_mass += g.at(p, q);
        detector_mass *= det.delta_s();
        CHECK(std::abs(detector_mass - pixel_mass) <= 1e-12 * pixel_mass);
    }
}

TEST_CASE("forward and backprojection are adjoint for every angle-set kind") {
    const ImageGrid grid(24, 17, 2.0 / 24);
    const DetectorGrid det(19, 2.0);
    const std::vector<AngleSet> sets = {
        AngleSet::full_uniform(7, 2 * pi),
        AngleSet::full_uniform(7, pi),
        AngleSet::limited({0.2, 0.5, 0.9, 1.4}),
        AngleSet::sparse({0.0, pi / 2, 2.1}),
    };
    for (const AngleSet& angles : sets) {
        const double gap = adjointness_gap(
            [&](const Image& f) { return radon_forward(f, det, angles); },
            [&](const Sinogram& s) { return radon_backproject(s, grid); },
            grid, det, angles, 8, 42);
        CHECK(gap <= 1e-10);
    }
}

TEST_CASE("forward operator is linear") {
    const ImageGrid grid = ImageGrid::square(12, 2.0);
    const DetectorGrid det(9, 2.0);
    const AngleSet angles = AngleSet::full_uniform(5, pi);
    std::mt19937_64 engine(5);
    Image f(grid), h(grid);
    fill_uniform_pm1(f.values(), engine);
    fill_uniform_pm1(h.values(), engine);
    const double alpha = 1.7, beta = -0.4;

    Image combo(grid);
    for (std::size_t k = 0; k < combo.size(); ++k)
        combo.values()[k] = alpha * f.values()[k] + beta * h.values()[k];

    const Sinogram lhs = radon_forward(combo, det, angles);
    const Sinogram gf = radon_forward(f, det, angles);
    const Sinogram gh = radon_forward(h, det, angles);
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        const double rhs = alpha * gf.values()[k] + beta * gh.values()[k];
        CHECK(lhs.values()[k] == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("nonnegative images produce nonnegative sinograms") {
    const ImageGrid grid = ImageGrid::square(15, 2.0);
    const DetectorGrid det(11, 2.0);
    const AngleSet angles = AngleSet::full_uniform(6, pi, 0.05);
    std::mt19937_64 engine(9);
    Image f(grid);
    for (double& v : f.values()) v = std::abs(uniform_pm1(engine));
    const Sinogram g = radon_forward(f, det, angles);
    for (double v : g.values()) CHECK(v >= 0.0);
}

TEST_CASE("results are bit-identical across thread counts") {
    const ImageGrid grid = ImageGrid::square(33, 2.0);
    const DetectorGrid det(29, 2.0);
    const AngleSet angles = AngleSet::full_uniform(11, pi, 0.31);
    std::mt19937_64 engine(17);
    Image f(grid);
    fill_uniform_pm1(f.values(), engine);
    Sinogram g(det, angles);
    fill_uniform_pm1(g.values(), engine);

    set_num_threads(1);
    const Sinogram fwd1 = radon_forward(f, det, angles);
    const Image bp1 = radon_backproject(g, grid);
    set_num_threads(hardware_threads());
    const Sinogram fwd2 = radon_forward(f, det, angles);
    const Image bp2 = radon_backproject(g, grid);

    for (std::size_t k = 0; k < fwd1.size(); ++k)
        CHECK(fwd1.values()[k] == fwd2.values()[k]);
    for (std::size_t k = 0; k < bp1.size(); ++k)
        CHECK(bp1.values()[k] == bp2.values()[k]);
}

TEST_CASE("kernels match the brute-force sums on small grids") {
    std::mt19937_64 engine(29);
    const std::vector<AngleSet> sets = {
        AngleSet::full_uniform(4, 2 * pi, 0.3),
        AngleSet::limited({0.2, 0.9, 1.9}),
        AngleSet::sparse({0.0, pi / 2, 3.9}),
    };
    for (int nx : {1, 3, 8}) {
        for (int p_count : {1, 4, 8}) {
            const ImageGrid grid(nx, (nx * 2) % 7 + 1, 2.0 / nx);
            const DetectorGrid det(p_count, 2.0);
            for (const AngleSet& angles : sets) {
                Image f(grid);
                fill_uniform_pm1(f.values(), engine);
                Sinogram g(det, angles);
                fill_uniform_pm1(g.values(), engine);

                const Sinogram fast_fwd = radon_forward(f, det, angles);
                const Sinogram slow_fwd = naive::radon_forward(f, det, angles);
                CHECK(naive::max_rel_diff(fast_fwd.values(),
                                          slow_fwd.values()) <= 1e-14);

                const Image fast_bp = radon_backproject(g, grid);
                const Image slow_bp = naive::radon_backproject(g, grid);
                CHECK(naive::max_rel_diff(fast_bp.values(),
                                          slow_bp.values()) <= 1e-14);
            }
        }
    }
}

TEST_SUITE_END();
