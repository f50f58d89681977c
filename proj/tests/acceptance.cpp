// Acceptance suite: one check per shipped guarantee, each printed as a
// single [PASS]/[FAIL] line. Returns the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "naive_ref.hpp"
#include "pdtomo/analysis.hpp"
#include "pdtomo/fanbeam.hpp"
#include "pdtomo/joseph.hpp"
#include "pdtomo/phantoms.hpp"
#include "pdtomo/radon.hpp"
#include "pdtomo/rng.hpp"
#include "pdtomo/solvers.hpp"

using namespace pdtomo;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// ---- 1. exact adjointness of both pixel-driven pairs ----------------------

Outcome check_adjointness() {
    struct Case {
        int n, p, q;
    };
    const std::vector<Case> cases = {{128, 128, 90}, {129, 97, 45}};
    double worst = 0.0;
    for (const Case& c : cases) {
        const ImageGrid grid = ImageGrid::square(c.n, 2.0);
        const DetectorGrid det(c.p, 2.0);
        const AngleSet par_angles = AngleSet::full_uniform(c.q, pi);
        worst = std::max(
            worst,
            adjointness_gap(
                [&](const Image& f) { return radon_forward(f, det, par_angles); },
                [&](const Sinogram& s) { return radon_backproject(s, grid); },
                grid, det, par_angles, 20, 42));

        const FanGeometry geo(3.0, 5.0, c.p);
        const AngleSet fan_angles = AngleSet::full_uniform(c.q, 2 * pi);
        worst = std::max(
            worst,
            adjointness_gap(
                [&](const Image& f) { return fan_forward(f, geo, fan_angles); },
                [&](const Sinogram& s) {
                    return fan_backproject(s, geo, grid);
                },
                grid, geo.detector(), fan_angles, 20, 43));
    }
    return {worst <= 1e-10, "max relative gap " + fmt(worst)};
}

// ---- 2. partition of unity and per-angle mass conservation ----------------

Outcome check_partition_and_mass() {
    const DetectorGrid det(128, 2.0);
    const double ds = det.delta_s();
    const double s_first = det.offset(0);
    const double s_last = det.offset(det.count() - 1);
    std::mt19937_64 engine(5);
    double worst_partition = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double t =
            s_first + (s_last - s_first) * 0.5 * (uniform_pm1(engine) + 1.0);
        double sum = 0.0;
        for (int p = 0; p < det.count(); ++p)
            sum += hat_weight(t - det.offset(p), ds) / ds;
        worst_partition = std::max(worst_partition, std::abs(sum - 1.0));
    }

    const ImageGrid grid = ImageGrid::square(128, 2.0);
    const AngleSet angles = AngleSet::full_uniform(16, pi, 0.07);
    const Image disc = rasterize_disc(grid, 0.6);
    double pixel_mass = 0.0;
    for (double v : disc.values()) pixel_mass += v;
    pixel_mass *= grid.delta_x() * grid.delta_x();
    const Sinogram g = radon_forward(disc, det, angles);
    double worst_mass = 0.0;
    for (int q = 0; q < angles.count(); ++q) {
        double detector_mass = 0.0;
        for (int p = 0; p < det.count(); ++p) detector_mass += g.at(p, q);
        detector_mass *= ds;
        worst_mass = std::max(
            worst_mass, std::abs(detector_mass - pixel_mass) / pixel_mass);
    }
    const bool pass = worst_partition <= 1e-12 && worst_mass <= 1e-12;
    return {pass, "partition " + fmt(worst_partition) + ", mass " +
                      fmt(worst_mass)};
}

// ---- 3. brute-force equivalence on every small configuration --------------

Outcome check_brute_force() {
    std::mt19937_64 engine(11);
    const std::vector<AngleSet> sets = {
        AngleSet::full_uniform(4, 2 * pi, 0.3),
        AngleSet::limited({0.2, 0.9, 1.9}),
        AngleSet::sparse({0.0, pi / 2, 2.5, 5.0}),
    };
    double worst = 0.0;
    long configs = 0;
    for (int nx = 1; nx <= 8; ++nx)
        for (int ny = 1; ny <= 8; ++ny)
            for (int p_count = 1; p_count <= 8; ++p_count)
                for (const AngleSet& angles : sets) {
                    const ImageGrid grid(nx, ny, 2.0 / std::max(nx, ny));
                    const DetectorGrid det(p_count, 2.0);
                    // R_E = 4 keeps even one-pixel grids under the
                    // delta_x < (R_E - 1)/sqrt(2) limit
                    const FanGeometry geo(4.0, 6.0, p_count);
                    Image f(grid);
                    fill_uniform_pm1(f.values(), engine);
                    Sinogram par_g(det, angles);
                    fill_uniform_pm1(par_g.values(), engine);
                    Sinogram fan_g(geo.detector(), angles);
                    fill_uniform_pm1(fan_g.values(), engine);

                    worst = std::max(
                        worst, naive::max_rel_diff(
                                   radon_forward(f, det, angles).values(),
                                   naive::radon_forward(f, det, angles)
                                       .values()));
                    worst = std::max(
                        worst, naive::max_rel_diff(
                                   radon_backproject(par_g, grid).values(),
                                   naive::radon_backproject(par_g, grid)
                                       .values()));
                    worst = std::max(
                        worst,
                        naive::max_rel_diff(
                            fan_forward(f, geo, angles).values(),
                            naive::fan_forward(f, geo, angles).values()));
                    worst = std::max(
                        worst,
                        naive::max_rel_diff(
                            fan_backproject(fan_g, geo, grid).values(),
                            naive::fan_backproject(fan_g, geo, grid).values()));
                    ++configs;
                }
    return {worst <= 1e-14, std::to_string(configs * 4) +
                                " kernel runs, max relative deviation " +
                                fmt(worst)};
}

// ---- 4/5. convergence rates under the two coupling rules ------------------

struct StudyPair {
    ConvergenceStudy quadratic;
    ConvergenceStudy linear;
    bool ready = false;
};

StudyPair& studies() {
    static StudyPair pair;
    if (!pair.ready) {
        StudyOptions options;  // period pi, r = 0.6
        pair.quadratic =
            convergence_study({50, 100, 200, 400}, Coupling::quadratic, options);
        pair.linear =
            convergence_study({100, 200, 400}, Coupling::linear, options);
        pair.ready = true;
    }
    return pair;
}

double worst_at(const ConvergenceStudy& study, int p) {
    for (const ConvergenceRecord& r : study.records)
        if (r.detectors == p) return r.l2_error_worst_projection;
    return std::nan("");
}

Outcome check_quadratic_coupling() {
    const ConvergenceStudy& study = studies().quadratic;
    const double slope = study.fitted_slope;
    bool monotone = true;
    for (std::size_t k = 1; k < study.records.size(); ++k)
        monotone = monotone && (study.records[k].l2_error_worst_projection <
                                study.records[k - 1].l2_error_worst_projection);
    const bool pass = slope >= 0.7 && slope <= 1.3 && monotone;
    return {pass, "fitted slope " + fmt(slope) + ", worst-projection errors " +
                      (monotone ? "strictly decreasing" : "NOT decreasing")};
}

Outcome check_linear_coupling() {
    const ConvergenceStudy& lin = studies().linear;
    const ConvergenceStudy& quad = studies().quadratic;
    const double lin_drop =
        1.0 - worst_at(lin, 400) / worst_at(lin, 100);
    const double quad_drop =
        1.0 - worst_at(quad, 400) / worst_at(quad, 100);
    const bool pass = lin_drop < 0.2 && quad_drop > 0.5;
    return {pass, "worst-projection drop P=100->400: linear " + fmt(lin_drop) +
                      ", quadratic " + fmt(quad_drop)};
}

// ---- 6. Landweber, adjoint vs non-adjoint ----------------------------------

Outcome check_landweber() {
    const int n = 300, p_count = 300, q_count = 100, iterations = 200;
    const ImageGrid grid = ImageGrid::square(n, 2.0);
    const DetectorGrid det(p_count, 2.0);
    const AngleSet angles = AngleSet::full_uniform(q_count, pi);
    const Image phantom = rasterize_shepp_logan(grid);

    const ForwardOp pd_fwd = [&](const Image& f) {
        return radon_forward(f, det, angles);
    };
    const ForwardOp jo_fwd = [&](const Image& f) {
        return joseph_forward(f, det, angles);
    };
    const BackwardOp pd_bwd = [&](const Sinogram& s) {
        return radon_backproject(s, grid);
    };

    const double sigma =
        estimate_operator_norm(pd_fwd, pd_bwd, grid, det, angles, 50, 7);
    const double omega = 0.9 / (sigma * sigma);

    // each method inverts data generated by its own forward operator
    const auto [pd_image, pd_trace] = landweber(
        pd_fwd, pd_bwd, pd_fwd(phantom), omega, iterations, Image(grid));
    const auto [jo_image, jo_trace] = landweber(
        jo_fwd, pd_bwd, jo_fwd(phantom), omega, iterations, Image(grid));

    bool monotone = true;
    for (std::size_t k = 1; k < pd_trace.residual_norms.size(); ++k)
        monotone = monotone && (pd_trace.residual_norms[k] <=
                                pd_trace.residual_norms[k - 1] * (1.0 + 1e-12));
    const double pd_ratio =
        pd_trace.residual_norms.back() / pd_trace.residual_norms.front();
    const double jo_ratio =
        jo_trace.residual_norms.back() / jo_trace.residual_norms.front();
    const bool pass = monotone && jo_ratio >= 2.0 * pd_ratio &&
                      !pd_trace.diverged && !jo_trace.diverged;
    return {pass, std::string("PD/PD* ") +
                      (monotone ? "nonincreasing" : "NOT monotone") +
                      ", residual ratios PD " + fmt(pd_ratio) + " vs JO " +
                      fmt(jo_ratio)};
}

// ---- 7. pixel-driven vs ray-driven agreement -------------------------------

Outcome check_forward_agreement() {
    const ImageGrid grid = ImageGrid::square(400, 2.0);
    const DetectorGrid det(400, 2.0);
    const AngleSet angles = AngleSet::full_uniform(360, pi);
    const Image phantom = rasterize_shepp_logan(grid);
    const Sinogram pd = radon_forward(phantom, det, angles);
    const Sinogram jo = joseph_forward(phantom, det, angles);
    double diff_sq = 0.0, ref_sq = 0.0;
    for (std::size_t k = 0; k < pd.size(); ++k) {
        const double d = pd.values()[k] - jo.values()[k];
        diff_sq += d * d;
        ref_sq += pd.values()[k] * pd.values()[k];
    }
    const double rel = std::sqrt(diff_sq / ref_sq);
    return {rel <= 0.05, "relative L2 distance " + fmt(rel)};
}

// ---- 8. fan/parallel reparametrization consistency -------------------------

Outcome check_reparametrization() {
    const FanGeometry geo(3.0, 5.0, 400);

    // coordinate roundtrip
    double worst_roundtrip = 0.0;
    std::mt19937_64 engine(3);
    for (int k = 0; k < 1000; ++k) {
        const double xi = 20.0 * uniform_pm1(engine);
        const ParallelCoords c = fan_to_parallel_coords(xi, 0.0, geo);
        const double back = parallel_to_fan_offset(c.s, geo);
        worst_roundtrip =
            std::max(worst_roundtrip,
                     std::abs(back - xi) / std::max(1.0, std::abs(xi)));
    }

    // interpolated consistency on the disc phantom
    const int n = 400, q_count = 360;
    const ImageGrid grid = ImageGrid::square(n, 2.0);
    const Image disc = rasterize_disc(grid, 0.6);
    const AngleSet fan_angles = AngleSet::full_uniform(q_count, 2 * pi);
    const Sinogram fan = fan_forward(disc, geo, fan_angles);

    const DetectorGrid par_det(n, 2.0);
    const AngleSet par_angles = AngleSet::full_uniform(q_count, 2 * pi);
    const Sinogram par = radon_forward(disc, par_det, par_angles);

    // bilinear interpolation of the parallel sinogram at the fan ray's
    // (s, phi); angles wrap modulo 2*pi
    const double ds = par_det.delta_s();
    const double dphi = 2 * pi / q_count;
    auto par_interp = [&](double s, double phi) {
        const double pf = (s - par_det.offset(0)) / ds;
        const double qf = phi / dphi;
        const int p0 = static_cast<int>(std::floor(pf));
        const double pw = pf - p0;
        const double qw = qf - std::floor(qf);
        const long q0 = static_cast<long>(std::floor(qf));
        double acc = 0.0;
        for (int dp = 0; dp <= 1; ++dp) {
            const int p = p0 + dp;
            if (p < 0 || p >= par_det.count()) continue;
            const double wp = dp ? pw : 1.0 - pw;
            for (int dq = 0; dq <= 1; ++dq) {
                const int q = static_cast<int>(((q0 + dq) % q_count + q_count) %
                                               q_count);
                const double wq = dq ? qw : 1.0 - qw;
                acc += wp * wq * par.at(p, q);
            }
        }
        return acc;
    };

    double diff_sq = 0.0, ref_sq = 0.0;
    for (int q = 0; q < q_count; ++q)
        for (int p = 0; p < geo.detector().count(); ++p) {
            const ParallelCoords c = fan_to_parallel_coords(
                geo.detector().offset(p), fan_angles.angle(q), geo);
            const double predicted = par_interp(c.s, c.phi);
            const double d = fan.at(p, q) - predicted;
            diff_sq += d * d;
            ref_sq += fan.at(p, q) * fan.at(p, q);
        }
    const double rel = std::sqrt(diff_sq / ref_sq);
    const bool pass = worst_roundtrip <= 1e-12 && rel <= 0.05;
    return {pass, "roundtrip " + fmt(worst_roundtrip) +
                      ", interpolated consistency " + fmt(rel)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"exact adjointness of the pixel-driven pairs", check_adjointness},
        {"partition of unity and mass conservation", check_partition_and_mass},
        {"brute-force oracle equivalence", check_brute_force},
        {"O(delta_s) convergence under quadratic coupling",
         check_quadratic_coupling},
        {"non-convergence under linear coupling", check_linear_coupling},
        {"Landweber adjoint vs non-adjoint residuals", check_landweber},
        {"pixel-driven matches ray-driven sinograms", check_forward_agreement},
        {"fan/parallel reparametrization consistency", check_reparametrization},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[k].run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        std::printf("[%s] criterion %zu: %s (%s) [%.1fs]\n",
                    outcome.pass ? "PASS" : "FAIL", k + 1, criteria[k].name,
                    outcome.detail.c_str(), elapsed.count());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures;
}
