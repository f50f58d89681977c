#include "pdtomo/analysis.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "pdtomo/phantoms.hpp"
#include "pdtomo/radon.hpp"
#include "pdtomo/rng.hpp"

namespace pdtomo {

double image_inner(const Image& a, const Image& b) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("image_inner: grid mismatch");
    const double* pa = a.data();
    const double* pb = b.data();
    double sum = 0.0;
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) sum += pa[k] * pb[k];
    const double dx = a.grid().delta_x();
    return dx * dx * sum;
}

double sino_inner(const Sinogram& a, const Sinogram& b) {
    if (!(a.detector() == b.detector()) || !(a.angles() == b.angles()))
        throw std::invalid_argument("sino_inner: detector/angle mismatch");
    const int p_count = a.detector().count();
    const int q_count = a.angles().count();
    const double* pa = a.data();
    const double* pb = b.data();
    double sum = 0.0;
    for (int q = 0; q < q_count; ++q) {
        double inner = 0.0;
        const std::size_t base = static_cast<std::size_t>(q) * p_count;
        for (int p = 0; p < p_count; ++p) inner += pa[base + p] * pb[base + p];
        sum += a.angles().weight(q) * inner;
    }
    return a.detector().delta_s() * sum;
}

double image_norm(const Image& a) { return std::sqrt(image_inner(a, a)); }
double sino_norm(const Sinogram& a) { return std::sqrt(sino_inner(a, a)); }

double adjointness_gap(const ForwardOp& forward, const BackwardOp& backward,
                       const ImageGrid& grid, const DetectorGrid& detector,
                       const AngleSet& angles, int trials, std::uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("adjointness_gap: trials must be >= 1");
    std::mt19937_64 engine(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Image f(grid);
        Sinogram g(detector, angles);
        fill_uniform_pm1(f.values(), engine);
        fill_uniform_pm1(g.values(), engine);
        const double lhs = sino_inner(forward(f), g);
        const double rhs = image_inner(f, backward(g));
        const double gap =
            std::abs(lhs - rhs) / (image_norm(f) * sino_norm(g));
        worst = std::max(worst, gap);
    }
    return worst;
}

double estimate_operator_norm(const ForwardOp& forward,
                              const BackwardOp& backward,
                              const ImageGrid& grid,
                              const DetectorGrid& detector,
                              const AngleSet& angles, int iterations,
                              std::uint64_t seed, NormSide side) {
    if (iterations < 1)
        throw std::invalid_argument(
            "estimate_operator_norm: iterations must be >= 1");
    std::mt19937_64 engine(seed);
    double sigma_sq = 0.0;
    if (side == NormSide::image) {
        Image x(grid);
        double norm = 0.0;
        do {  // a zero start cannot be normalized; redraw
            fill_uniform_pm1(x.values(), engine);
            norm = image_norm(x);
        } while (!(norm > 0.0));
        for (int k = 0; k < iterations; ++k) {
            for (double& v : x.values()) v /= norm;
            const Image y = backward(forward(x));
            sigma_sq = image_inner(y, x);  // Rayleigh quotient of R*R
            x = y;
            norm = image_norm(x);
            if (!(norm > 0.0)) return 0.0;  // operator annihilated the iterate
        }
    } else {
        Sinogram x(detector, angles);
        double norm = 0.0;
        do {
            fill_uniform_pm1(x.values(), engine);
            norm = sino_norm(x);
        } while (!(norm > 0.0));
        for (int k = 0; k < iterations; ++k) {
            for (double& v : x.values()) v /= norm;
            const Sinogram y = forward(backward(x));
            sigma_sq = sino_inner(y, x);
            x = y;
            norm = sino_norm(x);
            if (!(norm > 0.0)) return 0.0;
        }
    }
    return std::sqrt(std::max(0.0, sigma_sq));
}

namespace {

// Integral of (r^2 - s^2)_+ , clipped antiderivative r^2 s - s^3/3.
inline double clipped_g_sq_integral(double s, double r) {
    const double c = std::min(r, std::max(-r, s));
    return r * r * c - c * c * c / 3.0;
}

}  // namespace

double disc_projection_norm_sq(const DetectorGrid& detector, double r) {
    const double half = 0.5 * detector.delta_s();
    double sum = 0.0;
    for (int p = 0; p < detector.count(); ++p) {
        const double sp = detector.offset(p);
        sum += clipped_g_sq_integral(sp + half, r) -
               clipped_g_sq_integral(sp - half, r);
    }
    return sum;
}

DiscL2Error disc_l2_error(const Sinogram& sinogram, double r) {
    if (!(r > 0.0))
        throw std::invalid_argument("disc_l2_error: radius must be > 0");
    const DetectorGrid& detector = sinogram.detector();
    const AngleSet& angles = sinogram.angles();
    const int p_count = detector.count();
    const int q_count = angles.count();
    const double ds = detector.delta_s();

    // per-cell weights of the cross term <g, gd>
    std::vector<double> cell_integral(p_count);
    for (int p = 0; p < p_count; ++p) {
        const double sp = detector.offset(p);
        cell_integral[p] = disc_projection_integral(sp + 0.5 * ds, r) -
                           disc_projection_integral(sp - 0.5 * ds, r);
    }
    const double exact_norm_sq = disc_projection_norm_sq(detector, r);

    DiscL2Error result;
    result.per_angle.resize(q_count);
    const double* g = sinogram.data();
    double full_sq = 0.0;
    for (int q = 0; q < q_count; ++q) {
        const std::size_t base = static_cast<std::size_t>(q) * p_count;
        double discrete_sq = 0.0, cross = 0.0;
        for (int p = 0; p < p_count; ++p) {
            const double v = g[base + p];
            discrete_sq += v * v;
            cross += v * cell_integral[p];
        }
        const double err_sq =
            std::max(0.0, exact_norm_sq + ds * discrete_sq - 2.0 * cross);
        result.per_angle[q] = std::sqrt(err_sq);
        full_sq += angles.weight(q) * err_sq;
    }
    result.full = std::sqrt(std::max(0.0, full_sq));
    return result;
}

namespace {

int couple_image_size(Coupling coupling, int p) {
    if (coupling == Coupling::linear) return p;
    return static_cast<int>(std::lround(p * p / 90.0)) + p;
}

int couple_angle_count(Coupling coupling, int p) {
    int q;
    if (coupling == Coupling::linear)
        q = static_cast<int>(std::lround(p / 10.0));
    else
        q = static_cast<int>(std::lround(p * p / 900.0)) +
            static_cast<int>(std::lround(p / 10.0));
    return std::max(q, 1);
}

}  // namespace

ConvergenceStudy convergence_study(const std::vector<int>& p_list,
                                   Coupling coupling,
                                   const StudyOptions& options) {
    if (p_list.empty())
        throw std::invalid_argument("convergence_study: empty P list");
    for (std::size_t k = 1; k < p_list.size(); ++k)
        if (p_list[k] <= p_list[k - 1])
            throw std::invalid_argument(
                "convergence_study: P list must be ascending");

    ConvergenceStudy study;
    for (int p : p_list) {
        const int n = couple_image_size(coupling, p);
        const int q = couple_angle_count(coupling, p);
        const double cost = static_cast<double>(n) * n * q +
                            static_cast<double>(n) * p * q;
        if (cost > options.op_budget)
            throw std::invalid_argument(
                "convergence_study: predicted cost " + std::to_string(cost) +
                " exceeds budget " + std::to_string(options.op_budget) +
                " at P=" + std::to_string(p));

        const auto start = std::chrono::steady_clock::now();
        const ImageGrid grid = ImageGrid::square(n, 2.0);
        const DetectorGrid detector(p, 2.0);
        const AngleSet angles = AngleSet::full_uniform(q, options.period);
        // The closed-form reference g(s) = sqrt(r^2 - s^2) is the projection
        // of the disc at amplitude 1/2; the full indicator projects to the
        // chord length, twice that.
        Image phantom = rasterize_disc(grid, options.r, options.supersample);
        for (double& v : phantom.values()) v *= 0.5;
        const Sinogram sino = radon_forward(phantom, detector, angles);
        const DiscL2Error err = disc_l2_error(sino, options.r);
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;

        double worst = 0.0;
        for (double e : err.per_angle) worst = std::max(worst, e);
        study.records.push_back({p, n, q, detector.delta_s(), err.full, worst,
                                 elapsed.count()});
    }

    // log-log slopes of the full error against delta_s
    const auto& rec = study.records;
    for (std::size_t k = 1; k < rec.size(); ++k) {
        const double num = std::log(rec[k].l2_error_full) -
                           std::log(rec[k - 1].l2_error_full);
        const double den =
            std::log(rec[k].delta_s) - std::log(rec[k - 1].delta_s);
        study.pair_slopes.push_back(num / den);
    }
    if (rec.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const ConvergenceRecord& c : rec) {
            const double x = std::log(c.delta_s);
            const double y = std::log(c.l2_error_full);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(rec.size());
        study.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    } else {
        study.fitted_slope = std::nan("");
    }
    return study;
}

}  // namespace pdtomo
