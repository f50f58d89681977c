#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pdtomo/arrays.hpp"

// Weighted inner products, adjointness and operator-norm measurement, the
// closed-form L2-error oracle for the disc phantom, and the convergence-study
// driver.

namespace pdtomo {

using ForwardOp = std::function<Sinogram(const Image&)>;
using BackwardOp = std::function<Image(const Sinogram&)>;

// <a,b>_U = dx^2 * sum_ij a_ij b_ij
double image_inner(const Image& a, const Image& b);
// <a,b>_V = ds * sum_pq w_q a_pq b_pq
double sino_inner(const Sinogram& a, const Sinogram& b);
double image_norm(const Image& a);
double sino_norm(const Sinogram& a);

// Max over seeded random trials of
// |<Rf,g>_V - <f,R*g>_U| / (|f|_U * |g|_V).
// Zero for exact transpose pairs up to round-off.
double adjointness_gap(const ForwardOp& forward, const BackwardOp& backward,
                       const ImageGrid& grid, const DetectorGrid& detector,
                       const AngleSet& angles, int trials, std::uint64_t seed);

enum class NormSide { image, sinogram };

// Power iteration on backward∘forward (or forward∘backward when starting on
// the sinogram side); returns the square root of the final Rayleigh quotient.
double estimate_operator_norm(const ForwardOp& forward,
                              const BackwardOp& backward,
                              const ImageGrid& grid,
                              const DetectorGrid& detector,
                              const AngleSet& angles, int iterations,
                              std::uint64_t seed,
                              NormSide side = NormSide::image);

struct DiscL2Error {
    double full = 0.0;                  // L2 error over the sinogram domain
    std::vector<double> per_angle;      // L2 error of each projection
};

// L2 distance between the given sinogram and the reference disc projection
// g(s) = sqrt(r^2 - s^2)_+ (the half-amplitude disc), evaluated by closed
// forms (no quadrature): |g - gd|^2 = |g|^2 + |gd|^2 - 2 <g, gd>, with the
// continuous terms integrated cell by cell.
DiscL2Error disc_l2_error(const Sinogram& sinogram, double r);

// Cell-resolved integral of g^2 over the detector span for one unit of
// angle; |g|^2 over the sinogram domain is the angle-weight sum times this.
double disc_projection_norm_sq(const DetectorGrid& detector, double r);

enum class Coupling {
    linear,     // N = P,                  Q = P/10
    quadratic,  // N = round(P^2/90) + P,  Q = round(P^2/900) + round(P/10)
};

struct ConvergenceRecord {
    int detectors = 0;      // P
    int image_size = 0;     // N (square grid)
    int angle_count = 0;    // Q
    double delta_s = 0.0;
    double l2_error_full = 0.0;
    double l2_error_worst_projection = 0.0;
    double wall_time_s = 0.0;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRecord> records;
    std::vector<double> pair_slopes;  // log-log slope between consecutive P
    double fitted_slope = 0.0;        // least-squares fit, NaN if < 2 records
};

struct StudyOptions {
    double period = 3.14159265358979323846;  // angular period of the full set
    double r = 0.6;                          // disc radius
    int supersample = 8;                     // disc rasterization oversampling
    double op_budget = 1e11;                 // refuse runs above N*M*Q + M*P*Q
};

// For each P: rasterize the half-amplitude disc on the coupled N x N grid,
// run the pixel-driven forward projector over Q uniform angles, and measure
// the closed-form L2 errors against g(s) = sqrt(r^2 - s^2)_+.
ConvergenceStudy convergence_study(const std::vector<int>& p_list,
                                   Coupling coupling,
                                   const StudyOptions& options = {});

}  // namespace pdtomo
