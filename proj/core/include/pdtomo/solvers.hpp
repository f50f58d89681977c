#pragma once

#include <utility>
#include <vector>

#include "pdtomo/analysis.hpp"
#include "pdtomo/arrays.hpp"

namespace pdtomo {

struct LandweberTrace {
    std::vector<double> residual_norms;  // |R f_k - g|_V for k = 0..iterations
    std::vector<Image> iterates_kept;    // optional snapshots
    double omega = 0.0;
    int iterations = 0;                  // iterations actually performed
    bool diverged = false;               // stopped on a non-finite residual
};

struct LandweberOptions {
    int snapshot_every = 0;  // 0 keeps no intermediate iterates
};

// Classical Landweber iteration f_{k+1} = f_k - omega * backward(forward(f_k) - g)
// for the least-squares problem forward(f) = g. When backward is the exact
// adjoint and omega < 2/sigma_max^2 the residuals are nonincreasing. A
// non-finite residual aborts the iteration with trace.diverged set; the trace
// always holds iterations + 1 residual norms for the performed count.
std::pair<Image, LandweberTrace> landweber(const ForwardOp& forward,
                                           const BackwardOp& backward,
                                           const Sinogram& data, double omega,
                                           int iterations, const Image& initial,
                                           const LandweberOptions& options = {});

}  // namespace pdtomo
