#include "pdtomo/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace pdtomo {

std::pair<Image, LandweberTrace> landweber(const ForwardOp& forward,
                                           const BackwardOp& backward,
                                           const Sinogram& data, double omega,
                                           int iterations, const Image& initial,
                                           const LandweberOptions& options) {
    if (!(omega > 0.0))
        throw std::invalid_argument("landweber: omega must be > 0");
    if (iterations < 0)
        throw std::invalid_argument("landweber: iterations must be >= 0");

    Image f = initial;
    LandweberTrace trace;
    trace.omega = omega;
    trace.residual_norms.reserve(iterations + 1);

    for (int k = 0; k <= iterations; ++k) {
        Sinogram residual = forward(f);
        {
            double* r = residual.data();
            const double* g = data.data();
            if (residual.size() != data.size())
                throw std::invalid_argument(
                    "landweber: data does not match forward operator output");
            for (std::size_t idx = 0; idx < residual.size(); ++idx)
                r[idx] -= g[idx];
        }
        const double rnorm = sino_norm(residual);
        trace.residual_norms.push_back(rnorm);
        if (!std::isfinite(rnorm)) {
            trace.diverged = true;
            trace.iterations = k;
            return {std::move(f), std::move(trace)};
        }
        if (k == iterations) break;

        const Image step = backward(residual);
        double* fv = f.data();
        const double* sv = step.data();
        for (std::size_t idx = 0; idx < f.size(); ++idx)
            fv[idx] -= omega * sv[idx];

        if (options.snapshot_every > 0 && (k + 1) % options.snapshot_every == 0)
            trace.iterates_kept.push_back(f);
    }
    trace.iterations = iterations;
    return {std::move(f), std::move(trace)};
}

}  // namespace pdtomo
