#pragma once

namespace pdtomo {

// Caps the number of worker threads used by the projector kernels.
// Results are bit-identical for every thread count; this only trades time
// for cores. n <= 0 restores the hardware default.
void set_num_threads(int n);

int hardware_threads();

}  // namespace pdtomo
