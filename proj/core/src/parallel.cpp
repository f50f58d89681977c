#include "pdtomo/parallel.hpp"

#include <thread>

#ifdef PDTOMO_HAVE_OPENMP
#include <omp.h>
#endif

namespace pdtomo {

void set_num_threads(int n) {
#ifdef PDTOMO_HAVE_OPENMP
    if (n <= 0) n = omp_get_num_procs();
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int hardware_threads() {
#ifdef PDTOMO_HAVE_OPENMP
    return omp_get_max_threads();
#else
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
#endif
}

}  // namespace pdtomo
