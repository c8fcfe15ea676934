#include "sympcalc/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace sympcalc {

int configure_threads() {
    static int threads = [] {
        int n = omp_get_max_threads();
        if (const char* env = std::getenv("SYMPCALC_THREADS")) {
            try {
                int cap = std::stoi(env);
                if (cap >= 1) n = cap;
            } catch (...) {
                // ignore malformed values, keep the OpenMP default
            }
        }
        omp_set_num_threads(n);
        return n;
    }();
    return threads;
}

namespace detail {

void omp_for_impl(std::size_t n, void* ctx, void (*body)(void*, std::size_t)) {
    configure_threads();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        body(ctx, static_cast<std::size_t>(i));
}

} // namespace detail
} // namespace sympcalc
