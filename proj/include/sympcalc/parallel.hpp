#ifndef SYMPCALC_PARALLEL_HPP
#define SYMPCALC_PARALLEL_HPP

#include <cstddef>

namespace sympcalc {

/** Execution policy for the hot kernels. Every parallel kernel has a serial
 * twin that runs the same loop body in index order; the two must produce
 * bit-identical results (per-element work is independent, reductions are
 * done serially after the fill). */
enum class Exec { serial, parallel };

/** Applies the SYMPCALC_THREADS cap to the OpenMP runtime. Called once
 * lazily; safe to call again. Returns the thread count in effect. */
int configure_threads();

namespace detail {
void omp_for_impl(std::size_t n, void* ctx, void (*body)(void*, std::size_t));
}

/** Runs fn(i) for i in [0, n), either serially or under an OpenMP
 * parallel-for. fn must not depend on execution order. */
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& fn) {
    if (exec == Exec::parallel) {
        auto thunk = [](void* ctx, std::size_t i) { (*static_cast<F*>(ctx))(i); };
        detail::omp_for_impl(n, &fn, thunk);
    } else {
        for (std::size_t i = 0; i < n; ++i) fn(i);
    }
}

} // namespace sympcalc

#endif
