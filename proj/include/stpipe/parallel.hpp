#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace stpipe {

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs fn(i) for i in [0, n), OpenMP-parallel when available and requested.
// Results must be written to pre-sized per-index slots so output order
// never depends on the schedule. Exceptions are captured per index and the
// lowest-index one is rethrown, matching what the serial loop would surface.
template <typename Fn>
void parallel_for(std::size_t n, bool parallel, Fn&& fn) {
#if defined(_OPENMP)
    if (parallel && n > 1 && max_threads() > 1) {
        std::vector<std::exception_ptr> errors(n);
        #pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(n); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        return;
    }
#else
    (void)parallel;
#endif
    for (std::size_t i = 0; i < n; ++i)
        fn(i);
}

} // namespace stpipe
