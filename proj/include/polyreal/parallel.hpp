#pragma once

#include <cstddef>

namespace polyreal {

// Every parallel kernel in the library takes one of these. Serial is the
// reference path; tests cross-check that both modes produce identical results.
enum class ExecMode { Serial, OpenMP };

template <typename F>
void parallel_for(std::size_t n, ExecMode mode, F&& fn) {
    if (mode == ExecMode::Serial) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        fn(static_cast<std::size_t>(i));
}

}  // namespace polyreal
