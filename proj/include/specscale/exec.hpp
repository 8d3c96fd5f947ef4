#pragma once

#include <cstddef>

namespace specscale {

/// Execution policy for the data-parallel scan kernels. Every kernel writes
/// result slot i from work item i only, so Serial and Parallel produce
/// bit-identical output; the serial path is kept as the reference the tests
/// compare against.
enum class Exec { Serial, Parallel };

template <class F>
void for_each_index(Exec policy, std::ptrdiff_t count, F&& f) {
    if (policy == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) f(i);
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) f(i);
    }
}

}  // namespace specscale
