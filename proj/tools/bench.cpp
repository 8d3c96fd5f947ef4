// Times the OpenMP scan kernels against their serial reference on a seeded
// workload and prints the speedups.

#include <chrono>
#include <cstdio>

#include "specscale/oracle.hpp"
#include "specscale/range.hpp"
#include "specscale/scale.hpp"

using namespace specscale;

namespace {

template <class F>
double time_once(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
    const int n = 12;
    CMat c = random_matrix({n, RandomKind::Ginibre, 20240901});
    Operator op = decompose(c);

    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        double ts = time_once([&] { trace_boundary(op, 3, 3600, 0.0, Exec::Serial); });
        double tp = time_once([&] { trace_boundary(op, 3, 3600, 0.0, Exec::Parallel); });
        row("trace_boundary 3600", ts, tp);
    }
    {
        double ts = time_once([&] { build_scale(op, 4000, 0.0, Exec::Serial); });
        double tp = time_once([&] { build_scale(op, 4000, 0.0, Exec::Parallel); });
        row("build_scale 4000 dirs", ts, tp);
    }
    {
        double ts = time_once([&] { sample_wk_cloud(op, 2, 20000, 7, Exec::Serial); });
        double tp = time_once([&] { sample_wk_cloud(op, 2, 20000, 7, Exec::Parallel); });
        row("sample_wk_cloud 20000", ts, tp);
    }
    {
        double ts = time_once([&] { complement_identity_check(op, 3, 7200, Exec::Serial); });
        double tp = time_once([&] { complement_identity_check(op, 3, 7200, Exec::Parallel); });
        row("complement_identity 7200", ts, tp);
    }
    {
        double ts = time_once([&] { isotrace_slice(op, 4, 7200, Exec::Serial); });
        double tp = time_once([&] { isotrace_slice(op, 4, 7200, Exec::Parallel); });
        row("isotrace_slice 7200", ts, tp);
    }
    return 0;
}
