#include "specscale/oracle.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "specscale/eig.hpp"
#include "specscale/range.hpp"
#include "specscale/rng.hpp"

namespace specscale {

namespace {

CMat ginibre(int n, Rng& rng) {
    CMat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
    return g;
}

CMat random_unitary(int n, Rng& rng) { return orthonormal_columns(ginibre(n, rng)); }

}  // namespace

CMat random_matrix(const RandomSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("random_matrix: n >= 1 required");
    Rng rng(spec.seed);
    switch (spec.kind) {
        case RandomKind::Ginibre:
            return ginibre(spec.n, rng);
        case RandomKind::Hermitian:
            return hermitian_part(ginibre(spec.n, rng));
        case RandomKind::Normal:
            return random_normal_with_spectrum(spec.n, spec.seed).matrix;
        case RandomKind::UnitaryConjugatedDiagonal:
            return random_ucd_with_spectrum(spec.n, spec.seed).matrix;
    }
    throw std::invalid_argument("random_matrix: unknown kind");
}

NormalWithSpectrum random_normal_with_spectrum(int n, std::uint64_t seed) {
    Rng rng(seed);
    NormalWithSpectrum out;
    out.spectrum.resize(n);
    for (auto& d : out.spectrum) d = rng.complex_gaussian();
    CMat u = random_unitary(n, rng);
    out.matrix = u * CMat::diag(out.spectrum) * u.adjoint();
    return out;
}

HermitianWithSpectrum random_ucd_with_spectrum(int n, std::uint64_t seed) {
    Rng rng(seed);
    HermitianWithSpectrum out;
    out.spectrum.resize(n);
    std::vector<cplx> d(n);
    for (int i = 0; i < n; ++i) {
        out.spectrum[i] = rng.gaussian();
        d[i] = out.spectrum[i];
    }
    CMat u = random_unitary(n, rng);
    out.matrix = u * CMat::diag(d) * u.adjoint();
    return out;
}

CMat random_rank_k_projection(int n, int k, std::uint64_t seed) {
    if (k < 0 || k > n) throw std::invalid_argument("random_rank_k_projection: k out of range");
    if (k == 0) return CMat::zero(n, n);
    Rng rng(seed);
    CMat q = orthonormal_columns(ginibre(n, rng)).cols_range(0, k);
    return q * q.adjoint();
}

std::vector<cplx> sample_wk_cloud(const Operator& op, int k, int count, std::uint64_t seed,
                                  Exec exec) {
    if (k < 1 || k > op.n) throw std::invalid_argument("sample_wk_cloud: k out of range");
    if (count < 1) throw std::invalid_argument("sample_wk_cloud: count >= 1 required");
    std::vector<cplx> pts(count);
    for_each_index(exec, count, [&](std::ptrdiff_t j) {
        Rng rng(mix_seed(seed, std::uint64_t(j)));
        CMat q = orthonormal_columns(ginibre(op.n, rng)).cols_range(0, k);
        cplx acc = 0;
        for (int i = 0; i < k; ++i) acc += quad_form(op.c, q.col(i));
        pts[j] = acc / double(k);  // (n/k) tau(c p)
    });
    return pts;
}

ScanReport even_polygon_conjecture_scan(int n_even, int trials, int grid, std::uint64_t seed, Exec exec) {
    if (n_even < 2 || n_even % 2 != 0)
        throw std::invalid_argument("even_polygon_conjecture_scan: n must be even and >= 2");
    if (trials < 1) throw std::invalid_argument("even_polygon_conjecture_scan: trials >= 1 required");
    auto t0 = std::chrono::steady_clock::now();

    ScanReport rep;
    rep.n = n_even;
    rep.trials = trials;
    rep.seed = seed;
    rep.grid = grid;

    struct TrialResult {
        bool polygon = false;
        std::uint64_t seed = 0;
        CMat matrix;
        int segments = 0;
    };
    std::vector<TrialResult> results(trials);

    // trials are independent; boundary tracing inside stays serial so the
    // outer loop parallelizes cleanly
    for_each_index(exec, trials, [&](std::ptrdiff_t t) {
        std::uint64_t sub = mix_seed(seed, std::uint64_t(t));
        CMat c;
        for (int bump = 0;; ++bump) {
            Rng rng(mix_seed(sub, std::uint64_t(bump)));
            c = ginibre(n_even, rng);
            CMat comm = c * c.adjoint() - c.adjoint() * c;
            double nc = op_norm(c);
            if (hermitian_op_norm(comm) > 1e-6 * nc * nc) break;  // non-normal draw
        }
        Operator op = decompose(c);
        auto boundary = trace_boundary(op, n_even / 2, grid, 0.0, Exec::Serial);
        auto rep_c = classify(boundary, op);
        results[t] = {rep_c.is_polygon, sub, c, int(boundary.segments.size())};
    });

    for (auto& r : results)
        if (r.polygon) rep.counterexamples.push_back({r.seed, r.matrix, r.segments});

    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace specscale
