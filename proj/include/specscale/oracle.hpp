#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specscale/exec.hpp"
#include "specscale/operator_data.hpp"

namespace specscale {

enum class RandomKind { Ginibre, Hermitian, Normal, UnitaryConjugatedDiagonal };

/// Identical specs reproduce identical matrices bit for bit.
struct RandomSpec {
    int n = 0;
    RandomKind kind = RandomKind::Ginibre;
    std::uint64_t seed = 0;
};

CMat random_matrix(const RandomSpec& spec);

/// Normal matrix U diag(d) U* with its generating spectrum, for oracles that
/// need the ground-truth eigenvalues.
struct NormalWithSpectrum {
    CMat matrix;
    std::vector<cplx> spectrum;
};
NormalWithSpectrum random_normal_with_spectrum(int n, std::uint64_t seed);

/// Hermitian U diag(real) U* with known spectrum.
struct HermitianWithSpectrum {
    CMat matrix;
    std::vector<double> spectrum;  // unsorted, as drawn
};
HermitianWithSpectrum random_ucd_with_spectrum(int n, std::uint64_t seed);

/// p = Q Q* for Q the first k columns of the orthonormalized seeded Gaussian.
CMat random_rank_k_projection(int n, int k, std::uint64_t seed);

/// (n/k) tau(c p_j) for count independent random rank-k projections; an
/// inner (never boundary-certifying) sample of W_k.
std::vector<cplx> sample_wk_cloud(const Operator& op, int k, int count, std::uint64_t seed,
                                  Exec exec = Exec::Parallel);

struct ScanCounterexample {
    std::uint64_t seed = 0;
    CMat matrix;
    int segment_count = 0;
};

struct ScanReport {
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int grid = 0;
    std::vector<ScanCounterexample> counterexamples;
    double elapsed_seconds = 0;
};

/// Randomized scan for a counterexample to "even n and a polygonal half-level
/// slice imply normality":
/// non-normal draws whose W_{n/2} classifies as a polygon are reported.
ScanReport even_polygon_conjecture_scan(int n_even, int trials, int grid, std::uint64_t seed,
                               Exec exec = Exec::Parallel);

}  // namespace specscale
