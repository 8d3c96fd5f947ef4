#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "specscale/operator_data.hpp"

namespace specscale {

/// Frobenius-orthonormal basis of the commutant {b1, b2}', from the null
/// space of X -> ([b1, X], [b2, X]) with singular values below 1e-10 * scale
/// treated as zero.
std::vector<CMat> commutant_basis(const Operator& op);

struct ReducingBlock {
    CMat columns;                 // n x r orthonormal basis of the block
    int dim = 0;
    std::optional<cplx> scalar;   // set when c acts as a scalar on the block
};

struct ReducingEigenvalue {
    cplx value;
    int multiplicity = 0;
};

struct ReducingStructure {
    std::vector<ReducingBlock> blocks;  // mutually orthogonal, spanning C^n
    std::vector<ReducingEigenvalue> reducing_eigenvalues;
    bool indeterminate = false;
    int retries = 0;

    CMat projection(int block) const;  // columns * columns^*
};

/// Splits C^n into minimal reducing subspaces of {b1, b2} by recursive
/// spectral splitting along random self-adjoint commutant elements.
/// Verification failures retry with seed+1, seed+2 before reporting an
/// indeterminate decomposition.
ReducingStructure reducing_subspaces(const Operator& op, double tol = 1e-8,
                                     std::uint64_t seed = 1);

/// True when the stacked system [(c - lambda); (c* - conj(lambda))] has a
/// near-null vector: a common eigenvector with cx = lambda x, c*x = conj(lambda) x.
bool is_reducing_eigenvalue(const Operator& op, cplx lambda, double tol);

/// tau(c (z+ - z-)) / tau(z+ - z-) for projections z- <= z+.
cplx complex_slope(const Operator& op, const CMat& z_minus, const CMat& z_plus);

}  // namespace specscale
