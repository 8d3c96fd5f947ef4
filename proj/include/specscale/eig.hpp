#pragma once

#include <vector>

#include "specscale/complex_matrix.hpp"

namespace specscale {

/// Eigendecomposition of a Hermitian matrix. Eigenvalues sorted descending,
/// eigenvectors orthonormal in the matching column order, each vector's first
/// nonzero component rotated to be real positive so results are reproducible.
struct EigSystem {
    std::vector<double> values;
    CMat vectors;  // column i pairs with values[i]
};

/// Cyclic complex Jacobi. Symmetrizes the input first and rejects matrices
/// whose Hermitian defect exceeds 1e-12. Sweeps until the off-diagonal
/// Frobenius mass drops below 1e-14 of the total.
EigSystem hermitian_eig(const CMat& a);

/// Largest |eigenvalue| of a Hermitian matrix; 0 for the zero matrix.
double hermitian_op_norm(const CMat& a);

/// Operator 2-norm of a general matrix, sqrt(lambda_max(a* a)).
double op_norm(const CMat& a);

/// Smallest singular value of a (rows >= cols), via eig of a* a.
double sigma_min(const CMat& a);

/// Sum of the first k entries of a descending-sorted list. Throws if k is
/// outside 1..n.
double top_k_sum(const std::vector<double>& values, int k);

}  // namespace specscale
