#pragma once

#include "specscale/complex_matrix.hpp"
#include "specscale/eig.hpp"

namespace specscale {

/// An operator together with its Cartesian decomposition c = b1 + i b2 and
/// normalized trace. b1, b2 are Hermitian by construction.
struct Operator {
    int n = 0;
    CMat c;
    CMat b1;
    CMat b2;
    cplx tau_c;

    /// cos(theta) b1 + sin(theta) b2 = Re(e^{-i theta} c).
    CMat pencil_member(double theta) const;

    /// cos(theta) b2 - sin(theta) b1 = Im(e^{-i theta} c).
    CMat pencil_member_imag(double theta) const;

    /// t1 b1 + t2 b2.
    CMat combination(double t1, double t2) const;
};

/// Builds the Cartesian decomposition. Throws on non-square or non-finite
/// input.
Operator decompose(const CMat& c);

/// (1/n) tr(a). Shape check only.
cplx normalized_trace(const CMat& a);

/// max(||b1||, ||b2||) as a scale for pencil-relative tolerances; at least 0.
double pencil_scale(const Operator& op);

}  // namespace specscale
