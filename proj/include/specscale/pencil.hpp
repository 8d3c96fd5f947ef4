#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "specscale/exec.hpp"
#include "specscale/operator_data.hpp"
#include "specscale/poly.hpp"

namespace specscale {

/// Raised when b1 = b2 = 0 and every angle is critical.
struct DegeneratePencilError : std::runtime_error {
    DegeneratePencilError() : std::runtime_error("degenerate pencil: b1 = b2 = 0") {}
};

/// f(z, y) = det(b1 + z b2 - y 1). coeffs(j, k) is the coefficient of
/// z^j y^k; entries with j + k > n are identically zero and the y^n
/// coefficient is (-1)^n by construction, not by computation.
struct BivariatePencilPoly {
    int n = 0;
    CMat coeffs;

    cplx eval(cplx z, cplx y) const;
    CplxCoeffs y_coeffs_at(cplx z) const;  // univariate in y for fixed z
    double max_coeff() const;
};

BivariatePencilPoly char_poly_bivariate(const Operator& op);

/// dis(f)(z) = (-1)^{n(n-1)/2} Res_y(f, f_y) / lc_y(f), interpolated in the
/// Chebyshev basis from Sylvester determinants. re/im parts are kept
/// separately; for Hermitian pencil data the imaginary part is noise.
struct Discriminant {
    ChebSeries re;
    ChebSeries im;
    bool vanishes = false;  // all interpolated coefficients below tolerance
    int degree_bound = 0;

    cplx eval(double z) const { return {re.eval(z), im.eval(z)}; }
};

/// radius <= 0 picks 1 + max|f coeff| for the interpolation interval.
Discriminant discriminant_y(const BivariatePencilPoly& f, double radius = 0.0);

enum class ReduceStatus { Unchanged, Reduced, Indeterminate };

struct SquareFreeResult {
    BivariatePencilPoly poly;
    ReduceStatus status = ReduceStatus::Unchanged;
    bool irreducibility_failure = false;  // reduction still has vanishing discriminant
    double root_spread = 0;  // worst clustered-root deviation: accuracy of the reduction
};

/// f divided by an approximate gcd(f, f_y). Rank decisions use singular
/// values of the Sylvester matrix at each interpolation node; ambiguity
/// (singular values within a factor 10 of the threshold or inconsistent node
/// root clusters) yields Indeterminate and callers fall back to eigenvalue
/// scanning.
SquareFreeResult square_free_reduce(const BivariatePencilPoly& f, double tol = 1e-8);

enum class AngleCheck { Confirmed, Unconfirmed, Unchecked };

struct CriticalAngle {
    double theta = 0;
    double min_gap = 0;  // smallest relevant eigenvalue gap at theta
    AngleCheck check = AngleCheck::Unchecked;
};

struct MultiplicityInterval {
    double theta_lo = 0;
    double theta_hi = 0;
    std::vector<std::pair<int, int>> profile;  // (branch index, multiplicity)
};

struct CriticalAngleSet {
    std::vector<CriticalAngle> angles;  // sorted in [0, 2 pi)
    std::vector<MultiplicityInterval> intervals;
    int generic_distinct = 0;
};

/// Scans the eigenvalues of b_theta over the grid, refines every angle where
/// the distinct count drops below the generic count, and cross-checks each
/// refined angle against the roots of the square-free discriminant. tol is
/// relative to max_theta ||b_theta||; tol <= 0 selects the 1e-7 default.
CriticalAngleSet critical_angles(const Operator& op, int grid, double tol = 0.0,
                                 Exec exec = Exec::Parallel);

}  // namespace specscale
