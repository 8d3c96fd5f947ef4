#pragma once

#include <optional>
#include <vector>

#include "specscale/complex_matrix.hpp"

namespace specscale {

// Univariate polynomials, ascending monomial coefficients.
using RealCoeffs = std::vector<double>;
using CplxCoeffs = std::vector<cplx>;

double poly_eval(const RealCoeffs& p, double x);
cplx poly_eval(const CplxCoeffs& p, cplx x);
CplxCoeffs poly_derivative(const CplxCoeffs& p);

/// Drops trailing coefficients with magnitude <= tol.
CplxCoeffs poly_trim(CplxCoeffs p, double tol = 0.0);

/// Coefficients of prod_i (roots[i] - y), the characteristic-polynomial
/// convention with leading coefficient (-1)^n.
CplxCoeffs poly_from_roots_char(const std::vector<cplx>& roots);

/// Chebyshev nodes of the first kind on [-radius, radius], largest first.
std::vector<double> chebyshev_nodes(int count, double radius);

/// Interpolating polynomial through (x[i], y[i]) in monomial form, Newton
/// divided differences. Intended for small degree (<= ~20).
CplxCoeffs interpolate_monomial(const std::vector<double>& x, const std::vector<cplx>& y);

/// f(x) = sum_k c_k T_k(x / radius). Stable representation for the higher
/// degree interpolants (the discriminant can reach degree 2n(n-1)).
struct ChebSeries {
    std::vector<double> coeffs;
    double radius = 1.0;

    double eval(double x) const;
    ChebSeries derivative() const;
    double max_coeff() const;
    RealCoeffs to_monomial() const;  // ill-conditioned at high degree; display only
};

/// Fits the unique degree (m-1) polynomial through values sampled at
/// chebyshev_nodes(m, radius), in the same node order.
ChebSeries cheb_fit(const std::vector<double>& values_at_nodes, double radius);

/// Durand-Kerner iteration for all complex roots. Expects degree >= 1 and a
/// nonzero leading coefficient.
std::vector<cplx> poly_roots(const CplxCoeffs& p, int max_iter = 400);

/// Newton from x0 on a Chebyshev series; nullopt when it fails to settle.
std::optional<double> cheb_newton(const ChebSeries& f, double x0, int max_iter = 80);

}  // namespace specscale
