#include "specscale/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specscale {

double poly_eval(const RealCoeffs& p, double x) {
    double v = 0;
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

cplx poly_eval(const CplxCoeffs& p, cplx x) {
    cplx v = 0;
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

CplxCoeffs poly_derivative(const CplxCoeffs& p) {
    if (p.size() <= 1) return {cplx(0)};
    CplxCoeffs d(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = double(i) * p[i];
    return d;
}

CplxCoeffs poly_trim(CplxCoeffs p, double tol) {
    while (p.size() > 1 && std::abs(p.back()) <= tol) p.pop_back();
    return p;
}

CplxCoeffs poly_from_roots_char(const std::vector<cplx>& roots) {
    CplxCoeffs c{cplx(1)};
    for (cplx r : roots) {
        CplxCoeffs next(c.size() + 1);
        for (size_t k = 0; k < c.size(); ++k) {
            next[k] += r * c[k];       // r * c_k
            next[k + 1] -= c[k];       // -y * c_k
        }
        c = std::move(next);
    }
    return c;
}

std::vector<double> chebyshev_nodes(int count, double radius) {
    std::vector<double> x(count);
    for (int j = 0; j < count; ++j)
        x[j] = radius * std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * count));
    return x;
}

CplxCoeffs interpolate_monomial(const std::vector<double>& x, const std::vector<cplx>& y) {
    const int m = int(x.size());
    if (m == 0 || y.size() != x.size()) throw std::invalid_argument("interpolate_monomial: bad input");
    std::vector<cplx> dd = y;  // divided differences, in place
    for (int level = 1; level < m; ++level)
        for (int i = m - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - level]);
    // Horner expansion of the Newton form.
    CplxCoeffs c{dd[m - 1]};
    for (int i = m - 2; i >= 0; --i) {
        CplxCoeffs next(c.size() + 1);
        for (size_t k = 0; k < c.size(); ++k) {
            next[k] += -x[i] * c[k];
            next[k + 1] += c[k];
        }
        next[0] += dd[i];
        c = std::move(next);
    }
    return c;
}

double ChebSeries::eval(double x) const {
    const double u = radius != 0.0 ? x / radius : x;
    double b1 = 0, b2 = 0;
    for (size_t k = coeffs.size(); k-- > 1;) {
        double b0 = 2 * u * b1 - b2 + coeffs[k];
        b2 = b1;
        b1 = b0;
    }
    return (coeffs.empty() ? 0.0 : coeffs[0]) + u * b1 - b2;
}

ChebSeries ChebSeries::derivative() const {
    const int n = int(coeffs.size()) - 1;
    ChebSeries d;
    d.radius = radius;
    if (n < 1) {
        d.coeffs = {0.0};
        return d;
    }
    d.coeffs.assign(n, 0.0);
    double dkp1 = 0, dkp2 = 0;  // d_{k+1}, d_{k+2}
    for (int k = n - 1; k >= 0; --k) {
        double dk = dkp2 + 2.0 * (k + 1) * coeffs[k + 1];
        d.coeffs[k] = dk;
        dkp2 = dkp1;
        dkp1 = dk;
    }
    d.coeffs[0] *= 0.5;
    const double s = radius != 0.0 ? 1.0 / radius : 1.0;
    for (double& c : d.coeffs) c *= s;
    return d;
}

double ChebSeries::max_coeff() const {
    double m = 0;
    for (double c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

RealCoeffs ChebSeries::to_monomial() const {
    const int n = int(coeffs.size());
    RealCoeffs out(std::max(n, 1), 0.0);
    RealCoeffs tkm1{1.0};            // T_0(u)
    RealCoeffs tk{0.0, 1.0};         // T_1(u)
    for (int k = 0; k < n; ++k) {
        const RealCoeffs& tcur = (k == 0) ? tkm1 : tk;
        for (size_t j = 0; j < tcur.size(); ++j) out[j] += coeffs[k] * tcur[j];
        if (k >= 1 && k + 1 < n) {
            RealCoeffs tnext(k + 2, 0.0);
            for (size_t j = 0; j < tk.size(); ++j) tnext[j + 1] += 2.0 * tk[j];
            for (size_t j = 0; j < tkm1.size(); ++j) tnext[j] -= tkm1[j];
            tkm1 = tk;
            tk = std::move(tnext);
        }
    }
    if (radius != 0.0 && radius != 1.0) {
        double r = 1.0;
        for (size_t j = 0; j < out.size(); ++j) {
            out[j] /= r;
            r *= radius;
        }
    }
    return out;
}

ChebSeries cheb_fit(const std::vector<double>& values_at_nodes, double radius) {
    const int m = int(values_at_nodes.size());
    ChebSeries s;
    s.radius = radius;
    s.coeffs.assign(std::max(m, 1), 0.0);
    for (int k = 0; k < m; ++k) {
        double acc = 0;
        for (int j = 0; j < m; ++j)
            acc += values_at_nodes[j] * std::cos(M_PI * k * (2.0 * j + 1.0) / (2.0 * m));
        s.coeffs[k] = acc * (k == 0 ? 1.0 : 2.0) / m;
    }
    return s;
}

std::vector<cplx> poly_roots(const CplxCoeffs& p_in, int max_iter) {
    CplxCoeffs p = poly_trim(p_in);
    const int n = int(p.size()) - 1;
    if (n < 1) throw std::invalid_argument("poly_roots: degree >= 1 required");
    cplx lead = p.back();
    for (auto& c : p) c /= lead;
    double bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p[i]));
    bound = 1.0 + bound;

    std::vector<cplx> r(n);
    cplx w(0.4, 0.9);
    cplx cur(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        cur *= w;
        r[i] = bound * cur;
    }
    for (int it = 0; it < max_iter; ++it) {
        double move = 0;
        for (int i = 0; i < n; ++i) {
            cplx num = poly_eval(p, r[i]);
            cplx den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (r[i] - r[j]);
            if (std::abs(den) < 1e-300) {
                r[i] += cplx(1e-8, 1e-8);
                continue;
            }
            cplx delta = num / den;
            r[i] -= delta;
            move = std::max(move, std::abs(delta));
        }
        if (move < 1e-14 * bound) break;
    }
    return r;
}

std::optional<double> cheb_newton(const ChebSeries& f, double x0, int max_iter) {
    ChebSeries df = f.derivative();
    double x = x0;
    double last_step = std::abs(x0) + 1.0;
    for (int it = 0; it < max_iter; ++it) {
        double fx = f.eval(x);
        double dfx = df.eval(x);
        if (dfx == 0.0) return std::nullopt;
        double step = fx / dfx;
        x -= step;
        if (!std::isfinite(x)) return std::nullopt;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(x))) return x;
        last_step = std::abs(step);
    }
    // Multiple roots converge linearly; accept if the tail steps stalled small.
    if (last_step < 1e-7 * (1.0 + std::abs(x))) return x;
    return std::nullopt;
}

}  // namespace specscale
