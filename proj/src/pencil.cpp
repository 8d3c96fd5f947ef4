#include "specscale/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace specscale {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Sylvester matrix of p (degree m) and q (degree l), coefficients ascending.
CMat sylvester(const CplxCoeffs& p, const CplxCoeffs& q) {
    const int m = int(p.size()) - 1;
    const int l = int(q.size()) - 1;
    CMat s(m + l, m + l);
    for (int r = 0; r < l; ++r)
        for (int i = 0; i <= m; ++i) s(r, r + i) = p[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= l; ++i) s(l + r, r + i) = q[l - i];
    return s;
}

std::vector<double> singular_values(const CMat& a) {
    auto es = hermitian_eig(adjoint_times(a, a));
    std::vector<double> sv(es.values.size());
    for (size_t i = 0; i < sv.size(); ++i) sv[i] = std::sqrt(std::max(0.0, es.values[i]));
    return sv;  // descending
}

// Number of distinct values in a descending list under a chained gap
// tolerance; optionally records cluster sizes.
int distinct_count(const std::vector<double>& mu, double tol, std::vector<int>* sizes = nullptr) {
    int count = 1;
    int run = 1;
    for (size_t i = 1; i < mu.size(); ++i) {
        if (mu[i - 1] - mu[i] > tol) {
            if (sizes) sizes->push_back(run);
            run = 1;
            ++count;
        } else {
            ++run;
        }
    }
    if (sizes) sizes->push_back(run);
    return count;
}

// (d-1)-th largest gap: the quantity that collapses when the distinct count
// drops from d to d-1.
double relevant_gap(std::vector<double> mu, int d) {
    if (int(mu.size()) < 2 || d < 2) return 0.0;
    std::vector<double> gaps(mu.size() - 1);
    for (size_t i = 0; i + 1 < mu.size(); ++i) gaps[i] = mu[i] - mu[i + 1];
    std::sort(gaps.begin(), gaps.end(), std::greater<>());
    return gaps[std::min<size_t>(d - 2, gaps.size() - 1)];
}

}  // namespace

cplx BivariatePencilPoly::eval(cplx z, cplx y) const {
    cplx v = 0;
    for (int k = n; k >= 0; --k) {
        cplx row = 0;
        for (int j = n; j >= 0; --j) row = row * z + coeffs(j, k);
        v = v * y + row;
    }
    return v;
}

CplxCoeffs BivariatePencilPoly::y_coeffs_at(cplx z) const {
    CplxCoeffs out(n + 1);
    for (int k = 0; k <= n; ++k) {
        cplx row = 0;
        for (int j = n; j >= 0; --j) row = row * z + coeffs(j, k);
        out[k] = row;
    }
    return out;
}

double BivariatePencilPoly::max_coeff() const { return coeffs.max_abs(); }

BivariatePencilPoly char_poly_bivariate(const Operator& op) {
    const int n = op.n;
    const double radius = 1.0 + hermitian_op_norm(op.b2);
    const auto nodes = chebyshev_nodes(n + 1, radius);

    // y-coefficients of det(b1 + z_j b2 - y) from the eigenvalues at each node.
    std::vector<CplxCoeffs> at_node(n + 1);
    for (int j = 0; j <= n; ++j) {
        auto es = hermitian_eig(op.combination(1.0, nodes[j]));
        std::vector<cplx> roots(es.values.begin(), es.values.end());
        at_node[j] = poly_from_roots_char(roots);
    }

    BivariatePencilPoly f;
    f.n = n;
    f.coeffs = CMat(n + 1, n + 1);
    for (int k = 0; k < n; ++k) {
        std::vector<cplx> vals(n + 1);
        for (int j = 0; j <= n; ++j) vals[j] = at_node[j][k];
        CplxCoeffs cz = interpolate_monomial(nodes, vals);
        for (int j = 0; j <= n - k && j < int(cz.size()); ++j) f.coeffs(j, k) = cz[j].real();
    }
    f.coeffs(0, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return f;
}

Discriminant discriminant_y(const BivariatePencilPoly& f, double radius) {
    const int n = f.n;
    if (n < 1) throw std::invalid_argument("discriminant_y: degree in y must be >= 1");

    Discriminant d;
    if (n == 1) {  // linear in y: no repeated roots, conventionally 1
        d.re.coeffs = {1.0};
        d.im.coeffs = {0.0};
        d.degree_bound = 0;
        d.re.radius = d.im.radius = radius > 0 ? radius : 1.0;
        return d;
    }

    const double r = radius > 0 ? radius : 1.0 + f.max_coeff();
    const int deg = 2 * n * (n - 1);
    const auto nodes = chebyshev_nodes(deg + 1, r);
    const cplx lc = f.coeffs(0, n);  // (-1)^n
    const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;

    std::vector<double> vre(nodes.size()), vim(nodes.size());
    double worst_ratio = 0;  // |det| against its Hadamard bound, per node
    for (size_t j = 0; j < nodes.size(); ++j) {
        CplxCoeffs p = f.y_coeffs_at(nodes[j]);
        CplxCoeffs q = poly_derivative(p);
        CMat syl = sylvester(p, q);
        cplx res = lu_det(syl);
        double hadamard = 1;
        for (int row = 0; row < syl.rows(); ++row) {
            double s2 = 0;
            for (int col = 0; col < syl.cols(); ++col) s2 += std::norm(syl(row, col));
            hadamard *= std::sqrt(s2);
        }
        worst_ratio = std::max(worst_ratio, std::abs(res) / std::max(hadamard, 1e-300));
        cplx val = sign * res / lc;
        vre[j] = val.real();
        vim[j] = val.imag();
    }
    d.re = cheb_fit(vre, r);
    d.im = cheb_fit(vim, r);
    d.degree_bound = deg;

    // Identically-zero decision: a repeated factor drives every node value
    // to rounding noise, far below the Hadamard magnitude of its Sylvester
    // matrix; a genuine discriminant stays within a few orders of it.
    d.vanishes = worst_ratio <= 1e-8;
    return d;
}

SquareFreeResult square_free_reduce(const BivariatePencilPoly& f, double tol) {
    const int n = f.n;
    SquareFreeResult out;
    out.poly = f;
    if (n < 1) throw std::invalid_argument("square_free_reduce: degree in y must be >= 1");
    if (n == 1) return out;

    const double r = 1.0 + f.max_coeff();
    const auto nodes = chebyshev_nodes(n + 1, r);

    struct NodeData {
        int gcd_degree = 0;
        bool ambiguous = false;
        std::vector<cplx> roots;
    };
    std::vector<NodeData> data(nodes.size());

    for (size_t j = 0; j < nodes.size(); ++j) {
        CplxCoeffs p = f.y_coeffs_at(nodes[j]);
        CplxCoeffs q = poly_derivative(p);
        auto sv = singular_values(sylvester(p, q));
        double thresh = tol * std::max(sv.empty() ? 0.0 : sv.front(), 1e-300);
        int rank = 0;
        double smallest_kept = 1e300, largest_dropped = 0;
        for (double s : sv) {
            if (s > thresh) {
                ++rank;
                smallest_kept = std::min(smallest_kept, s);
            } else {
                largest_dropped = std::max(largest_dropped, s);
            }
        }
        data[j].gcd_degree = int(sv.size()) - rank;
        // ambiguous only when the spectrum crowds the threshold from both
        // sides; a clean multi-decade gap is a firm rank decision
        data[j].ambiguous = largest_dropped >= thresh / 10.0 && smallest_kept <= thresh * 10.0;
        data[j].roots = poly_roots(p);
    }

    // Majority gcd degree over the nodes; nodes that disagree sit too close
    // to a critical point and are dropped.
    std::vector<int> degs;
    for (auto& nd : data) degs.push_back(nd.gcd_degree);
    std::sort(degs.begin(), degs.end());
    int g = degs[degs.size() / 2];
    if (g == 0) {
        for (auto& nd : data)
            if (nd.ambiguous && nd.gcd_degree != 0) { out.status = ReduceStatus::Indeterminate; return out; }
        return out;  // already square-free, returned unchanged
    }

    const int d = n - g;  // distinct-root count at generic z
    std::vector<size_t> good;
    for (size_t j = 0; j < data.size(); ++j)
        if (data[j].gcd_degree == g && !data[j].ambiguous) good.push_back(j);
    if (int(good.size()) < d + 1) {
        out.status = ReduceStatus::Indeterminate;
        return out;
    }

    // Square-free cofactor per node: cluster the n roots down to d
    // representatives by merging the closest pair repeatedly.
    std::vector<std::vector<cplx>> reps(good.size());
    const double root_scale = 1.0 + f.max_coeff();
    for (size_t gi = 0; gi < good.size(); ++gi) {
        std::vector<std::vector<cplx>> clusters;
        for (cplx rt : data[good[gi]].roots) clusters.push_back({rt});
        auto center = [](const std::vector<cplx>& c) {
            cplx s = 0;
            for (cplx v : c) s += v;
            return s / double(c.size());
        };
        while (int(clusters.size()) > d) {
            double best = 1e300;
            size_t bi = 0, bj = 1;
            for (size_t i = 0; i < clusters.size(); ++i)
                for (size_t j = i + 1; j < clusters.size(); ++j) {
                    double dist = std::abs(center(clusters[i]) - center(clusters[j]));
                    if (dist < best) { best = dist; bi = i; bj = j; }
                }
            if (best > 1e-3 * root_scale) {  // clusters refuse to merge: rank call was off
                out.status = ReduceStatus::Indeterminate;
                return out;
            }
            auto& a = clusters[bi];
            auto& b = clusters[bj];
            a.insert(a.end(), b.begin(), b.end());
            clusters.erase(clusters.begin() + bj);
        }
        for (auto& c : clusters) {
            cplx mid = center(c);
            for (cplx rt : c)
                out.root_spread = std::max(out.root_spread, std::abs(rt - mid));
            reps[gi].push_back(mid);
        }
    }

    std::vector<double> xs;
    std::vector<std::vector<cplx>> node_coeffs;
    for (size_t gi = 0; gi < good.size() && int(xs.size()) < d + 1; ++gi) {
        xs.push_back(nodes[good[gi]]);
        node_coeffs.push_back(poly_from_roots_char(reps[gi]));
    }

    BivariatePencilPoly red;
    red.n = d;
    red.coeffs = CMat(d + 1, d + 1);
    for (int k = 0; k < d; ++k) {
        std::vector<cplx> vals(xs.size());
        for (size_t j = 0; j < xs.size(); ++j) vals[j] = node_coeffs[j][k];
        CplxCoeffs cz = interpolate_monomial(xs, vals);
        for (int j = 0; j <= d - k && j < int(cz.size()); ++j) red.coeffs(j, k) = cz[j];
    }
    red.coeffs(0, d) = (d % 2 == 0) ? 1.0 : -1.0;

    out.poly = red;
    out.status = ReduceStatus::Reduced;
    out.irreducibility_failure = discriminant_y(red).vanishes;
    return out;
}

CriticalAngleSet critical_angles(const Operator& op, int grid, double tol, Exec exec) {
    if (grid < 360) throw std::invalid_argument("critical_angles: grid >= 360 required");
    const double rel_tol = tol > 0 ? tol : 1e-7;
    if (hermitian_op_norm(op.b1) == 0.0 && hermitian_op_norm(op.b2) == 0.0)
        throw DegeneratePencilError();

    std::vector<std::vector<double>> spectra(grid);
    for_each_index(exec, grid, [&](std::ptrdiff_t i) {
        spectra[i] = hermitian_eig(op.pencil_member(kTwoPi * double(i) / grid)).values;
    });

    double norm_scale = 0;
    for (auto& mu : spectra)
        norm_scale = std::max(norm_scale, std::max(std::abs(mu.front()), std::abs(mu.back())));
    const double abs_tol = rel_tol * std::max(norm_scale, 1e-300);

    std::vector<int> counts(grid);
    for (int i = 0; i < grid; ++i) counts[i] = distinct_count(spectra[i], abs_tol);
    const int d = *std::max_element(counts.begin(), counts.end());

    CriticalAngleSet set;
    set.generic_distinct = d;

    auto spectrum_at = [&](double th) { return hermitian_eig(op.pencil_member(th)).values; };

    // Cyclic runs of sub-generic count, each refined by shrinking the bracket
    // around the minimum of the collapsing gap.
    std::vector<bool> visited(grid, false);
    std::vector<double> found;
    for (int s = 0; s < grid; ++s) {
        if (counts[s] >= d || visited[s]) continue;
        int e = s;
        while (counts[((e + 1) % grid + grid) % grid] < d && e - s < grid) ++e;
        for (int t = s; t <= e; ++t) visited[t % grid] = true;
        double lo = kTwoPi * double(s - 1) / grid;
        double hi = kTwoPi * double(e + 1) / grid;
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            double m1 = lo + (hi - lo) / 3.0;
            double m2 = hi - (hi - lo) / 3.0;
            double g1 = relevant_gap(spectrum_at(m1), d);
            double g2 = relevant_gap(spectrum_at(m2), d);
            if (g1 < g2) hi = m2; else lo = m1;
        }
        double theta = 0.5 * (lo + hi);
        theta = std::fmod(theta + kTwoPi, kTwoPi);
        found.push_back(theta);
    }
    std::sort(found.begin(), found.end());

    for (double th : found) {
        if (!set.angles.empty() && th - set.angles.back().theta < 1e-9) continue;
        if (!set.angles.empty() && th + 1e-9 > kTwoPi && set.angles.front().theta < th + 1e-9 - kTwoPi) continue;
        CriticalAngle ca;
        ca.theta = th;
        ca.min_gap = relevant_gap(spectrum_at(th), d);
        set.angles.push_back(ca);
    }

    // Multiplicity profile on the open intervals between successive angles.
    auto profile_at = [&](double th) {
        std::vector<int> sizes;
        distinct_count(spectrum_at(th), abs_tol, &sizes);
        std::vector<std::pair<int, int>> prof;
        for (size_t b = 0; b < sizes.size(); ++b) prof.emplace_back(int(b), sizes[b]);
        return prof;
    };
    if (set.angles.empty()) {
        set.intervals.push_back({0.0, kTwoPi, profile_at(kTwoPi * 0.12345)});
    } else {
        for (size_t i = 0; i < set.angles.size(); ++i) {
            double a = set.angles[i].theta;
            double b = (i + 1 < set.angles.size()) ? set.angles[i + 1].theta : set.angles[0].theta + kTwoPi;
            set.intervals.push_back({a, b, profile_at(0.5 * (a + b))});
        }
    }

    // Cross-check: tan(theta) should sit near a real root of the square-free
    // discriminant. The eigenvalue scan stays authoritative either way.
    if (!set.angles.empty()) {
        bool checkable = false;
        double max_tan = 0;
        for (auto& ca : set.angles)
            if (std::abs(std::cos(ca.theta)) >= 0.05) {
                checkable = true;
                max_tan = std::max(max_tan, std::abs(std::tan(ca.theta)));
            }
        if (checkable) {
            auto f = char_poly_bivariate(op);
            auto sf = square_free_reduce(f);
            if (sf.status != ReduceStatus::Indeterminate && !sf.irreducibility_failure) {
                double radius = std::max({2.0, 1.2 * max_tan, 1.0 + hermitian_op_norm(op.b2)});
                auto disc = discriminant_y(sf.poly, radius);
                if (!disc.vanishes) {
                    // Real collisions are even-order roots of the discriminant
                    // (squared branch differences), so Newton stalls in the
                    // interpolation noise. Proximity is certified by the
                    // Taylor bound |f(z0)| <= |f'| d + |f''| d^2 / 2 at
                    // d = 1e-5, with the series noise floor added.
                    auto d1s = disc.re.derivative();
                    auto d2s = d1s.derivative();
                    // the reduction's root-cluster spread bounds the
                    // coefficient noise the discriminant inherits
                    const double noise =
                        std::max(1e-12, 10.0 * sf.root_spread) * std::max(1.0, disc.re.max_coeff());
                    for (auto& ca : set.angles) {
                        if (std::abs(std::cos(ca.theta)) < 0.05) continue;  // z = tan(theta) unusable
                        double z0 = std::tan(ca.theta);
                        double v = std::abs(disc.re.eval(z0));
                        double bound = std::abs(d1s.eval(z0)) * 1e-5 +
                                       0.5 * std::abs(d2s.eval(z0)) * 1e-10 + noise;
                        ca.check = v <= bound ? AngleCheck::Confirmed : AngleCheck::Unconfirmed;
                    }
                }
            }
        }
    }
    return set;
}

}  // namespace specscale
