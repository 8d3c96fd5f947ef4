#include "specscale/range.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace specscale {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct TouchInternal {
    double r = 0;
    std::vector<cplx> points;
    double op_norm = 0;
};

// Touch set computed from one eigendecomposition of b_theta. tol <= 0 picks
// the 1e-9 (1 + ||b_theta||) gap default.
TouchInternal touch_from_eig(const Operator& op, int k, double theta, const EigSystem& es,
                             double tol) {
    const int n = op.n;
    TouchInternal out;
    out.op_norm = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
    out.r = top_k_sum(es.values, k) / k;
    const double gap_tol = tol > 0 ? tol : 1e-9 * (1.0 + out.op_norm);

    if (k == n || es.values[k - 1] - es.values[k] > gap_tol) {
        cplx acc = 0;
        for (int i = 0; i < k; ++i) acc += quad_form(op.c, es.vectors.col(i));
        out.points = {acc / double(k)};
        return out;
    }

    // Degenerate k-th gap: cluster around the tied eigenvalue, complete with
    // extremal eigenvectors of Im(e^{-i theta} c) compressed to the cluster.
    int a = k - 1, b = k - 1;
    while (a > 0 && es.values[a - 1] - es.values[a] <= gap_tol) --a;
    while (b + 1 < n && es.values[b] - es.values[b + 1] <= gap_tol) ++b;
    const int j = k - a;
    const int s = b - a + 1;

    cplx fixed = 0;
    for (int i = 0; i < a; ++i) fixed += quad_form(op.c, es.vectors.col(i));

    CMat e_basis = es.vectors.cols_range(a, b + 1);
    CMat m_th = op.pencil_member_imag(theta);
    CMat compressed = adjoint_times(e_basis, m_th * e_basis);
    auto mes = hermitian_eig(compressed);

    auto endpoint = [&](bool top) {
        cplx acc = fixed;
        for (int t = 0; t < j; ++t) {
            int col = top ? t : s - 1 - t;
            CMat x = e_basis * mes.vectors.col(col);
            acc += quad_form(op.c, x);
        }
        return acc / double(k);
    };
    out.points = {endpoint(false), endpoint(true)};  // [P1 bottom, P2 top]
    return out;
}

double support_raw(const Operator& op, int k, double theta) {
    auto es = hermitian_eig(op.pencil_member(theta));
    return top_k_sum(es.values, k) / k;
}

// Cyclic index helpers over the sorted sample sequence.
int cyc(int i, int m) { return ((i % m) + m) % m; }

}  // namespace

cplx tangent_intersection(double theta, double r_theta, double phi, double r_phi) {
    double den = std::sin(phi - theta);
    double x = (r_theta * std::sin(phi) - r_phi * std::sin(theta)) / den;
    double y = (r_phi * std::cos(theta) - r_theta * std::cos(phi)) / den;
    return {x, y};
}

double support_wk(const Operator& op, int k, double theta) {
    if (k < 1 || k > op.n) throw std::invalid_argument("support_wk: k out of range");
    return support_raw(op, k, theta);
}

TouchResult touch_set(const Operator& op, int k, double theta, double tol) {
    if (k < 1 || k > op.n) throw std::invalid_argument("touch_set: k out of range");
    if (tol <= 0) throw std::invalid_argument("touch_set: tol must be positive");
    auto es = hermitian_eig(op.pencil_member(theta));
    auto ti = touch_from_eig(op, k, theta, es, tol);
    TouchResult out;
    out.r = ti.r;
    out.points = ti.points;
    if (out.points.size() == 2) {
        const double h = 1e-5;
        double rm = support_raw(op, k, theta - h);
        double rp = support_raw(op, k, theta + h);
        cplx pred1 = tangent_intersection(theta, ti.r, theta - h, rm);
        cplx pred2 = tangent_intersection(theta, ti.r, theta + h, rp);
        double ctol = 1e-3 * (1.0 + std::abs(out.points[0]) + std::abs(out.points[1]));
        out.crosscheck_ok =
            std::abs(out.points[0] - pred1) <= ctol && std::abs(out.points[1] - pred2) <= ctol;
    }
    return out;
}

RangeBoundary trace_boundary(const Operator& op, int k, int grid, double tol, Exec exec,
                             const CriticalAngleSet* critical) {
    if (k < 1 || k > op.n) throw std::invalid_argument("trace_boundary: k out of range");
    if (grid < 360) throw std::invalid_argument("trace_boundary: grid >= 360 required");

    const cplx mu = op.tau_c;
    CMat shifted = op.c;
    for (int i = 0; i < op.n; ++i) shifted(i, i) -= mu;
    const Operator cop = decompose(shifted);

    RangeBoundary rb;
    rb.k = k;
    rb.n = op.n;
    rb.grid = grid;

    // Degeneracy prescan: collinear touch points mean W_k is a segment or a
    // point (c = lambda a + mu 1), reported as a special kind.
    {
        const int pre = 64;
        std::vector<cplx> pts;
        for (int i = 0; i < pre; ++i) {
            double th = kTwoPi * i / pre;
            auto es = hermitian_eig(cop.pencil_member(th));
            auto ti = touch_from_eig(cop, k, th, es, tol);
            for (auto& p : ti.points) pts.push_back(p);
        }
        cplx mean = std::accumulate(pts.begin(), pts.end(), cplx(0)) / double(pts.size());
        double spread = 0;
        for (auto& p : pts) spread = std::max(spread, std::abs(p - mean));
        double dtol = 1e-9 * std::max(1.0, spread + std::abs(mean));
        if (spread <= dtol) {
            rb.kind = BoundaryKind::Point;
            rb.degenerate_lo = rb.degenerate_hi = mean + mu;
            rb.scale = std::max(1.0, std::abs(mean));
            return rb;
        }
        // principal direction via the 2x2 covariance
        double sxx = 0, sxy = 0, syy = 0;
        for (auto& p : pts) {
            cplx q = p - mean;
            sxx += q.real() * q.real();
            sxy += q.real() * q.imag();
            syy += q.imag() * q.imag();
        }
        double ang = 0.5 * std::atan2(2 * sxy, sxx - syy);
        cplx u(std::cos(ang), std::sin(ang));
        double maxperp = 0;
        for (auto& p : pts)
            maxperp = std::max(maxperp, std::abs(((p - mean) * std::conj(u)).imag()));
        if (maxperp <= dtol) {
            double arg_u = std::atan2(u.imag(), u.real());
            auto lo = touch_from_eig(cop, k, arg_u + M_PI,
                                     hermitian_eig(cop.pencil_member(arg_u + M_PI)), tol);
            auto hi = touch_from_eig(cop, k, arg_u, hermitian_eig(cop.pencil_member(arg_u)), tol);
            rb.kind = BoundaryKind::Segment;
            rb.degenerate_lo = lo.points.front() + mu;
            rb.degenerate_hi = hi.points.front() + mu;
            rb.segments.push_back({rb.degenerate_lo, rb.degenerate_hi,
                                   std::fmod(arg_u + M_PI / 2, kTwoPi)});
            rb.scale = std::max(1.0, spread);
            return rb;
        }
    }

    CriticalAngleSet cas;
    if (critical) {
        cas = *critical;
    } else {
        try {
            cas = critical_angles(cop, grid, 0.0, exec);
        } catch (const DegeneratePencilError&) {
            // unreachable: caught by the degeneracy prescan
        }
    }
    for (auto& ca : cas.angles) rb.critical_thetas.push_back(ca.theta);

    // Sample angles: the grid plus every critical angle.
    std::vector<double> thetas(grid);
    for (int i = 0; i < grid; ++i) thetas[i] = kTwoPi * i / grid;
    for (double th : rb.critical_thetas) thetas.push_back(th);
    std::sort(thetas.begin(), thetas.end());
    thetas.erase(std::unique(thetas.begin(), thetas.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 thetas.end());
    const int m = int(thetas.size());

    std::vector<TouchInternal> raw(m);
    for_each_index(exec, m, [&](std::ptrdiff_t i) {
        auto es = hermitian_eig(cop.pencil_member(thetas[i]));
        raw[i] = touch_from_eig(cop, k, thetas[i], es, tol);
    });

    double scale = 1.0;
    for (auto& t : raw)
        for (auto& p : t.points) scale = std::max(scale, std::abs(p));
    rb.scale = scale;

    auto near_critical = [&](double th) {
        for (double ct : rb.critical_thetas) {
            double d = std::abs(th - ct);
            d = std::min(d, kTwoPi - d);
            if (d <= 1.05 * kTwoPi / grid) return true;
        }
        return false;
    };

    rb.samples.resize(m);
    for (int i = 0; i < m; ++i) {
        rb.samples[i].theta = thetas[i];
        rb.samples[i].r = raw[i].r + (mu * std::polar(1.0, -thetas[i])).real();
        rb.samples[i].at_critical = near_critical(thetas[i]);
        for (auto& p : raw[i].points) rb.samples[i].touch.push_back(p + mu);
    }

    // Segments: angles whose k-th gap is degenerate. Near-duplicates from a
    // critical angle and its grid neighbours are merged.
    const double merge_tol = 1e-7 * scale;
    for (int i = 0; i < m; ++i) {
        if (raw[i].points.size() != 2) continue;
        cplx p1 = raw[i].points[0] + mu, p2 = raw[i].points[1] + mu;
        bool dup = false;
        for (auto& s : rb.segments)
            if ((std::abs(s.p1 - p1) <= merge_tol && std::abs(s.p2 - p2) <= merge_tol) ||
                (std::abs(s.p1 - p2) <= merge_tol && std::abs(s.p2 - p1) <= merge_tol))
                dup = true;
        if (!dup) rb.segments.push_back({p1, p2, thetas[i]});
    }

    // Corner runs: cyclically maximal stretches of single-touch samples whose
    // touch point is stationary within 1e-7 * scale, at least 3 samples long.
    std::vector<bool> link(m, false);
    for (int i = 0; i < m; ++i) {
        const auto& a = raw[i];
        const auto& b = raw[cyc(i + 1, m)];
        link[i] = a.points.size() == 1 && b.points.size() == 1 &&
                  std::abs(a.points[0] - b.points[0]) <= merge_tol;
    }
    std::vector<bool> in_run(m, false);
    int start = 0;
    while (start < m && link[cyc(start - 1, m)]) ++start;  // open the cycle at a break
    if (start == m) {
        // stationary everywhere: a single point, should have been caught above
        start = 0;
    }
    std::vector<std::pair<int, int>> runs;  // [first sample, last sample] inclusive
    {
        int i = start;
        int seen = 0;
        while (seen < m) {
            if (link[cyc(i, m)]) {
                int s = i;
                int len = 1;
                while (seen + len < m && link[cyc(i + len, m)]) ++len;
                runs.emplace_back(s, i + len);  // covers len+1 samples
                i += len;
                seen += len;
            } else {
                ++i;
                ++seen;
            }
        }
    }
    for (auto& [s, e] : runs) {
        if (e - s + 1 < 3) continue;
        cplx acc = 0;
        for (int t = s; t <= e; ++t) acc += raw[cyc(t, m)].points[0];
        CornerFeature cf;
        cf.lambda = acc / double(e - s + 1) + mu;
        cf.theta_lo = thetas[cyc(s, m)];
        cf.theta_hi = thetas[cyc(e, m)];
        rb.corners.push_back(cf);
        for (int t = s; t <= e; ++t) in_run[cyc(t, m)] = true;
    }

    // Arcs: everything not claimed by a corner run, a segment angle, or a
    // critical-angle neighbourhood.
    std::vector<bool> is_arc(m, false);
    for (int i = 0; i < m; ++i)
        is_arc[i] = !in_run[i] && raw[i].points.size() == 1 && !rb.samples[i].at_critical;
    if (std::all_of(is_arc.begin(), is_arc.end(), [](bool v) { return v; })) {
        rb.arcs.push_back({0.0, kTwoPi, true});
    } else {
        int s0 = 0;
        while (is_arc[cyc(s0 - 1, m)]) ++s0;
        int i = s0;
        int seen = 0;
        while (seen < m) {
            if (is_arc[cyc(i, m)]) {
                int len = 1;
                while (seen + len < m && is_arc[cyc(i + len, m)]) ++len;
                if (len >= 2)
                    rb.arcs.push_back({thetas[cyc(i, m)], thetas[cyc(i + len - 1, m)], false});
                i += len;
                seen += len;
            } else {
                ++i;
                ++seen;
            }
        }
    }
    return rb;
}

ClassifyReport classify(const RangeBoundary& boundary, const Operator& op) {
    ClassifyReport rep;
    rep.operator_norm = op_norm(op.c);
    CMat comm = op.c * op.c.adjoint() - op.c.adjoint() * op.c;
    rep.commutator_norm = hermitian_op_norm(comm);
    rep.normal_flag =
        rep.commutator_norm <= 1e-10 * std::max(rep.operator_norm * rep.operator_norm, 1e-300);

    rep.is_polygon = boundary.kind != BoundaryKind::Regular || boundary.arcs.empty();

    // Isolation check: a corner must sit alone among the detected extreme
    // points at the grid's spatial resolution.
    std::vector<cplx> extremes;
    for (auto& c : boundary.corners) extremes.push_back(c.lambda);
    for (auto& s : boundary.segments) {
        extremes.push_back(s.p1);
        extremes.push_back(s.p2);
    }
    cplx centroid = 0;
    int arc_pts = 0;
    for (auto& s : boundary.samples) {
        if (s.touch.size() == 1) {
            centroid += s.touch[0];
            ++arc_pts;
        }
    }
    if (arc_pts > 0) centroid /= double(arc_pts);
    double radius = 0;
    for (auto& s : boundary.samples)
        for (auto& p : s.touch) radius = std::max(radius, std::abs(p - centroid));
    for (auto& s : boundary.samples)
        if (s.touch.size() == 1) extremes.push_back(s.touch[0]);

    const double same_tol = 1e-7 * boundary.scale;
    const double iso_radius =
        3.0 * kTwoPi / std::max(boundary.grid, 1) * std::max(radius, 1e-300);
    for (auto& c : boundary.corners) {
        double nearest = 1e300;
        for (auto& e : extremes) {
            double d = std::abs(e - c.lambda);
            if (d > same_tol) nearest = std::min(nearest, d);
        }
        rep.corners.push_back({c, nearest > iso_radius});
    }
    rep.agreement = rep.is_polygon == rep.normal_flag;
    return rep;
}

double complement_identity_check(const Operator& op, int k, int grid, Exec exec) {
    if (k < 1 || k > op.n - 1) throw std::invalid_argument("complement_identity_check: k out of range");
    const int n = op.n;
    std::vector<double> dev(grid);
    for_each_index(exec, grid, [&](std::ptrdiff_t i) {
        double th = kTwoPi * double(i) / grid;
        auto es = hermitian_eig(op.pencil_member(th));
        double topk = top_k_sum(es.values, k);
        double total = std::accumulate(es.values.begin(), es.values.end(), 0.0);
        double r_comp = -(total - topk) / double(n - k);  // r_{n-k}(theta + pi)
        double lhs = topk;
        double rhs = double(n) * (op.tau_c * std::polar(1.0, -th)).real() + (n - k) * r_comp;
        dev[i] = std::abs(lhs - rhs);
    });
    return *std::max_element(dev.begin(), dev.end());
}

std::pair<double, double> selfadjoint_interval(const CMat& a, int k) {
    if (!a.square()) throw std::invalid_argument("selfadjoint_interval: square matrix required");
    if (k < 1 || k > a.rows()) throw std::invalid_argument("selfadjoint_interval: k out of range");
    auto es = hermitian_eig(a);
    const int n = a.rows();
    double hi = 0, lo = 0;
    for (int i = 0; i < k; ++i) {
        hi += es.values[i];
        lo += es.values[n - 1 - i];
    }
    return {lo / k, hi / k};
}

}  // namespace specscale
