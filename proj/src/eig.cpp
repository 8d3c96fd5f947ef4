#include "specscale/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace specscale {

namespace {

double off_diag_fro(const CMat& a) {
    double s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One two-sided rotation zeroing a(p,q). V acts on coordinates (p,q) as
// [[c, s],[-s e^{-i phi}, c e^{-i phi}]] with a(p,q) = r e^{i phi}.
void rotate(CMat& a, CMat& q_acc, int p, int q) {
    const cplx apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cplx phase = apq / r;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * r);
    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cplx se_m = s * std::conj(phase);  // s e^{-i phi}
    const cplx ce_m = c * std::conj(phase);
    const int n = a.rows();

    for (int j = 0; j < n; ++j) {  // rows p, q: V* A
        cplx rp = a(p, j), rq = a(q, j);
        a(p, j) = c * rp - std::conj(se_m) * rq;
        a(q, j) = s * rp + std::conj(ce_m) * rq;
    }
    for (int i = 0; i < n; ++i) {  // cols p, q: A V
        cplx cp = a(i, p), cq = a(i, q);
        a(i, p) = c * cp - se_m * cq;
        a(i, q) = s * cp + ce_m * cq;
        cplx vp = q_acc(i, p), vq = q_acc(i, q);
        q_acc(i, p) = c * vp - se_m * vq;
        q_acc(i, q) = s * vp + ce_m * vq;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

void fix_phase(CMat& vectors, int j) {
    const int n = vectors.rows();
    for (int i = 0; i < n; ++i) {
        double m = std::abs(vectors(i, j));
        if (m > 1e-12) {
            cplx ph = std::conj(vectors(i, j)) / m;
            for (int r = 0; r < n; ++r) vectors(r, j) *= ph;
            return;
        }
    }
}

}  // namespace

EigSystem hermitian_eig(const CMat& a_in) {
    if (!a_in.square()) throw std::invalid_argument("hermitian_eig: square matrix required");
    if (!a_in.all_finite()) throw std::invalid_argument("hermitian_eig: non-finite entry");
    if (hermitian_defect(a_in) > 1e-12)
        throw std::invalid_argument("hermitian_eig: input not Hermitian within tolerance");

    CMat a = hermitian_part(a_in);
    const int n = a.rows();
    CMat q = CMat::identity(n);
    const double total = a.fro_norm();
    const double stop = 1e-14 * total;

    for (int sweep = 0; sweep < 60 && off_diag_fro(a) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p)
            for (int qi = p + 1; qi < n; ++qi)
                if (std::abs(a(p, qi)) > stop / (double(n) + 1.0)) rotate(a, q, p, qi);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigSystem out;
    out.values.resize(n);
    out.vectors = CMat(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = q(i, order[j]);
        fix_phase(out.vectors, j);
    }
    return out;
}

double hermitian_op_norm(const CMat& a) {
    if (a.rows() == 0) return 0.0;
    if (a.fro_norm() == 0.0) return 0.0;
    auto es = hermitian_eig(a);
    double m = 0;
    for (double v : es.values) m = std::max(m, std::abs(v));
    return m;
}

double op_norm(const CMat& a) {
    if (a.rows() == 0 || a.cols() == 0 || a.fro_norm() == 0.0) return 0.0;
    auto es = hermitian_eig(adjoint_times(a, a));
    double m = 0;
    for (double v : es.values) m = std::max(m, v);
    return std::sqrt(std::max(0.0, m));
}

double sigma_min(const CMat& a) {
    auto es = hermitian_eig(adjoint_times(a, a));
    double m = es.values.empty() ? 0.0 : es.values.back();
    return std::sqrt(std::max(0.0, m));
}

double top_k_sum(const std::vector<double>& values, int k) {
    if (k < 1 || k > int(values.size())) throw std::invalid_argument("top_k_sum: k out of range");
    double s = 0;
    for (int i = 0; i < k; ++i) s += values[i];
    return s;
}

}  // namespace specscale
