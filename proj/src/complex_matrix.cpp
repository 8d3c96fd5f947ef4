#include "specscale/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace specscale {

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::diag(const std::vector<cplx>& d) {
    CMat m(int(d.size()), int(d.size()));
    for (int i = 0; i < int(d.size()); ++i) m(i, i) = d[i];
    return m;
}

CMat CMat::adjoint() const {
    CMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMat CMat::transpose() const {
    CMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMat CMat::conj() const {
    CMat r = *this;
    for (auto& v : r.a_) v = std::conj(v);
    return r;
}

cplx CMat::trace() const {
    cplx t = 0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMat::fro_norm() const {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMat::max_abs() const {
    double s = 0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
}

bool CMat::all_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

CMat CMat::col(int j) const {
    CMat r(rows_, 1);
    for (int i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
    return r;
}

CMat CMat::cols_range(int j0, int j1) const {
    CMat r(rows_, j1 - j0);
    for (int i = 0; i < rows_; ++i)
        for (int j = j0; j < j1; ++j) r(i, j - j0) = (*this)(i, j);
    return r;
}

CMat& CMat::operator+=(const CMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMat: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMat: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMat& CMat::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("CMat: product shape mismatch");
    CMat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            cplx aik = a(i, k);
            if (aik == cplx(0)) continue;
            for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

CMat adjoint_times(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("adjoint_times: shape mismatch");
    CMat r(a.cols(), b.cols());
    for (int k = 0; k < a.rows(); ++k)
        for (int i = 0; i < a.cols(); ++i) {
            cplx aki = std::conj(a(k, i));
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aki * b(k, j);
        }
    return r;
}

CMat hermitian_part(const CMat& m) {
    CMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return r;
}

CMat skew_part_over_i(const CMat& m) {
    const cplx half_over_i(0.0, -0.5);  // 1/(2i)
    CMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = half_over_i * (m(i, j) - std::conj(m(j, i)));
    return r;
}

double hermitian_defect(const CMat& m) {
    double num = 0, den = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            num += std::norm(m(i, j) - std::conj(m(j, i)));
            den += std::norm(m(i, j));
        }
    return den > 0 ? std::sqrt(num / den) : 0.0;
}

cplx lu_det(CMat m) {
    if (!m.square()) throw std::invalid_argument("lu_det: square matrix required");
    const int n = m.rows();
    cplx det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(m(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > best) { best = std::abs(m(i, k)); piv = i; }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            det = -det;
        }
        det *= m(k, k);
        for (int i = k + 1; i < n; ++i) {
            cplx f = m(i, k) / m(k, k);
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

CMat lu_solve(CMat m, CMat rhs) {
    if (!m.square() || m.rows() != rhs.rows()) throw std::invalid_argument("lu_solve: shape mismatch");
    const int n = m.rows();
    const int w = rhs.cols();
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(m(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > best) { best = std::abs(m(i, k)); piv = i; }
        if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            for (int j = 0; j < w; ++j) std::swap(rhs(k, j), rhs(piv, j));
        }
        for (int i = k + 1; i < n; ++i) {
            cplx f = m(i, k) / m(k, k);
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
            for (int j = 0; j < w; ++j) rhs(i, j) -= f * rhs(k, j);
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = 0; j < w; ++j) {
            cplx s = rhs(i, j);
            for (int k = i + 1; k < n; ++k) s -= m(i, k) * rhs(k, j);
            rhs(i, j) = s / m(i, i);
        }
    }
    return rhs;
}

CMat orthonormal_columns(const CMat& m, double drop_tol) {
    const int n = m.rows();
    std::vector<CMat> basis;
    double first_norm = 0;
    for (int j = 0; j < m.cols(); ++j) {
        CMat v = m.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                cplx c = vdot(b, v);
                for (int i = 0; i < n; ++i) v(i, 0) -= c * b(i, 0);
            }
        double nv = v.fro_norm();
        if (basis.empty()) first_norm = nv;
        if (nv <= drop_tol * std::max(first_norm, 1e-300)) continue;
        v *= cplx(1.0 / nv);
        basis.push_back(std::move(v));
    }
    CMat q(n, int(basis.size()));
    for (int j = 0; j < int(basis.size()); ++j)
        for (int i = 0; i < n; ++i) q(i, j) = basis[j](i, 0);
    return q;
}

cplx vdot(const CMat& x, const CMat& y) {
    cplx s = 0;
    for (int i = 0; i < x.rows(); ++i) s += std::conj(x(i, 0)) * y(i, 0);
    return s;
}

cplx quad_form(const CMat& m, const CMat& x) {
    cplx s = 0;
    for (int i = 0; i < m.rows(); ++i) {
        cplx row = 0;
        for (int j = 0; j < m.cols(); ++j) row += m(i, j) * x(j, 0);
        s += std::conj(x(i, 0)) * row;
    }
    return s;
}

}  // namespace specscale
