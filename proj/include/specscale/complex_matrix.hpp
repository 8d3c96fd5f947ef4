#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace specscale {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Small sizes only; everything is by value.
class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("CMat: negative dimension");
    }
    CMat(int rows, int cols, std::vector<cplx> data) : rows_(rows), cols_(cols), a_(std::move(data)) {
        if (a_.size() != size_t(rows) * cols) throw std::invalid_argument("CMat: data size mismatch");
    }

    static CMat identity(int n);
    static CMat zero(int rows, int cols) { return CMat(rows, cols); }
    static CMat diag(const std::vector<cplx>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    CMat adjoint() const;
    CMat transpose() const;
    CMat conj() const;

    cplx trace() const;
    double fro_norm() const;
    double max_abs() const;
    bool all_finite() const;

    CMat col(int j) const;              // n x 1 slice
    CMat cols_range(int j0, int j1) const;  // columns [j0, j1)

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(cplx s);

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }
    friend CMat operator*(const CMat& a, const CMat& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

/// a*b with a's adjoint taken first (saves a temporary in hot paths).
CMat adjoint_times(const CMat& a, const CMat& b);

/// Hermitian part (m + m*)/2 and skew part (m - m*)/(2i).
CMat hermitian_part(const CMat& m);
CMat skew_part_over_i(const CMat& m);

/// Relative deviation from Hermitian symmetry: ||m - m*||_F / max(||m||_F, tiny).
double hermitian_defect(const CMat& m);

/// LU with partial pivoting. Determinant of a square complex matrix.
cplx lu_det(CMat m);

/// Solve m x = rhs (square, partial-pivot LU). rhs may have several columns.
CMat lu_solve(CMat m, CMat rhs);

/// Modified Gram-Schmidt orthonormalization of the columns; columns whose
/// residual falls below drop_tol * first_norm are dropped.
CMat orthonormal_columns(const CMat& m, double drop_tol = 1e-12);

/// <x, y> = x* y for n x 1 matrices.
cplx vdot(const CMat& x, const CMat& y);

/// Quadratic form x* m x for an n x 1 vector x.
cplx quad_form(const CMat& m, const CMat& x);

}  // namespace specscale
