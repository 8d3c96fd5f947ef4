#include "specscale/structure.hpp"

#include <algorithm>
#include <cmath>

#include "specscale/rng.hpp"

namespace specscale {

namespace {

// n^2 x n^2 matrix of X -> b X - X b acting on row-major vec(X).
CMat adjoint_action(const CMat& b) {
    const int n = b.rows();
    CMat ad(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int row = i * n + j;
            for (int k = 0; k < n; ++k) {
                ad(row, k * n + j) += b(i, k);   // (bX)_{ij}
                ad(row, i * n + k) -= b(k, j);   // (Xb)_{ij}
            }
        }
    return ad;
}

CMat reshape_to_matrix(const CMat& vec_col, int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = vec_col(i * n + j, 0);
    return m;
}

struct Splitter {
    const Operator& op;
    double tol;
    Rng rng;
    std::vector<ReducingBlock> blocks;
    bool failed = false;

    void split(const CMat& columns, int depth) {
        const int r = columns.cols();
        if (failed) return;
        if (r == 1) {
            emit(columns);
            return;
        }
        CMat c_sub = adjoint_times(columns, op.c * columns);
        Operator sub = decompose(hermitian_part(c_sub) + cplx(0, 1) * skew_part_over_i(c_sub));
        auto basis = commutant_basis(sub);
        if (basis.size() <= 1) {
            emit(columns);
            return;
        }
        for (int attempt = 0; attempt < 3; ++attempt) {
            CMat h(r, r);
            for (auto& b : basis) {
                CMat hb = hermitian_part(b);
                hb *= rng.gaussian();
                h += hb;
            }
            auto es = hermitian_eig(h);
            double htol = 1e-8 * std::max(1.0, std::max(std::abs(es.values.front()),
                                                        std::abs(es.values.back())));
            std::vector<std::pair<int, int>> clusters;  // [first, last]
            int start = 0;
            for (int i = 1; i <= r; ++i)
                if (i == r || es.values[i - 1] - es.values[i] > htol) {
                    clusters.emplace_back(start, i - 1);
                    start = i;
                }
            if (clusters.size() < 2) continue;  // unlucky draw, fresh h
            for (auto& [a, b] : clusters) {
                CMat sub_cols = es.vectors.cols_range(a, b + 1);
                split(columns * sub_cols, depth + 1);
            }
            return;
        }
        // commutant says splittable but no random element separated it
        if (depth > 2 * op.n) { failed = true; return; }
        emit(columns);
    }

    void emit(const CMat& columns) {
        ReducingBlock blk;
        blk.columns = columns;
        blk.dim = columns.cols();
        CMat c_sub = adjoint_times(columns, op.c * columns);
        cplx gamma = c_sub.trace() / double(blk.dim);
        CMat dev = c_sub - gamma * CMat::identity(blk.dim);
        if (dev.fro_norm() <= tol * std::max(1.0, op.c.fro_norm())) blk.scalar = gamma;
        blocks.push_back(std::move(blk));
    }
};

bool verify(const Operator& op, const std::vector<ReducingBlock>& blocks, double tol) {
    const int n = op.n;
    const double nb1 = op.b1.fro_norm();
    const double nb2 = op.b2.fro_norm();
    CMat sum(n, n);
    int total = 0;
    for (auto& blk : blocks) {
        CMat p = blk.columns * blk.columns.adjoint();
        sum += p;
        total += blk.dim;
        CMat c1 = p * op.b1 - op.b1 * p;
        CMat c2 = p * op.b2 - op.b2 * p;
        if (c1.fro_norm() > 1e-9 * std::max(nb1, 1e-300) && nb1 > 0) return false;
        if (c2.fro_norm() > 1e-9 * std::max(nb2, 1e-300) && nb2 > 0) return false;
        (void)tol;
    }
    if (total != n) return false;
    sum -= CMat::identity(n);
    return sum.fro_norm() <= 1e-9 * n;
}

}  // namespace

CMat ReducingStructure::projection(int block) const {
    const auto& b = blocks.at(block);
    return b.columns * b.columns.adjoint();
}

std::vector<CMat> commutant_basis(const Operator& op) {
    const int n = op.n;
    CMat ad1 = adjoint_action(op.b1);
    CMat ad2 = adjoint_action(op.b2);
    CMat m = adjoint_times(ad1, ad1);
    m += adjoint_times(ad2, ad2);
    auto es = hermitian_eig(m);
    const double scale = std::max(hermitian_op_norm(op.b1), hermitian_op_norm(op.b2));
    const double thresh = 1e-10 * scale;
    std::vector<CMat> basis;
    for (int i = n * n - 1; i >= 0; --i) {
        double sigma = std::sqrt(std::max(0.0, es.values[i]));
        if (sigma <= thresh) basis.push_back(reshape_to_matrix(es.vectors.col(i), n));
    }
    return basis;
}

ReducingStructure reducing_subspaces(const Operator& op, double tol, std::uint64_t seed) {
    ReducingStructure out;
    for (int retry = 0; retry < 3; ++retry) {
        Splitter sp{op, tol, Rng(seed + retry), {}, false};
        sp.split(CMat::identity(op.n), 0);
        if (!sp.failed && verify(op, sp.blocks, tol)) {
            out.blocks = std::move(sp.blocks);
            out.retries = retry;
            // aggregate scalar blocks into reducing eigenvalues
            const double agg_tol = 1e-8 * std::max(1.0, op_norm(op.c));
            for (auto& blk : out.blocks) {
                if (!blk.scalar) continue;
                bool merged = false;
                for (auto& re : out.reducing_eigenvalues)
                    if (std::abs(re.value - *blk.scalar) <= agg_tol) {
                        re.multiplicity += blk.dim;
                        merged = true;
                        break;
                    }
                if (!merged) out.reducing_eigenvalues.push_back({*blk.scalar, blk.dim});
            }
            return out;
        }
    }
    out.indeterminate = true;
    out.blocks = {{CMat::identity(op.n), op.n, std::nullopt}};
    return out;
}

bool is_reducing_eigenvalue(const Operator& op, cplx lambda, double tol) {
    const int n = op.n;
    CMat stacked(2 * n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            stacked(i, j) = op.c(i, j) - (i == j ? lambda : cplx(0));
            stacked(n + i, j) = std::conj(op.c(j, i)) - (i == j ? std::conj(lambda) : cplx(0));
        }
    return sigma_min(stacked) <= tol * op_norm(op.c);
}

cplx complex_slope(const Operator& op, const CMat& z_minus, const CMat& z_plus) {
    const int n = op.n;
    if (z_minus.rows() != n || z_plus.rows() != n || !z_minus.square() || !z_plus.square())
        throw std::invalid_argument("complex_slope: projections must be n x n");
    auto projection_defect = [](const CMat& p) {
        CMat d = p * p - p;
        return std::max(d.fro_norm(), hermitian_defect(p));
    };
    if (projection_defect(z_minus) > 1e-8 || projection_defect(z_plus) > 1e-8)
        throw std::invalid_argument("complex_slope: arguments are not projections");
    CMat contain = z_plus * z_minus - z_minus;  // z- <= z+ iff z+ z- = z-
    if (contain.fro_norm() > 1e-9 * n)
        throw std::invalid_argument("complex_slope: z- not contained in z+");
    CMat z = z_plus - z_minus;
    double denom = z.trace().real() / n;
    if (denom <= 1e-12) throw std::domain_error("complex_slope: z+ = z-");
    cplx num = (op.c * z).trace() / double(n);
    return num / denom;
}

}  // namespace specscale
