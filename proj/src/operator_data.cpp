#include "specscale/operator_data.hpp"

#include <cmath>
#include <stdexcept>

namespace specscale {

CMat Operator::pencil_member(double theta) const {
    CMat m = b1;
    m *= std::cos(theta);
    CMat m2 = b2;
    m2 *= std::sin(theta);
    m += m2;
    return m;
}

CMat Operator::pencil_member_imag(double theta) const {
    CMat m = b2;
    m *= std::cos(theta);
    CMat m2 = b1;
    m2 *= std::sin(theta);
    m -= m2;
    return m;
}

CMat Operator::combination(double t1, double t2) const {
    CMat m = b1;
    m *= t1;
    CMat m2 = b2;
    m2 *= t2;
    m += m2;
    return m;
}

Operator decompose(const CMat& c) {
    if (!c.square() || c.rows() < 1) throw std::invalid_argument("decompose: square matrix, n >= 1, required");
    if (!c.all_finite()) throw std::invalid_argument("decompose: non-finite entry");
    Operator op;
    op.n = c.rows();
    op.c = c;
    op.b1 = hermitian_part(c);
    op.b2 = skew_part_over_i(c);
    op.tau_c = c.trace() / double(op.n);
    return op;
}

cplx normalized_trace(const CMat& a) {
    if (!a.square()) throw std::invalid_argument("normalized_trace: square matrix required");
    return a.trace() / double(a.rows());
}

double pencil_scale(const Operator& op) {
    return std::max(hermitian_op_norm(op.b1), hermitian_op_norm(op.b2));
}

}  // namespace specscale
