#pragma once

// Vector-level operations on dual quaternion matrices: the inner product
// <u,v> = v* u, the induced dual-number norm, and the unitarity check.

#include "dqmat/matrix.hpp"

namespace dqmat {

inline DualQuaternion inner_product(const DQMatrix& u, const DQMatrix& v) {
    if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows())
        throw DimensionMismatchError("inner_product expects two column vectors of equal length");
    DualQuaternion acc;
    for (Index i = 0; i < u.rows(); ++i) acc += conj(v(i, 0)) * u(i, 0);
    return acc;
}

// ||u||_2 = sqrt(<u,u>).  An infinitesimal vector has <u,u> = 0; its norm is
// taken to be ||u_in||_2 eps so that such columns can still be measured.
inline DualNumber norm2(const DQMatrix& u, double appreciable_tol = kDefaultAppreciableTol) {
    if (u.cols() != 1) throw DimensionMismatchError("norm2 expects a column vector");
    double st_sq = 0.0, in_sq = 0.0, cross = 0.0;
    for (Index i = 0; i < u.rows(); ++i) {
        const DualQuaternion& q = u(i, 0);
        st_sq += norm_sq(q.st);
        in_sq += norm_sq(q.in);
        cross += q.st.w * q.in.w + q.st.x * q.in.x + q.st.y * q.in.y + q.st.z * q.in.z;
    }
    const double st_norm = std::sqrt(st_sq);
    if (st_norm > appreciable_tol) return {st_norm, cross / st_norm};
    return {0.0, std::sqrt(in_sq)};
}

inline bool vector_appreciable(const DQMatrix& u, double tol = kDefaultAppreciableTol) {
    double st_sq = 0.0;
    for (Index i = 0; i < u.rows(); ++i) st_sq += norm_sq(u(i, 0).st);
    return std::sqrt(st_sq) > tol;
}

inline bool is_unitary(const DQMatrix& a, const ToleranceConfig& tol) {
    if (a.rows() != a.cols()) throw NotSquareError("is_unitary expects a square matrix");
    const DQMatrix id = DQMatrix::Identity(a.rows());
    const DQMatrix g1 = adjoint(a) * a - id;
    const DQMatrix g2 = a * adjoint(a) - id;
    return max_abs(g1) <= tol.residual_tol && max_abs(g2) <= tol.residual_tol;
}

struct RankInfo {
    Index rank = 0;
    Index arank = 0;  // number of appreciable singular values
};

// Counts of nonzero / appreciable dual singular values via the DQSVD.
RankInfo rank_and_arank(const DQMatrix& a, const ToleranceConfig& tol);

}  // namespace dqmat
