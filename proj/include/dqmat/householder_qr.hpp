#pragma once

// Householder transformations over the dual quaternion ring and the QR
// family built on them: column-pivoted QR, plain QR, full-rank decomposition
// and unitary decomposition.

#include <vector>

#include "dqmat/dense.hpp"

namespace dqmat {

struct Householder {
    DQMatrix v;  // unit column vector

    DQMatrix as_matrix() const {
        const Index n = v.rows();
        return DQMatrix::Identity(n) - 2.0 * (v * adjoint(v));
    }
};

// H a = -delta ||a||_2 e1.  delta is the unit phase of the leading entry,
// read at the standard level when a1 is appreciable and at the infinitesimal
// level otherwise (1 when a1 = 0).
struct HouseholderStep {
    Householder H;
    DualQuaternion delta;
    DualNumber norm;  // ||a||_2
};

HouseholderStep householder_annihilate(const DQMatrix& a,
                                       double appreciable_tol = kDefaultAppreciableTol);

struct QRFactorization {
    DQMatrix Q;              // m x m unitary
    DQMatrix R;              // rank x n upper trapezoidal, no zero rows
    std::vector<Index> perm; // A Pi columns: (A Pi)(:,j) = A(:, perm[j])
    Index rank = 0;
    Index arank = 0;

    DQMatrix permutation_matrix() const {
        const Index n = static_cast<Index>(perm.size());
        DQMatrix pi(n, n);
        for (Index j = 0; j < n; ++j) pi(perm[static_cast<size_t>(j)], j) = DualQuaternion(1.0);
        return pi;
    }
};

QRFactorization qr_pivoted(const DQMatrix& a, const ToleranceConfig& tol);

// Plain QR without pivoting: A = Q R with R m x n upper trapezoidal.
struct PlainQR {
    DQMatrix Q;
    DQMatrix R;
};
PlainQR qr(const DQMatrix& a);

struct FullRankDecomposition {
    DQMatrix F;  // m x r
    DQMatrix G;  // r x n
};
FullRankDecomposition full_rank_decomposition(const DQMatrix& a, const ToleranceConfig& tol);

struct UnitaryDecomposition {
    DQMatrix Q1;      // m x r, orthonormal columns
    DQMatrix Rtilde;  // r x n, full row rank
    Index rank = 0;
    Index arank = 0;
    std::vector<Index> perm;  // pivot order inherited from the QR step
};
UnitaryDecomposition unitary_decomposition(const DQMatrix& a, const ToleranceConfig& tol);

// [q, complement] as an m x m unitary matrix; q must have orthonormal columns.
DQMatrix unitary_completion(const DQMatrix& q, Index m);

}  // namespace dqmat
