#pragma once

// Quaternion-matrix kernels: full SVD by one-sided Jacobi and Hermitian
// eigendecomposition by two-sided Jacobi.  Both work directly in quaternion
// arithmetic; a quaternion 2x2 subproblem splits into a unit-quaternion phase
// followed by a real rotation.

#include <vector>

#include "dqmat/matrix.hpp"

namespace dqmat {

struct QSVD {
    QMatrix U;                  // m x m unitary
    std::vector<double> sigma;  // min(m,n), nonincreasing, nonnegative
    QMatrix V;                  // n x n unitary

    QMatrix middle(Index rows, Index cols) const { return diagonal_real(sigma, rows, cols); }
};

QSVD quat_svd(const QMatrix& a);

struct HermEig {
    std::vector<double> lambda;  // nonincreasing real eigenvalues
    QMatrix Z;                   // unitary, H = Z diag(lambda) Z*
};

HermEig hermitian_eigen(const QMatrix& h);

// Columns of q (orthonormal) extended to a full unitary basis.
QMatrix quat_unitary_completion(const QMatrix& q, Index m);

}  // namespace dqmat
