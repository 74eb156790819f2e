#pragma once

// SVD of a dual quaternion matrix.  The dual singular values are dual
// numbers: an appreciable descending block, then a positive infinitesimal
// block, then zeros.

#include <vector>

#include "dqmat/dense.hpp"
#include "dqmat/quat_linalg.hpp"

namespace dqmat {

struct DQSVDFactorization {
    DQMatrix U;                     // m x m unitary
    DQMatrix V;                     // n x n unitary
    std::vector<DualNumber> sigma;  // min(m,n), nonincreasing under the total order
    Index rank = 0;
    Index arank = 0;

    DQMatrix middle(Index rows, Index cols) const { return diagonal(sigma, rows, cols); }
};

DQSVDFactorization dqsvd(const DQMatrix& a, const ToleranceConfig& tol);

}  // namespace dqmat
