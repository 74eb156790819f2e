#pragma once

// Product-type SVD of a consistent pair, the SVD of the product it induces,
// and the canonical correlation decomposition of a pair sharing rows.

#include <vector>

#include "dqmat/gsvd.hpp"
#include "dqmat/householder_qr.hpp"

namespace dqmat {

struct PrePSVDBlocks {
    Index r1 = 0, r2 = 0, r3 = 0;  // row splits of the input
    Index r11 = 0;                 // appreciable singular values of the top block
    Index r12 = 0;                 // infinitesimal singular values of the top block
    GSVD1Blocks sub;               // block counters of the recursive pencil
};

struct PrePSVDResult {
    DQMatrix T;       // n x n nonsingular, block structure per the 3-by-1 form
    DQMatrix SigmaB;  // n x p structured middle
    DQMatrix Y;       // p x p nonsingular
    DQMatrix Yinv;
    PrePSVDBlocks blocks;
    // Pieces reused by the product SVD.
    DQMatrix W;                       // p x p right factor of the top-block SVD
    std::vector<DualNumber> SigmaB1;  // appreciable dual singular values of B1
    std::vector<double> SigmaBhat;    // infinitesimal values of B1
    DQMatrix SigmaB2G;                // r2 x (p - r11) product Sigma_B^2 G
};

PrePSVDResult pre_psvd(const DQMatrix& b, Index r1, Index r2, const ToleranceConfig& tol);

struct PSVDFactorization {
    DQMatrix U;        // m x m unitary
    DQMatrix X, Xinv;  // n x n nonsingular
    DQMatrix Y, Yinv;  // p x p nonsingular
    DQMatrix DA;       // m x n: diag(I_r1, I_r2 eps, 0)
    DQMatrix DB;       // n x p structured middle
    Index r1 = 0, r2 = 0;
    PrePSVDResult pre;  // inner 3-by-1 decomposition, reused by product_svd
};

PSVDFactorization dqpsvd(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol);

// SVD of the product A B assembled from the product-type decomposition.
DQSVDFactorization product_svd(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol);

struct CCDBlocks {
    Index p = 0, q = 0;         // ranks of A and B
    Index ones_coupled = 0;     // unit correlations carrying a Sigma eps coupling
    Index ones_plain = 0;       // exact unit correlations
    Index mid = 0;              // correlations strictly inside (0,1)
    Index inf = 0;              // D eps class
    Index zero = 0;
};

struct CCDFactorization {
    DQMatrix Q;          // m x m unitary
    DQMatrix XA;         // n x n
    DQMatrix XB;         // l x l
    DQMatrix SigmaA;     // m x n structured middle (zero padded)
    DQMatrix SigmaB;     // m x l, exactly [I_q; 0] padded
    CCDBlocks blocks;
    std::vector<DualNumber> C, S;  // canonical correlation pairs
    bool regular = false;          // true iff both R factors had appreciable rows only
};

CCDFactorization dqccd(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol);

}  // namespace dqmat
