#pragma once

// Weak-orthogonal triangularization and the CS decomposition of blocked
// unitary dual quaternion matrices.  A dual singular value of the leading
// block falls into one of five classes (exactly one, coupling aside):
//   1 with eps-coupling below / 1 without / appreciable in (0,1) / positive
//   infinitesimal / zero,
// and the structured middle is assembled from that taxonomy.

#include <vector>

#include "dqmat/svd.hpp"

namespace dqmat {

struct PreCSResult {
    DQMatrix U1;                   // m x m unitary
    QMatrix T;                     // (m-t) x s coupling block, U1* A = [[T eps, 0],[0, Theta]]
    std::vector<DualNumber> Theta; // t appreciable positive dual numbers
    Index s = 0;                   // leading infinitesimal columns
    Index t = 0;                   // trailing orthogonal appreciable columns
};

PreCSResult weak_orth_triangularize(const DQMatrix& a, Index s, const ToleranceConfig& tol);

struct CSBlocks {
    Index r1 = 0, r2 = 0;  // row split
    Index t1 = 0, t2 = 0;  // column split (t2 = 0 for the 2-by-1 case)
    Index ones_coupled = 0;    // singular values 1 with eps coupling (width of Sigma)
    Index ones_plain = 0;      // singular values 1 without coupling
    Index mid = 0;             // appreciable values strictly inside (0,1)
    Index inf = 0;             // positive infinitesimal values (the D eps class)
    Index zero = 0;            // zero singular values among the t1 columns
};

struct CSFactorization {
    DQMatrix U1, U2, V1;
    DQMatrix V2;            // empty for the 2-by-1 case
    DQMatrix middle;        // structured right side, (r1+r2) x (t1+t2)
    CSBlocks blocks;
    std::vector<DualNumber> C, S;  // paired appreciable diagonals, C^2 + S^2 = I
    std::vector<double> Sigma;     // eps-coupling singular values, descending
    std::vector<double> D;         // infinitesimal-class values, descending
};

// W with orthonormal columns, split after row r1: W = diag(U1,U2) middle V1*.
CSFactorization cs_decompose_2x1(const DQMatrix& w, Index r1, const ToleranceConfig& tol);

// W unitary, split r1|r2 rows and t1|t2 columns:
// diag(U1*,U2*) W diag(V1,V2) = middle.
CSFactorization cs_decompose_2x2(const DQMatrix& w, Index r1, Index t1, const ToleranceConfig& tol);

}  // namespace dqmat
