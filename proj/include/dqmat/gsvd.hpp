#pragma once

// Quotient-type generalized SVDs of a dual quaternion matrix pair sharing
// columns.  Form 1 factors through the CS decomposition of the stacked left
// singular factor (X may be singular); form 2 partitions that factor by
// appreciable rank instead and always delivers a nonsingular X at the price
// of extra eps-coupling columns.  The second flavour works the appreciable
// part of the pencil directly.

#include <optional>
#include <vector>

#include "dqmat/cs.hpp"

namespace dqmat {

struct GSVD1Blocks {
    Index k = 0, t = 0, s = 0;      // rank / arank of [A; B] and their gap
    Index r = 0;                    // unit generalized values
    Index q = 0;                    // paired appreciable values
    Index t1 = 0;                   // Xi eps block
    Index r1 = 0, r2 = 0;           // eps-coupling block, r1 = rank of the coupling
};

struct GSVD1Factorization {
    DQMatrix U, V, X;
    DQMatrix SigmaA, SigmaB;        // m x n and p x n structured middles (zero padded)
    DQMatrix NA, NB;                // form 2 only: m x s and p x s, [NA; NB] orthonormal
    std::optional<DQMatrix> Xinv;   // present when X is nonsingular (always for form 2)
    GSVD1Blocks blocks;
    std::vector<DualNumber> SA, SB; // paired diagonals, SA asc, SB desc, c^2 + s^2 = 1
    bool form2 = false;
    bool x_singular = false;
};

GSVD1Factorization dqgsvd1_cs(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol);
GSVD1Factorization dqgsvd1_regular(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol);

struct GSVD2Blocks {
    Index t = 0, s = 0;   // arank of [A; B], infinitesimal count
    Index r = 0;          // unit values of A1
    Index q = 0;          // paired appreciable values
    Index l = 0;          // Xi eps block of SigmaA
    Index r1 = 0, r2 = 0; // eps-coupling block of SigmaB
};

struct GSVD2Factorization {
    DQMatrix U, V, X;
    DQMatrix SigmaA, SigmaB;  // m x n and p x n structured middles (zero padded)
    GSVD2Blocks blocks;
    std::vector<DualNumber> SA, SB;
    bool x_singular = false;
};

GSVD2Factorization dqgsvd2(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol);

namespace detail {
// As dqgsvd1_regular but accepting a zero pencil (needed by the product-type
// machinery, where zero sub-pencils arise legitimately).
GSVD1Factorization gsvd1_regular_any(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol);
}  // namespace detail

}  // namespace dqmat
