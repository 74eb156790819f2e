#include "dqmat/psvd_ccd.hpp"

#include <algorithm>

namespace dqmat {

PrePSVDResult pre_psvd(const DQMatrix& b, Index r1, Index r2, const ToleranceConfig& tol) {
    const Index n = b.rows(), p = b.cols();
    if (r1 < 0 || r2 < 0 || r1 + r2 > n) throw DimensionMismatchError("pre_psvd: bad row split");
    const Index r3 = n - r1 - r2;

    const DQMatrix b1 = b.block(0, 0, r1, p);
    const DQMatrix b2 = b.block(r1, 0, r2, p);
    const DQMatrix b3 = b.block(r1 + r2, 0, r3, p);

    const DQSVDFactorization s1 = dqsvd(b1, tol);
    const Index r11 = s1.arank;
    const Index r12 = s1.rank - s1.arank;

    PrePSVDResult out;
    out.blocks.r1 = r1;
    out.blocks.r2 = r2;
    out.blocks.r3 = r3;
    out.blocks.r11 = r11;
    out.blocks.r12 = r12;
    out.W = s1.V;
    for (Index i = 0; i < r11; ++i) out.SigmaB1.push_back(s1.sigma[static_cast<size_t>(i)]);
    for (Index i = 0; i < r12; ++i) out.SigmaBhat.push_back(s1.sigma[static_cast<size_t>(r11 + i)].in);

    const DQMatrix w11 = s1.V.block(0, 0, p, r11);
    const DQMatrix wrest = s1.V.block(0, r11, p, p - r11);

    // Recursive quotient GSVD of [B2; B3] restricted to the complement of
    // the appreciable right space of B1; zero sub-pencils are legitimate.
    const DQMatrix suba = b2 * wrest;
    const DQMatrix subb = b3 * wrest;
    GSVD1Factorization g = detail::gsvd1_regular_any(suba, subb, tol);
    out.blocks.sub = g.blocks;

    // T = [[T11..T13, 0, 0],[T21, 0, 0, U1, 0],[T31, 0, 0, 0, U2]].
    DQMatrix t(n, n);
    t.set_block(0, 0, s1.U);
    DQMatrix sigma_b1_inv = DQMatrix::Zero(r11, r11);
    for (Index i = 0; i < r11; ++i)
        sigma_b1_inv(i, i) = DualQuaternion(inverse(out.SigmaB1[static_cast<size_t>(i)], tol.appreciable_tol));
    if (r11 > 0) {
        t.set_block(r1, 0, b2 * w11 * sigma_b1_inv);
        t.set_block(r1 + r2, 0, b3 * w11 * sigma_b1_inv);
    }
    t.set_block(r1, r1, g.U);
    t.set_block(r1 + r2, r1 + r2, g.V);
    out.T = std::move(t);

    // Sigma_B rows: [Sigma_B1 | 0], [0 | [Sigma_hat eps, 0; 0 0] G^-1],
    // [0 | (Sigma_2; Sigma_3)].
    DQMatrix sb(n, p);
    for (Index i = 0; i < r11; ++i) sb(i, i) = DualQuaternion(out.SigmaB1[static_cast<size_t>(i)]);
    if (r1 > r11 && p > r11) {
        DQMatrix mid_block(r1 - r11, p - r11);
        for (Index i = 0; i < r12; ++i)
            mid_block(i, i) = DualQuaternion(DualNumber(0.0, out.SigmaBhat[static_cast<size_t>(i)]));
        sb.set_block(r11, r11, mid_block * (*g.Xinv));
    }
    sb.set_block(r1, r11, g.SigmaA);
    sb.set_block(r1 + r2, r11, g.SigmaB);
    out.SigmaB = std::move(sb);
    out.SigmaB2G = g.SigmaA * g.X;

    // Y = diag(I_r11, G) W*.
    DQMatrix scale = DQMatrix::Identity(p);
    scale.set_block(r11, r11, g.X);
    out.Y = scale * adjoint(s1.V);
    DQMatrix unscale = DQMatrix::Identity(p);
    unscale.set_block(r11, r11, *g.Xinv);
    out.Yinv = s1.V * unscale;
    return out;
}

PSVDFactorization dqpsvd(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol) {
    if (a.cols() != b.rows()) throw DimensionMismatchError("dqpsvd: inner dimensions disagree");
    const Index m = a.rows(), n = a.cols();

    const DQSVDFactorization sa = dqsvd(a, tol);
    const Index r1 = sa.arank, r2 = sa.rank - sa.arank;

    // X1^-1 = [Sigma_A W1*; Sigma_hat_A W2*; W3*]; X1 inverts it blockwise.
    DQMatrix x1inv(n, n);
    DQMatrix x1(n, n);
    const DQMatrix wt = adjoint(sa.V);
    for (Index i = 0; i < r1; ++i) {
        const DualNumber s = sa.sigma[static_cast<size_t>(i)];
        const DualNumber si = inverse(s, tol.appreciable_tol);
        for (Index j = 0; j < n; ++j) {
            x1inv(i, j) = DualQuaternion(s) * wt(i, j);
            x1(j, i) = sa.V(j, i) * DualQuaternion(si);
        }
    }
    for (Index i = 0; i < r2; ++i) {
        const double nu = sa.sigma[static_cast<size_t>(r1 + i)].in;
        for (Index j = 0; j < n; ++j) {
            x1inv(r1 + i, j) = nu * wt(r1 + i, j);
            x1(j, r1 + i) = sa.V(j, r1 + i) * (1.0 / nu);
        }
    }
    for (Index i = r1 + r2; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            x1inv(i, j) = wt(i, j);
            x1(j, i) = sa.V(j, i);
        }

    PrePSVDResult pre = pre_psvd(x1inv * b, r1, r2, tol);

    PSVDFactorization f;
    f.r1 = r1;
    f.r2 = r2;
    f.DB = pre.SigmaB;
    f.Y = pre.Y;
    f.Yinv = pre.Yinv;
    f.X = x1 * pre.T;

    // T is block lower triangular with unitary diagonal blocks, so its
    // inverse is explicit.
    const Index r3 = n - r1 - r2;
    const DQMatrix that = pre.T.block(0, 0, r1, r1);
    const DQMatrix t21 = pre.T.block(r1, 0, r2, r1);
    const DQMatrix t31 = pre.T.block(r1 + r2, 0, r3, r1);
    const DQMatrix u1 = pre.T.block(r1, r1, r2, r2);
    const DQMatrix u2 = pre.T.block(r1 + r2, r1 + r2, r3, r3);
    DQMatrix tinv(n, n);
    tinv.set_block(0, 0, adjoint(that));
    tinv.set_block(r1, r1, adjoint(u1));
    tinv.set_block(r1 + r2, r1 + r2, adjoint(u2));
    tinv.set_block(r1, 0, -(adjoint(u1) * t21 * adjoint(that)));
    tinv.set_block(r1 + r2, 0, -(adjoint(u2) * t31 * adjoint(that)));
    f.Xinv = tinv * x1inv;

    f.DA = DQMatrix(m, n);
    for (Index i = 0; i < r1; ++i) f.DA(i, i) = DualQuaternion(1.0);
    for (Index i = 0; i < r2; ++i) f.DA(r1 + i, r1 + i) = DualQuaternion(DualNumber(0.0, 1.0));

    // U = U_tilde Ucheck*, where the eps blocks of Ucheck* cancel the
    // standard-level coupling T21 against D_A's grading.
    const QMatrix that_st = standard_part(that);
    const QMatrix u1_st = standard_part(u1);
    const QMatrix t21_st = standard_part(t21);
    DQMatrix ucheck(m, m);
    ucheck.set_block(0, 0, that);
    ucheck.set_block(r1, r1, u1);
    for (Index i = r1 + r2; i < m; ++i) ucheck(i, i) = DualQuaternion(1.0);
    ucheck.set_block(0, r1, eps_times(-(that_st * adjoint(t21_st) * u1_st)));
    ucheck.set_block(r1, 0, eps_times(t21_st));
    f.U = sa.U * ucheck;
    f.pre = std::move(pre);
    return f;
}

// A B = U [[Sigma_B1, 0],[0, F eps],[0, 0]] W* drops out of the product
// form; the quaternion SVD of F delivers the infinitesimal singular values
// of the product.
DQSVDFactorization product_svd(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol) {
    PSVDFactorization f = dqpsvd(a, b, tol);
    const Index m = a.rows(), p = b.cols();
    const Index r1 = f.r1, r2 = f.r2, r11 = f.pre.blocks.r11, r12 = f.pre.blocks.r12;

    const Index frows = (r1 - r11) + r2;
    const Index fcols = p - r11;
    QMatrix fq(frows, fcols);
    for (Index i = 0; i < r12; ++i) fq(i, i) = Quaternion(f.pre.SigmaBhat[static_cast<size_t>(i)]);
    fq.set_block(r1 - r11, 0, standard_part(f.pre.SigmaB2G));

    QSVD fs = quat_svd(fq);
    Index rhat = 0;
    while (rhat < static_cast<Index>(fs.sigma.size()) && fs.sigma[static_cast<size_t>(rhat)] > tol.rank_tol)
        ++rhat;

    DQSVDFactorization out;
    DQMatrix hext = DQMatrix::Identity(m);
    hext.set_block(r11, r11, to_dual(fs.U));
    out.U = f.U * hext;
    DQMatrix next = DQMatrix::Identity(p);
    next.set_block(r11, r11, to_dual(fs.V));
    out.V = f.pre.W * next;

    const Index nsv = std::min(m, p);
    out.sigma.assign(static_cast<size_t>(nsv), DualNumber());
    for (Index i = 0; i < r11 && i < nsv; ++i)
        out.sigma[static_cast<size_t>(i)] = f.pre.SigmaB1[static_cast<size_t>(i)];
    for (Index i = 0; i < rhat && r11 + i < nsv; ++i)
        out.sigma[static_cast<size_t>(r11 + i)] = DualNumber(0.0, fs.sigma[static_cast<size_t>(i)]);
    out.arank = r11;
    out.rank = std::min<Index>(r11 + rhat, nsv);
    return out;
}

CCDFactorization dqccd(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol) {
    if (a.rows() != b.rows()) throw DimensionMismatchError("dqccd: row counts differ");
    const Index m = a.rows(), n = a.cols(), l = b.cols();

    const UnitaryDecomposition uda = unitary_decomposition(a, tol);
    const UnitaryDecomposition udb = unitary_decomposition(b, tol);
    const Index p = uda.rank, q = udb.rank;

    CCDFactorization f;
    f.blocks.p = p;
    f.blocks.q = q;
    f.regular = (uda.arank == uda.rank) && (udb.arank == udb.rank);

    const DQMatrix q2 = unitary_completion(udb.Q1, m);
    const DQMatrix wcs = adjoint(q2) * uda.Q1;  // m x p, orthonormal columns
    const CSFactorization cs = cs_decompose_2x1(wcs, q, tol);

    f.blocks.ones_coupled = cs.blocks.ones_coupled;
    f.blocks.ones_plain = cs.blocks.ones_plain;
    f.blocks.mid = cs.blocks.mid;
    f.blocks.inf = cs.blocks.inf;
    f.blocks.zero = cs.blocks.zero;
    f.C = cs.C;
    f.S = cs.S;

    DQMatrix ublk(m, m);
    ublk.set_block(0, 0, cs.U1);
    ublk.set_block(q, q, cs.U2);
    f.Q = q2 * ublk;

    f.SigmaA = DQMatrix(m, n);
    f.SigmaA.set_block(0, 0, cs.middle);
    f.SigmaB = DQMatrix(m, l);
    for (Index i = 0; i < q; ++i) f.SigmaB(i, i) = DualQuaternion(1.0);

    // Extend the trapezoidal factors with identity rows on the non-pivot
    // columns; after undoing the pivot permutation the result is block
    // triangular, hence nonsingular exactly in the regular case.
    auto extend_rows = [](const UnitaryDecomposition& ud, Index dim) {
        DQMatrix out(dim, dim);
        out.set_block(0, 0, ud.Rtilde);
        Index next = ud.rank;
        for (Index j = ud.rank; j < dim; ++j)
            out(next++, ud.perm[static_cast<size_t>(j)]) = DualQuaternion(1.0);
        return out;
    };

    const DQMatrix ra = extend_rows(uda, n);
    const DQMatrix rb = extend_rows(udb, l);

    DQMatrix va = DQMatrix::Identity(n);
    va.set_block(0, 0, adjoint(cs.V1));
    f.XA = va * ra;
    DQMatrix ub = DQMatrix::Identity(l);
    ub.set_block(0, 0, adjoint(cs.U1));
    f.XB = ub * rb;
    return f;
}

}  // namespace dqmat
