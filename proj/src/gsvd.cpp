#include "dqmat/gsvd.hpp"

#include <algorithm>

namespace dqmat {

namespace {

void check_pencil(const DQMatrix& a, const DQMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatchError("quotient GSVD: column counts differ");
}

// diag(Sigma_C^-1-free structure): X = diag(W* Sigma, I_{n-k}) Q* and its
// structured inverse Q diag(Sigma^-1 W, I) when every diagonal entry of
// Sigma is invertible.
DQMatrix assemble_x(const DQMatrix& wfac, const std::vector<DualNumber>& sigma, const DQMatrix& q,
                    Index n) {
    const Index k = wfac.rows();
    DQMatrix d(n, n);
    DQMatrix ws = adjoint(wfac);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) ws(i, j) = ws(i, j) * DualQuaternion(sigma[static_cast<size_t>(j)]);
    // (W* Sigma)(i,j) = W*(i,j) sigma_j: right-scaling of columns.
    d.set_block(0, 0, ws);
    for (Index i = k; i < n; ++i) d(i, i) = DualQuaternion(1.0);
    return d * adjoint(q);
}

DQMatrix assemble_x_inverse(const DQMatrix& wfac, const std::vector<DualNumber>& sigma,
                            const DQMatrix& q, Index n, const ToleranceConfig& tol) {
    const Index k = wfac.rows();
    DQMatrix d(n, n);
    DQMatrix sw = wfac;
    for (Index i = 0; i < k; ++i) {
        const DualNumber inv = inverse(sigma[static_cast<size_t>(i)], tol.appreciable_tol);
        for (Index j = 0; j < k; ++j) sw(i, j) = DualQuaternion(inv) * sw(i, j);
    }
    d.set_block(0, 0, sw);
    for (Index i = k; i < n; ++i) d(i, i) = DualQuaternion(1.0);
    return q * d;
}

}  // namespace

GSVD1Factorization dqgsvd1_cs(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol) {
    check_pencil(a, b);
    const Index m = a.rows(), p = b.rows(), n = a.cols();
    const DQMatrix c = vstack(a, b);
    if (is_zero(c, tol.rank_tol)) throw ZeroPencilError("quotient GSVD of a zero pencil");

    const DQSVDFactorization sc = dqsvd(c, tol);
    const Index k = sc.rank, t = sc.arank, s = k - t;

    const DQMatrix phead = sc.U.block(0, 0, m + p, k);
    const CSFactorization cs = cs_decompose_2x1(phead, m, tol);

    GSVD1Factorization f;
    f.U = cs.U1;
    f.V = cs.U2;
    f.blocks = {k, t, s,
                cs.blocks.ones_coupled + cs.blocks.ones_plain,
                cs.blocks.mid,
                cs.blocks.inf,
                cs.blocks.ones_coupled,
                cs.blocks.ones_coupled};
    f.SA = cs.C;
    f.SB = cs.S;
    f.SigmaA = DQMatrix(m, n);
    f.SigmaA.set_block(0, 0, cs.middle.block(0, 0, m, k));
    f.SigmaB = DQMatrix(p, n);
    f.SigmaB.set_block(0, 0, cs.middle.block(m, 0, p, k));

    std::vector<DualNumber> sig_k(sc.sigma.begin(), sc.sigma.begin() + k);
    f.X = assemble_x(cs.V1, sig_k, sc.V, n);
    f.x_singular = s > 0;
    if (s == 0) f.Xinv = assemble_x_inverse(cs.V1, sig_k, sc.V, n, tol);

    // Columns carried by an infinitesimal row of X leave no appreciable
    // trace of A; they belong to the Xi eps class of the display even when
    // the stacked-factor gauge leaves the corresponding singular value of
    // W11 at exactly zero.  Promoting them is invisible to both
    // reconstructions.
    for (Index j = k - cs.blocks.zero; j < k && j < m; ++j) {
        if (max_component(f.SigmaA(j, j)) != 0.0) continue;
        if (max_abs_standard(f.X.block(j, 0, 1, n)) > tol.rank_tol) continue;
        f.SigmaA(j, j) = DualQuaternion(DualNumber(0.0, 1.0));
        ++f.blocks.t1;
    }
    return f;
}

GSVD1Factorization detail::gsvd1_regular_any(const DQMatrix& a, const DQMatrix& b,
                                             const ToleranceConfig& tol) {
    check_pencil(a, b);
    const Index m = a.rows(), p = b.rows(), n = a.cols();
    const DQMatrix c = vstack(a, b);

    const DQSVDFactorization sc = dqsvd(c, tol);
    const Index k = sc.rank, t = sc.arank, s = k - t;

    const DQMatrix phead = sc.U.block(0, 0, m + p, t);
    const CSFactorization cs = cs_decompose_2x1(phead, m, tol);

    GSVD1Factorization f;
    f.form2 = true;
    f.U = cs.U1;
    f.V = cs.U2;
    f.blocks = {k, t, s,
                cs.blocks.ones_coupled + cs.blocks.ones_plain,
                cs.blocks.mid,
                cs.blocks.inf,
                cs.blocks.ones_coupled,
                cs.blocks.ones_coupled};
    f.SA = cs.C;
    f.SB = cs.S;

    // N_A = U* P12, N_B = V* P22; [N_A; N_B] keeps orthonormal columns.
    const DQMatrix p12 = sc.U.block(0, t, m, s);
    const DQMatrix p22 = sc.U.block(m, t, p, s);
    f.NA = adjoint(f.U) * p12;
    f.NB = adjoint(f.V) * p22;

    // (Sigma_A, N_A eps, 0) padded to m x n.
    f.SigmaA = DQMatrix(m, n);
    f.SigmaA.set_block(0, 0, cs.middle.block(0, 0, m, t));
    f.SigmaB = DQMatrix(p, n);
    f.SigmaB.set_block(0, 0, cs.middle.block(m, 0, p, t));
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < s; ++j) f.SigmaA(i, t + j) = eps(f.NA(i, j).st);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < s; ++j) f.SigmaB(i, t + j) = eps(f.NB(i, j).st);

    // X = diag(W* Sigma_t, Sigma_s, I_{n-k}) Q*, nonsingular by construction.
    DQMatrix d(n, n);
    DQMatrix ws = adjoint(cs.V1);
    for (Index i = 0; i < t; ++i)
        for (Index j = 0; j < t; ++j) ws(i, j) = ws(i, j) * DualQuaternion(sc.sigma[static_cast<size_t>(j)]);
    d.set_block(0, 0, ws);
    for (Index i = 0; i < s; ++i) d(t + i, t + i) = DualQuaternion(sc.sigma[static_cast<size_t>(t + i)].in);
    for (Index i = k; i < n; ++i) d(i, i) = DualQuaternion(1.0);
    f.X = d * adjoint(sc.V);

    DQMatrix dinv(n, n);
    DQMatrix sw = cs.V1;
    for (Index i = 0; i < t; ++i) {
        const DualNumber inv = inverse(sc.sigma[static_cast<size_t>(i)], tol.appreciable_tol);
        for (Index j = 0; j < t; ++j) sw(i, j) = DualQuaternion(inv) * sw(i, j);
    }
    dinv.set_block(0, 0, sw);
    for (Index i = 0; i < s; ++i)
        dinv(t + i, t + i) = DualQuaternion(1.0 / sc.sigma[static_cast<size_t>(t + i)].in);
    for (Index i = k; i < n; ++i) dinv(i, i) = DualQuaternion(1.0);
    f.Xinv = sc.V * dinv;
    return f;
}

GSVD1Factorization dqgsvd1_regular(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol) {
    const DQMatrix c = vstack(a, b);
    if (is_zero(c, tol.rank_tol)) throw ZeroPencilError("quotient GSVD of a zero pencil");
    return detail::gsvd1_regular_any(a, b, tol);
}

GSVD2Factorization dqgsvd2(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol) {
    check_pencil(a, b);
    const Index m = a.rows(), p = b.rows(), n = a.cols();
    const DQMatrix c = vstack(a, b);
    if (is_zero(c, tol.rank_tol)) throw ZeroPencilError("quotient GSVD of a zero pencil");

    const DQSVDFactorization sc = dqsvd(c, tol);
    const Index t = sc.arank, s = sc.rank - t;

    // A1 = A Q1 Sigma_t^-1 and B1 = B Q1 Sigma_t^-1 satisfy A1*A1 + B1*B1 = I.
    DQMatrix q1s = sc.V.block(0, 0, n, t);
    for (Index j = 0; j < t; ++j) {
        const DualNumber inv = inverse(sc.sigma[static_cast<size_t>(j)], tol.appreciable_tol);
        for (Index i = 0; i < n; ++i) q1s(i, j) = q1s(i, j) * DualQuaternion(inv);
    }
    const DQMatrix a1 = a * q1s;
    const DQMatrix b1 = b * q1s;

    const DQSVDFactorization sa = dqsvd(a1, tol);
    // Classes of A1's dual singular values: 1 / (0,1) appreciable / eps / 0.
    Index r = 0, q = 0, l = 0;
    for (const DualNumber& mu : sa.sigma) {
        if (mu.st >= 1.0 - tol.rank_tol)
            ++r;
        else if (mu.st > tol.rank_tol)
            ++q;
        else if (mu.in > tol.rank_tol)
            ++l;
    }

    GSVD2Factorization f;
    f.blocks.t = t;
    f.blocks.s = s;
    f.blocks.r = r;
    f.blocks.q = q;
    f.blocks.l = l;
    for (Index i = 0; i < q; ++i) f.SA.push_back(sa.sigma[static_cast<size_t>(r + i)]);

    const DQMatrix b1w = b1 * sa.V;
    PreCSResult pre = weak_orth_triangularize(b1w, r, tol);
    for (Index i = 0; i < q; ++i) f.SB.push_back(pre.Theta[static_cast<size_t>(i)]);

    // QSVD of the coupling block T.
    QSVD tf = quat_svd(pre.T);
    Index r1 = 0;
    while (r1 < static_cast<Index>(tf.sigma.size()) && tf.sigma[static_cast<size_t>(r1)] > tol.rank_tol) ++r1;
    f.blocks.r1 = r1;
    f.blocks.r2 = r1;

    DQMatrix u = sa.U;
    {
        DQMatrix qext = DQMatrix::Identity(m);
        qext.set_block(0, 0, to_dual(tf.V));
        u = u * qext;
    }
    DQMatrix v = pre.U1;
    {
        DQMatrix pext = DQMatrix::Identity(p);
        pext.set_block(0, 0, to_dual(tf.U));
        v = v * pext;
    }
    DQMatrix w = sa.V;
    {
        DQMatrix qext = DQMatrix::Identity(t);
        qext.set_block(0, 0, to_dual(tf.V));
        w = w * qext;
    }

    // X = Q diag(Sigma_t^-1 W Qhat, 0_s, I_{n-t-s}).
    DQMatrix d(n, n);
    DQMatrix sw(t, t);
    for (Index i = 0; i < t; ++i) {
        const DualNumber inv = inverse(sc.sigma[static_cast<size_t>(i)], tol.appreciable_tol);
        for (Index j = 0; j < t; ++j) sw(i, j) = DualQuaternion(inv) * w(i, j);
    }
    d.set_block(0, 0, sw);
    for (Index i = t + s; i < n; ++i) d(i, i) = DualQuaternion(1.0);
    f.X = sc.V * d;
    f.x_singular = s > 0;
    f.U = std::move(u);
    f.V = std::move(v);

    // Sigma_A = diag(I_r, S_A, Xi eps, 0), Sigma_B = [[Sigma eps,0,0,0],
    // [0,0,0,0],[0,0,S_B,0],[0,0,0,I]], both padded to n columns.
    f.SigmaA = DQMatrix(m, n);
    for (Index i = 0; i < r; ++i) f.SigmaA(i, i) = DualQuaternion(1.0);
    for (Index i = 0; i < q; ++i) f.SigmaA(r + i, r + i) = DualQuaternion(f.SA[static_cast<size_t>(i)]);
    for (Index i = 0; i < l; ++i)
        f.SigmaA(r + q + i, r + q + i) =
            DualQuaternion(DualNumber(0.0, sa.sigma[static_cast<size_t>(r + q + i)].in));

    f.SigmaB = DQMatrix(p, n);
    for (Index i = 0; i < r1; ++i)
        f.SigmaB(i, i) = DualQuaternion(DualNumber(0.0, tf.sigma[static_cast<size_t>(i)]));
    const Index theta0 = p - (t - r);
    for (Index i = 0; i < q; ++i)
        f.SigmaB(theta0 + i, r + i) = DualQuaternion(f.SB[static_cast<size_t>(i)]);
    for (Index i = 0; i < t - r - q; ++i) f.SigmaB(theta0 + q + i, r + q + i) = DualQuaternion(1.0);
    return f;
}

}  // namespace dqmat
