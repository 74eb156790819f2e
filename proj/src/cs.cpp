#include "dqmat/cs.hpp"

#include <algorithm>

#include "dqmat/householder_qr.hpp"

namespace dqmat {

PreCSResult weak_orth_triangularize(const DQMatrix& a, Index s, const ToleranceConfig& tol) {
    const Index m = a.rows(), n = a.cols();
    if (s < 0 || s > n) throw DimensionMismatchError("weak_orth_triangularize: bad split");
    const Index t = n - s;

    // Precondition: A*A = diag(0_s, Delta) with Delta appreciable positive.
    const DQMatrix gram = adjoint(a) * a;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const DualQuaternion g = gram(i, j);
            const bool diag_tail = (i == j && i >= s);
            if (diag_tail) {
                if (g.st.w <= tol.appreciable_tol)
                    throw PreconditionError("weak_orth_triangularize: trailing Gram diagonal not appreciable positive");
                continue;
            }
            if (max_component(g) > tol.residual_tol)
                throw PreconditionError("weak_orth_triangularize: Gram matrix not diag(0, Delta)");
        }

    PreCSResult out;
    out.s = s;
    out.t = t;
    out.Theta.resize(static_cast<size_t>(t));

    // Normalize the trailing columns; their dual norms are Theta.
    DQMatrix u2(m, t);
    for (Index j = 0; j < t; ++j) {
        const DQMatrix col = a.block(0, s + j, m, 1);
        const DualNumber nrm = norm2(col, tol.appreciable_tol);
        out.Theta[static_cast<size_t>(j)] = nrm;
        const DualNumber inv = inverse(nrm, tol.appreciable_tol);
        for (Index i = 0; i < m; ++i) u2(i, j) = col(i, 0) * inv;
    }

    // Complement first, normalized columns last, so U1* A is
    // [[T eps, 0],[0, Theta]].
    const DQMatrix full = unitary_completion(u2, m);
    DQMatrix u1(m, m);
    u1.set_block(0, 0, full.block(0, t, m, m - t));
    u1.set_block(0, m - t, u2);

    out.T = QMatrix(m - t, s);
    for (Index j = 0; j < s; ++j) {
        const DQMatrix col = a.block(0, j, m, 1);
        for (Index i = 0; i < m - t; ++i) {
            DualQuaternion acc;
            for (Index k = 0; k < m; ++k) acc += conj(u1(k, i)) * col(k, 0);
            out.T(i, j) = acc.in;  // standard part vanishes by construction
        }
    }
    out.U1 = std::move(u1);
    return out;
}

namespace {

struct Classified {
    std::vector<DualNumber> mu;  // dual singular values of W11, descending
    Index ones = 0, mid = 0, inf = 0, zero = 0;
};

Classified classify(const DQSVDFactorization& f, Index t1, const ToleranceConfig& tol) {
    Classified c;
    c.mu = f.sigma;
    for (const DualNumber& mu : c.mu) {
        if (mu.st >= 1.0 - tol.rank_tol)
            ++c.ones;
        else if (mu.st > tol.rank_tol)
            ++c.mid;
        else if (mu.in > tol.rank_tol)
            ++c.inf;
        else
            ++c.zero;
    }
    c.zero += t1 - static_cast<Index>(c.mu.size());  // columns beyond min(r1, t1)
    return c;
}

// Shared 2x1 core: W (M x t1, orthonormal columns) split r1 | M-r1.
struct Core2x1 {
    DQMatrix U1, U2, V1;
    DQMatrix D11, D21;
    CSBlocks blocks;
    std::vector<DualNumber> C, S;
    std::vector<double> Sigma, D;
};

Core2x1 cs_core_2x1(const DQMatrix& w, Index r1, const ToleranceConfig& tol) {
    const Index M = w.rows(), t1 = w.cols();
    const Index r2 = M - r1;
    const DQMatrix w11 = w.block(0, 0, r1, t1);
    const DQMatrix w21 = w.block(r1, 0, r2, t1);

    DQSVDFactorization f = dqsvd(w11, tol);
    const Classified cls = classify(f, t1, tol);

    Core2x1 out;
    out.blocks.r1 = r1;
    out.blocks.r2 = r2;
    out.blocks.t1 = t1;
    out.blocks.ones_plain = cls.ones;  // refined after the coupling rank is known
    out.blocks.mid = cls.mid;
    out.blocks.inf = cls.inf;
    out.blocks.zero = cls.zero;

    for (Index i = 0; i < cls.mid; ++i) out.C.push_back(cls.mu[static_cast<size_t>(cls.ones + i)]);
    for (Index i = 0; i < cls.inf; ++i) out.D.push_back(cls.mu[static_cast<size_t>(cls.ones + cls.mid + i)].in);

    DQMatrix u1 = f.U;
    DQMatrix v1 = f.V;
    DQMatrix u2 = DQMatrix::Identity(r2);
    QMatrix Tc(r2 - (t1 - cls.ones), cls.ones);

    if (r2 > 0 && t1 > 0) {
        const DQMatrix w21v = w21 * v1;
        PreCSResult pre = weak_orth_triangularize(w21v, cls.ones, tol);
        u2 = pre.U1;
        Tc = pre.T;
        out.S.assign(pre.Theta.begin(), pre.Theta.begin() + cls.mid);
    } else if (t1 > 0) {
        out.S.assign(static_cast<size_t>(cls.mid), DualNumber(0.0));
    }

    // QSVD of the coupling block; its rank splits the ones class.
    Index r = 0;
    if (Tc.rows() > 0 && Tc.cols() > 0) {
        QSVD tf = quat_svd(Tc);
        while (r < static_cast<Index>(tf.sigma.size()) && tf.sigma[static_cast<size_t>(r)] > tol.rank_tol) ++r;
        out.Sigma.assign(tf.sigma.begin(), tf.sigma.begin() + r);
        // U2 absorbs P, U1 and V1 absorb Q on their ones columns.
        DQMatrix pext = DQMatrix::Identity(r2);
        pext.set_block(0, 0, to_dual(tf.U));
        u2 = u2 * pext;
        DQMatrix qU = DQMatrix::Identity(r1);
        qU.set_block(0, 0, to_dual(tf.V));
        u1 = u1 * qU;
        DQMatrix qV = DQMatrix::Identity(t1);
        qV.set_block(0, 0, to_dual(tf.V));
        v1 = v1 * qV;
    }
    out.blocks.ones_coupled = r;
    out.blocks.ones_plain = cls.ones - r;

    // Canonical middles.
    const Index ones = cls.ones, l = cls.mid, ti = cls.inf;
    const Index z_cols = t1 - ones - l - ti;
    DQMatrix d11(r1, t1);
    for (Index i = 0; i < ones && i < r1; ++i) d11(i, i) = DualQuaternion(1.0);
    for (Index i = 0; i < l; ++i) d11(ones + i, ones + i) = DualQuaternion(out.C[static_cast<size_t>(i)]);
    for (Index i = 0; i < ti; ++i)
        d11(ones + l + i, ones + l + i) = DualQuaternion(DualNumber(0.0, out.D[static_cast<size_t>(i)]));

    DQMatrix d21(r2, t1);
    for (Index i = 0; i < r; ++i) d21(i, i) = DualQuaternion(DualNumber(0.0, out.Sigma[static_cast<size_t>(i)]));
    const Index theta0 = r2 - (t1 - ones);  // first Theta row
    for (Index i = 0; i < l; ++i)
        d21(theta0 + i, ones + i) = DualQuaternion(out.S[static_cast<size_t>(i)]);
    for (Index i = 0; i < ti + z_cols; ++i)
        d21(theta0 + l + i, ones + l + i) = DualQuaternion(1.0);

    out.U1 = std::move(u1);
    out.U2 = std::move(u2);
    out.V1 = std::move(v1);
    out.D11 = std::move(d11);
    out.D21 = std::move(d21);
    return out;
}

}  // namespace

CSFactorization cs_decompose_2x1(const DQMatrix& w, Index r1, const ToleranceConfig& tol) {
    if (r1 < 0 || r1 > w.rows()) throw DimensionMismatchError("cs_decompose_2x1: bad row split");
    const DQMatrix gram = adjoint(w) * w - DQMatrix::Identity(w.cols());
    if (max_abs(gram) > tol.residual_tol) throw NotIsometryError("cs_decompose_2x1: columns not orthonormal");

    Core2x1 core = cs_core_2x1(w, r1, tol);
    CSFactorization f;
    f.U1 = std::move(core.U1);
    f.U2 = std::move(core.U2);
    f.V1 = std::move(core.V1);
    f.middle = vstack(core.D11, core.D21);
    f.blocks = core.blocks;
    f.C = std::move(core.C);
    f.S = std::move(core.S);
    f.Sigma = std::move(core.Sigma);
    f.D = std::move(core.D);
    return f;
}

CSFactorization cs_decompose_2x2(const DQMatrix& w, Index r1, Index t1, const ToleranceConfig& tol) {
    const Index n = w.rows();
    if (w.cols() != n) throw NotSquareError("cs_decompose_2x2 expects a square matrix");
    if (!is_unitary(w, tol)) throw NotUnitaryError("cs_decompose_2x2: input not unitary");
    if (r1 < 0 || r1 > n || t1 < 0 || t1 > n) throw DimensionMismatchError("cs_decompose_2x2: bad split");
    const Index r2 = n - r1, t2 = n - t1;

    Core2x1 core = cs_core_2x1(w.block(0, 0, n, t1), r1, tol);
    const Index ones = core.blocks.ones_coupled + core.blocks.ones_plain;
    const Index l = core.blocks.mid, ti = core.blocks.inf;
    const Index r = core.blocks.ones_coupled;

    // Right half: weak-orthogonal triangularization of (U1* W12)*, whose
    // leading `ones` columns are infinitesimal.
    const DQMatrix w12 = w.block(0, t1, r1, t2);
    const DQMatrix w22 = w.block(r1, t1, r2, t2);
    const DQMatrix z = adjoint(adjoint(core.U1) * w12);  // t2 x r1
    PreCSResult pre = weak_orth_triangularize(z, ones, tol);
    DQMatrix v2 = pre.U1;

    // The leading block of U2* W22 V2 is unitary; -X11* pins the sign
    // pattern of the lower-right corner.
    const Index xrows = r2 - (t1 - ones);
    const Index xcols = t2 - (r1 - ones);
    const DQMatrix d22hat = adjoint(core.U2) * w22 * v2;
    const DQMatrix x11 = d22hat.block(0, 0, xrows, xcols);
    DQMatrix fix = DQMatrix::Identity(t2);
    fix.set_block(0, 0, -adjoint(x11));
    v2 = v2 * fix;

    CSFactorization f;
    f.blocks = core.blocks;
    f.blocks.t2 = t2;
    f.C = std::move(core.C);
    f.S = std::move(core.S);
    f.Sigma = std::move(core.Sigma);
    f.D = std::move(core.D);

    // Assemble the canonical middle from the taxonomy.
    const Index z1 = r1 - ones - l - ti;  // zero rows of D11
    DQMatrix mid(n, n);
    mid.set_block(0, 0, core.D11);
    mid.set_block(r1, 0, core.D21);
    // D12: Sigma eps | 0 | S | I | I along its class bands.
    for (Index i = 0; i < r; ++i)
        mid(i, t1 + i) = DualQuaternion(DualNumber(0.0, f.Sigma[static_cast<size_t>(i)]));
    const Index c12 = t1 + xcols;  // first column of the Theta band on the right half
    for (Index i = 0; i < l; ++i) mid(ones + i, c12 + i) = DualQuaternion(f.S[static_cast<size_t>(i)]);
    for (Index i = 0; i < ti + z1; ++i) mid(ones + l + i, c12 + l + i) = DualQuaternion(1.0);
    // D22: -I | -I | -C | -D eps | 0.
    for (Index i = 0; i < xrows; ++i) mid(r1 + i, t1 + i) = DualQuaternion(-1.0);
    for (Index i = 0; i < l; ++i)
        mid(r1 + xrows + i, c12 + i) = DualQuaternion(-f.C[static_cast<size_t>(i)]);
    for (Index i = 0; i < ti; ++i)
        mid(r1 + xrows + l + i, c12 + l + i) = DualQuaternion(DualNumber(0.0, -f.D[static_cast<size_t>(i)]));

    f.U1 = std::move(core.U1);
    f.U2 = std::move(core.U2);
    f.V1 = std::move(core.V1);
    f.V2 = std::move(v2);
    f.middle = std::move(mid);
    return f;
}

}  // namespace dqmat
