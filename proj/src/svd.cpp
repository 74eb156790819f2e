#include "dqmat/svd.hpp"

#include <algorithm>

namespace dqmat {

namespace {

// In-place right-multiplication of the columns [j0, j0+k) of m by the k x k
// quaternion matrix z.
void rotate_cols(QMatrix& m, Index j0, const QMatrix& z) {
    const Index k = z.rows();
    QMatrix tmp(m.rows(), k);
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < k; ++j) {
            Quaternion acc;
            for (Index l = 0; l < k; ++l) acc += m(i, j0 + l) * z(l, j);
            tmp(i, j) = acc;
        }
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < k; ++j) m(i, j0 + j) = tmp(i, j);
}

void rotate_rows_adj(QMatrix& m, Index i0, const QMatrix& z) {
    const Index k = z.rows();
    QMatrix tmp(k, m.cols());
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < m.cols(); ++j) {
            Quaternion acc;
            for (Index l = 0; l < k; ++l) acc += conj(z(l, i)) * m(i0 + l, j);
            tmp(i, j) = acc;
        }
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i0 + i, j) = tmp(i, j);
}

}  // namespace

// The standard part is factored by the quaternion SVD; the infinitesimal
// part is then diagonalized exactly at the eps level.  Within a group of
// equal standard singular values the Hermitian part of the coupling block
// carries the infinitesimal parts of the singular values, and remaining
// couplings are absorbed into anti-Hermitian first-order corrections
// U = U0 (I + K eps), V = V0 (I + L eps).  Because eps^2 = 0 these
// corrections are exact, not approximate.
DQSVDFactorization dqsvd(const DQMatrix& a, const ToleranceConfig& tol) {
    const Index m = a.rows(), n = a.cols();
    const Index nsv = std::min(m, n);

    QSVD s0 = quat_svd(standard_part(a));
    QMatrix u0 = std::move(s0.U);
    QMatrix v0 = std::move(s0.V);
    std::vector<double> sig = std::move(s0.sigma);

    QMatrix b = adjoint(u0) * infinitesimal_part(a) * v0;  // m x n

    // Appreciable block and its grouping by equal standard singular values.
    Index t0 = 0;
    while (t0 < nsv && sig[static_cast<size_t>(t0)] > tol.rank_tol) ++t0;

    std::vector<double> lambda(static_cast<size_t>(t0), 0.0);
    Index g0 = 0;
    while (g0 < t0) {
        Index g1 = g0 + 1;
        while (g1 < t0 && sig[static_cast<size_t>(g1 - 1)] - sig[static_cast<size_t>(g1)] <= tol.rank_tol) ++g1;
        const Index len = g1 - g0;
        QMatrix bg(len, len);
        for (Index i = 0; i < len; ++i)
            for (Index j = 0; j < len; ++j) bg(i, j) = b(g0 + i, g0 + j);
        QMatrix herm(len, len);
        for (Index i = 0; i < len; ++i)
            for (Index j = 0; j < len; ++j) herm(i, j) = 0.5 * (bg(i, j) + conj(bg(j, i)));
        HermEig eig = hermitian_eigen(herm);
        for (Index i = 0; i < len; ++i) lambda[static_cast<size_t>(g0 + i)] = eig.lambda[static_cast<size_t>(i)];
        rotate_cols(u0, g0, eig.Z);
        rotate_cols(v0, g0, eig.Z);
        rotate_cols(b, g0, eig.Z);
        rotate_rows_adj(b, g0, eig.Z);
        g0 = g1;
    }

    // Zero block: its coupling matrix holds the purely infinitesimal
    // singular values.
    std::vector<double> inf_vals;
    if (t0 < m && t0 < n) {
        QMatrix bz = b.block(t0, t0, m - t0, n - t0);
        QSVD zf = quat_svd(bz);
        inf_vals = zf.sigma;
        rotate_cols(u0, t0, zf.U);
        rotate_cols(v0, t0, zf.V);
        rotate_cols(b, t0, zf.V);
        rotate_rows_adj(b, t0, zf.U);
    }

    // Anti-Hermitian corrections K (m x m) and L (n x n) chosen so that
    // U* A V is exactly diagonal at the eps level.
    QMatrix K(m, m), L(n, n);
    auto group_of = [&](Index i) {
        // Groups were consumed in order; recompute the group id by scanning.
        Index g = 0, start = 0;
        while (start < t0) {
            Index end = start + 1;
            while (end < t0 && sig[static_cast<size_t>(end - 1)] - sig[static_cast<size_t>(end)] <= tol.rank_tol) ++end;
            if (i >= start && i < end) return g;
            start = end;
            ++g;
        }
        return Index(-1);
    };

    // (i, j) runs over the equation grid K(i,j) sig_j - sig_i L(i,j) = B(i,j) - diag.
    for (Index i = 0; i < m; ++i) {
        const double si = (i < t0) ? sig[static_cast<size_t>(i)] : 0.0;
        const Index gi = (i < t0) ? group_of(i) : Index(-1);
        for (Index j = 0; j < n; ++j) {
            const double sj = (j < t0) ? sig[static_cast<size_t>(j)] : 0.0;
            const Index gj = (j < t0) ? group_of(j) : Index(-1);
            const Quaternion bij = b(i, j);
            if (i < t0 && j < t0) {
                if (gi == gj) {
                    if (i <= j) {
                        Quaternion rhs = bij;
                        if (i == j) rhs = rhs - Quaternion(lambda[static_cast<size_t>(i)]);
                        const Quaternion kk = (1.0 / (2.0 * si)) * rhs;
                        K(i, j) = kk;
                        L(i, j) = -kk;
                        if (i != j) {
                            K(j, i) = -conj(kk);
                            L(j, i) = conj(kk);
                        }
                    }
                } else {
                    if (i < j) {
                        const Quaternion bji = b(j, i);
                        const double det = sj * sj - si * si;
                        K(i, j) = (1.0 / det) * (sj * bij + si * conj(bji));
                        L(i, j) = (1.0 / det) * (si * bij + sj * conj(bji));
                        K(j, i) = -conj(K(i, j));
                        L(j, i) = -conj(L(i, j));
                    }
                }
            } else if (i < t0 && j >= t0) {
                // sig_j = 0: L(i,j) = -B(i,j)/sig_i, mirrored into L(j,i).
                L(i, j) = (-1.0 / si) * bij;
                L(j, i) = -conj(L(i, j));
            } else if (i >= t0 && j < t0) {
                // sig_i = 0: K(i,j) = B(i,j)/sig_j (note K is m x m; the
                // mirror lives at (j,i) which is only touched here).
                K(i, j) = (1.0 / sj) * bij;
                K(j, i) = -conj(K(i, j));
            }
            // i, j both in the zero block: handled by the block SVD above.
        }
    }

    DQSVDFactorization f;
    f.U = from_parts(u0, u0 * K);
    f.V = from_parts(v0, v0 * L);
    f.sigma.resize(static_cast<size_t>(nsv));
    for (Index i = 0; i < t0; ++i)
        f.sigma[static_cast<size_t>(i)] = DualNumber(sig[static_cast<size_t>(i)], lambda[static_cast<size_t>(i)]);
    for (Index i = t0; i < nsv; ++i) {
        const size_t zi = static_cast<size_t>(i - t0);
        const double v = zi < inf_vals.size() ? inf_vals[zi] : 0.0;
        f.sigma[static_cast<size_t>(i)] = DualNumber(0.0, v > tol.rank_tol ? v : 0.0);
    }
    f.arank = t0;
    f.rank = t0;
    for (Index i = t0; i < nsv; ++i)
        if (f.sigma[static_cast<size_t>(i)].in > 0.0) ++f.rank;
    return f;
}

RankInfo rank_and_arank(const DQMatrix& a, const ToleranceConfig& tol) {
    const DQSVDFactorization f = dqsvd(a, tol);
    return {f.rank, f.arank};
}

}  // namespace dqmat
