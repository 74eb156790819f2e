#include "dqmat/householder_qr.hpp"

#include <algorithm>

namespace dqmat {

namespace {

// Applies H = I - 2 v v* to the rows [row0, row0 + v.rows()) of a,
// columns [col0, n).
void reflect_left(DQMatrix& a, const DQMatrix& v, Index row0, Index col0) {
    const Index n = a.cols(), k = v.rows();
    for (Index j = col0; j < n; ++j) {
        DualQuaternion dot;  // v* a(row0:, j)
        for (Index i = 0; i < k; ++i) dot += conj(v(i, 0)) * a(row0 + i, j);
        dot = 2.0 * dot;
        for (Index i = 0; i < k; ++i) a(row0 + i, j) -= v(i, 0) * dot;
    }
}

// Applies H on the right to columns [col0, m) of q: q <- q (I - 2 v v*).
void reflect_right(DQMatrix& q, const DQMatrix& v, Index col0) {
    const Index m = q.rows(), k = v.rows();
    for (Index i = 0; i < m; ++i) {
        DualQuaternion dot;  // q(i, col0:) v
        for (Index j = 0; j < k; ++j) dot += q(i, col0 + j) * v(j, 0);
        dot = 2.0 * dot;
        for (Index j = 0; j < k; ++j) q(i, col0 + j) -= dot * conj(v(j, 0));
    }
}

}  // namespace

HouseholderStep householder_annihilate(const DQMatrix& a, double appreciable_tol) {
    if (a.cols() != 1) throw DimensionMismatchError("householder_annihilate expects a column vector");
    const Index n = a.rows();
    if (n == 0 || is_zero(a, 0.0)) throw ZeroVectorError("householder_annihilate of a zero vector");

    HouseholderStep out;
    out.delta = unit_phase(a(0, 0), appreciable_tol);
    out.norm = norm2(a, appreciable_tol);

    if (vector_appreciable(a, appreciable_tol)) {
        // v = (a + delta ||a|| e1) normalized; the phase choice avoids
        // cancellation in the leading entry.
        DQMatrix v = a;
        v(0, 0) += out.delta * DualQuaternion(out.norm);
        const DualNumber vn = norm2(v, appreciable_tol);
        const DualNumber inv = inverse(vn, appreciable_tol);
        for (Index i = 0; i < n; ++i) v(i, 0) = v(i, 0) * inv;
        out.H.v = std::move(v);
        return out;
    }

    // Infinitesimal vector: reflect at the quaternion level.  With
    // b = -delta ||a_in|| e1 the quaternion Householder of a_in embeds as a
    // dual quaternion Householder sending a to -delta ||a|| e1.
    QMatrix ain = infinitesimal_part(a);
    QMatrix v(n, 1);
    double nrm = 0.0;
    for (Index i = 0; i < n; ++i) nrm += norm_sq(ain(i, 0));
    nrm = std::sqrt(nrm);
    for (Index i = 0; i < n; ++i) v(i, 0) = ain(i, 0);
    v(0, 0) += out.delta.st * nrm;
    double vn = 0.0;
    for (Index i = 0; i < n; ++i) vn += norm_sq(v(i, 0));
    vn = std::sqrt(vn);
    if (vn == 0.0) throw ZeroVectorError("householder_annihilate: degenerate reflector");
    for (Index i = 0; i < n; ++i) v(i, 0) = v(i, 0) * (1.0 / vn);
    out.H.v = to_dual(v);
    return out;
}

QRFactorization qr_pivoted(const DQMatrix& a, const ToleranceConfig& tol) {
    const Index m = a.rows(), n = a.cols();
    if (is_zero(a, tol.rank_tol)) throw ZeroMatrixError("qr_pivoted of a (numerically) zero matrix");

    DQMatrix r = a;
    DQMatrix q = DQMatrix::Identity(m);
    QRFactorization f;
    f.perm.resize(static_cast<size_t>(n));
    for (Index j = 0; j < n; ++j) f.perm[static_cast<size_t>(j)] = j;

    const Index steps = std::min(m, n);
    Index rank = 0, arank = 0;
    for (Index k = 0; k < steps; ++k) {
        // Pivot: trailing column with the largest dual norm under the total
        // order; appreciable norms dominate all infinitesimal ones.
        Index best = k;
        DualNumber best_norm = norm2(r.block(k, k, m - k, 1), tol.appreciable_tol);
        for (Index j = k + 1; j < n; ++j) {
            const DualNumber nj = norm2(r.block(k, j, m - k, 1), tol.appreciable_tol);
            if (nj > best_norm) {
                best = j;
                best_norm = nj;
            }
        }
        if (best_norm.st <= tol.rank_tol && best_norm.in <= tol.rank_tol) break;  // rest is zero
        if (best != k) {
            r.swap_cols(k, best);
            std::swap(f.perm[static_cast<size_t>(k)], f.perm[static_cast<size_t>(best)]);
        }
        ++rank;
        if (best_norm.st > tol.rank_tol) ++arank;
        if (k == m - 1) break;  // single row left, nothing to annihilate

        const HouseholderStep hh = householder_annihilate(r.block(k, k, m - k, 1), tol.appreciable_tol);
        reflect_left(r, hh.H.v, k, k);
        r(k, k) = -(hh.delta * DualQuaternion(hh.norm));
        for (Index i = k + 1; i < m; ++i) r(i, k) = DualQuaternion();
        reflect_right(q, hh.H.v, k);
    }

    f.rank = rank;
    f.arank = arank;
    f.Q = std::move(q);
    f.R = r.block(0, 0, rank, n);
    return f;
}

PlainQR qr(const DQMatrix& a) {
    const Index m = a.rows(), n = a.cols();
    PlainQR f;
    f.R = a;
    f.Q = DQMatrix::Identity(m);
    for (Index k = 0; k + 1 < m && k < n; ++k) {
        const DQMatrix sub = f.R.block(k, k, m - k, 1);
        if (is_zero(sub, 0.0)) continue;
        bool below = false;
        for (Index i = 1; i < m - k; ++i)
            if (max_component(sub(i, 0)) != 0.0) below = true;
        if (!below) continue;
        const HouseholderStep hh = householder_annihilate(sub);
        reflect_left(f.R, hh.H.v, k, k);
        f.R(k, k) = -(hh.delta * DualQuaternion(hh.norm));
        for (Index i = k + 1; i < m; ++i) f.R(i, k) = DualQuaternion();
        reflect_right(f.Q, hh.H.v, k);
    }
    return f;
}

FullRankDecomposition full_rank_decomposition(const DQMatrix& a, const ToleranceConfig& tol) {
    const QRFactorization f = qr_pivoted(a, tol);
    FullRankDecomposition out;
    out.F = f.Q.block(0, 0, a.rows(), f.rank);
    // G = R Pi^T scatters the pivoted columns back to their original places.
    out.G = DQMatrix(f.rank, a.cols());
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < f.rank; ++i) out.G(i, f.perm[static_cast<size_t>(j)]) = f.R(i, j);
    return out;
}

UnitaryDecomposition unitary_decomposition(const DQMatrix& a, const ToleranceConfig& tol) {
    const QRFactorization f = qr_pivoted(a, tol);
    UnitaryDecomposition out;
    out.rank = f.rank;
    out.arank = f.arank;
    out.perm = f.perm;
    out.Q1 = f.Q.block(0, 0, a.rows(), f.rank);
    out.Rtilde = DQMatrix(f.rank, a.cols());
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < f.rank; ++i) out.Rtilde(i, f.perm[static_cast<size_t>(j)]) = f.R(i, j);
    return out;
}

DQMatrix unitary_completion(const DQMatrix& q, Index m) {
    const Index k = q.cols();
    if (k == m) return q;
    if (k > m) throw DimensionMismatchError("unitary_completion: more columns than rows");
    DQMatrix out(m, m);
    out.set_block(0, 0, q);
    Index filled = k;
    for (Index seed = 0; seed < m && filled < m; ++seed) {
        DQMatrix v(m, 1);
        v(seed, 0) = DualQuaternion(1.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (Index j = 0; j < filled; ++j) {
                DualQuaternion proj;
                for (Index i = 0; i < m; ++i) proj += conj(out(i, j)) * v(i, 0);
                for (Index i = 0; i < m; ++i) v(i, 0) -= out(i, j) * proj;
            }
        }
        if (!vector_appreciable(v, 0.1)) continue;
        const DualNumber inv = inverse(norm2(v), kDefaultAppreciableTol);
        for (Index i = 0; i < m; ++i) out(i, filled) = v(i, 0) * inv;
        ++filled;
    }
    if (filled != m) throw ConvergenceError("unitary completion failed to span the complement");
    return out;
}

}  // namespace dqmat
