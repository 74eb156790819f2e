#include "dqmat/quat_linalg.hpp"

#include <algorithm>
#include <cmath>

namespace dqmat {

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kJacobiEps = 1e-15;

double col_norm_sq(const QMatrix& a, Index j) {
    double s = 0.0;
    for (Index i = 0; i < a.rows(); ++i) s += norm_sq(a(i, j));
    return s;
}

Quaternion col_dot(const QMatrix& a, Index p, Index q) {
    Quaternion s;
    for (Index i = 0; i < a.rows(); ++i) s += conj(a(i, p)) * a(i, q);
    return s;
}

// 2x2 rotation diagonalizing [[app, g],[g, aqq]] with g = |apq| after the
// phase diag(1, w*) has made the coupling real.
struct JacobiRot {
    double c, s;
    Quaternion w;  // unit phase of the coupling
};

JacobiRot make_rotation(double app, double aqq, Quaternion apq) {
    JacobiRot r;
    const double g = abs(apq);
    r.w = (1.0 / g) * apq;
    const double zeta = (aqq - app) / (2.0 * g);
    const double t = (zeta >= 0 ? -1.0 : 1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = r.c * t;
    return r;
}

// Right-multiplies columns (p,q) of a by [[c, -s],[w* s, w* c]].
void apply_right(QMatrix& a, Index p, Index q, const JacobiRot& r) {
    const Quaternion wc = conj(r.w);
    for (Index i = 0; i < a.rows(); ++i) {
        const Quaternion ap = a(i, p), aq = a(i, q);
        a(i, p) = ap * r.c + aq * (wc * r.s);
        a(i, q) = -(ap * r.s) + aq * (wc * r.c);
    }
}

// SVD of a tall (m >= n) quaternion matrix by one-sided Jacobi on columns.
// The input is scaled to unit magnitude first; columns that fall below the
// numerical-zero floor are left alone, which keeps the Gram quantities out
// of the denormal range where phases would overflow.
QSVD jacobi_svd_tall(QMatrix w) {
    const Index m = w.rows(), n = w.cols();
    QMatrix v = QMatrix::Identity(n);

    double scale = 0.0;
    for (Index j = 0; j < n; ++j) scale = std::max(scale, col_norm_sq(w, j));
    scale = std::sqrt(scale);
    if (scale > 0.0) {
        const double inv = 1.0 / scale;
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < n; ++j) w(i, j) = inv * w(i, j);
    }
    constexpr double kZeroFloorSq = 1e-36;  // columns below 1e-18 are zero

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        bool rotated = false;
        for (Index p = 0; p + 1 < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double app = col_norm_sq(w, p);
                const double aqq = col_norm_sq(w, q);
                if (app <= kZeroFloorSq || aqq <= kZeroFloorSq) continue;
                const Quaternion apq = col_dot(w, p, q);
                if (abs(apq) <= kJacobiEps * std::sqrt(app) * std::sqrt(aqq) || abs(apq) == 0.0)
                    continue;
                rotated = true;
                const JacobiRot r = make_rotation(app, aqq, apq);
                apply_right(w, p, q, r);
                apply_right(v, p, q, r);
            }
        }
        converged = !rotated;
    }
    if (!converged && n > 1) throw ConvergenceError("quaternion svd: sweep cap exceeded");

    std::vector<double> sigma(static_cast<size_t>(n));
    for (Index j = 0; j < n; ++j) sigma[static_cast<size_t>(j)] = scale * std::sqrt(col_norm_sq(w, j));

    // Selection sort, carried along on the columns of w and v.
    for (Index p = 0; p < n; ++p) {
        Index best = p;
        for (Index q = p + 1; q < n; ++q)
            if (sigma[static_cast<size_t>(q)] > sigma[static_cast<size_t>(best)]) best = q;
        if (best != p) {
            std::swap(sigma[static_cast<size_t>(p)], sigma[static_cast<size_t>(best)]);
            w.swap_cols(p, best);
            v.swap_cols(p, best);
        }
    }

    const double smax = sigma.empty() ? 0.0 : sigma[0];
    const double cutoff = std::max(static_cast<double>(std::max(m, n)), 1.0) * 1e-15 * std::max(smax, 1e-300);

    QMatrix good(m, 0);
    {
        Index ngood = 0;
        while (ngood < n && sigma[static_cast<size_t>(ngood)] > cutoff) ++ngood;
        good = QMatrix(m, ngood);
        for (Index j = 0; j < ngood; ++j) {
            // w still carries the 1/scale normalization.
            const double inv = scale / sigma[static_cast<size_t>(j)];
            for (Index i = 0; i < m; ++i) good(i, j) = w(i, j) * inv;
        }
    }
    QMatrix u = quat_unitary_completion(good, m);

    QSVD out;
    out.U = std::move(u);
    out.V = std::move(v);
    out.sigma = std::move(sigma);
    return out;
}

void normalize_phases(QSVD& f) {
    const Index m = f.U.rows(), n = f.V.rows();
    const Index nsv = static_cast<Index>(f.sigma.size());
    for (Index j = 0; j < m; ++j) {
        Index lead = -1;
        for (Index i = 0; i < m; ++i)
            if (abs(f.U(i, j)) > 1e-12) {
                lead = i;
                break;
            }
        if (lead < 0) continue;
        const Quaternion ph = unit_phase(conj(f.U(lead, j)));
        for (Index i = 0; i < m; ++i) f.U(i, j) = f.U(i, j) * ph;
        if (j < nsv && j < n)
            for (Index i = 0; i < n; ++i) f.V(i, j) = f.V(i, j) * ph;
    }
    for (Index j = std::min(nsv, n); j < n; ++j) {
        Index lead = -1;
        for (Index i = 0; i < n; ++i)
            if (abs(f.V(i, j)) > 1e-12) {
                lead = i;
                break;
            }
        if (lead < 0) continue;
        const Quaternion ph = unit_phase(conj(f.V(lead, j)));
        for (Index i = 0; i < n; ++i) f.V(i, j) = f.V(i, j) * ph;
    }
}

}  // namespace

QMatrix quat_unitary_completion(const QMatrix& q, Index m) {
    QMatrix out(m, m);
    out.set_block(0, 0, q);
    Index filled = q.cols();
    // Two rounds of Gram-Schmidt against everything accepted so far, seeded
    // with identity columns.
    for (Index seed = 0; seed < m && filled < m; ++seed) {
        QMatrix v(m, 1);
        v(seed, 0) = Quaternion(1);
        double nrm = 0.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (Index j = 0; j < filled; ++j) {
                Quaternion proj;
                for (Index i = 0; i < m; ++i) proj += conj(out(i, j)) * v(i, 0);
                for (Index i = 0; i < m; ++i) v(i, 0) -= out(i, j) * proj;
            }
            nrm = 0.0;
            for (Index i = 0; i < m; ++i) nrm += norm_sq(v(i, 0));
            nrm = std::sqrt(nrm);
        }
        if (nrm < 0.1) continue;  // seed (numerically) inside the current span
        const double inv = 1.0 / nrm;
        for (Index i = 0; i < m; ++i) out(i, filled) = v(i, 0) * inv;
        ++filled;
    }
    if (filled != m) throw ConvergenceError("unitary completion failed to span the complement");
    return out;
}

QSVD quat_svd(const QMatrix& a) {
    const Index m = a.rows(), n = a.cols();
    if (n == 0 || m == 0) {
        QSVD out;
        out.U = QMatrix::Identity(m);
        out.V = QMatrix::Identity(n);
        return out;
    }
    QSVD f;
    if (m >= n) {
        f = jacobi_svd_tall(a);
    } else {
        QSVD t = jacobi_svd_tall(adjoint(a));
        f.U = std::move(t.V);
        f.V = std::move(t.U);
        f.sigma = std::move(t.sigma);
    }
    normalize_phases(f);
    return f;
}

HermEig hermitian_eigen(const QMatrix& h) {
    const Index n = h.rows();
    if (h.cols() != n) throw NotSquareError("hermitian_eigen expects a square matrix");
    QMatrix w = h;
    QMatrix z = QMatrix::Identity(n);

    double scale = max_abs(w);
    if (scale > 0.0) w = (1.0 / scale) * w;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) (i == j ? diag : off) += norm_sq(w(i, j));
        if (off <= 1e-30 * std::max(diag, 1e-300)) {
            converged = true;
            break;
        }
        for (Index p = 0; p + 1 < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const Quaternion apq = w(p, q);
                if (abs(apq) <= 1e-30) continue;  // numerically zero post-normalization
                const double local = std::sqrt(std::abs(w(p, p).w * w(q, q).w)) + abs(apq);
                if (abs(apq) <= kJacobiEps * local) continue;
                const JacobiRot r = make_rotation(w(p, p).w, w(q, q).w, apq);
                // w <- J* w J with J embedding [[c,-s],[w* s, w* c]] at (p,q)
                apply_right(w, p, q, r);
                for (Index j = 0; j < n; ++j) {
                    const Quaternion wp = w(p, j), wq = w(q, j);
                    w(p, j) = r.c * wp + (r.s * r.w) * wq;
                    w(q, j) = -(r.s * wp) + (r.c * r.w) * wq;
                }
                apply_right(z, p, q, r);
            }
        }
    }

    if (!converged) {
        double off = 0.0, diag = 0.0;
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) (i == j ? diag : off) += norm_sq(w(i, j));
        if (off > 1e-24 * std::max(diag, 1e-300))
            throw ConvergenceError("hermitian eigensolver: sweep cap exceeded");
    }

    HermEig out;
    out.lambda.resize(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) out.lambda[static_cast<size_t>(i)] = scale * w(i, i).w;
    out.Z = std::move(z);
    for (Index p = 0; p < n; ++p) {
        Index best = p;
        for (Index q = p + 1; q < n; ++q)
            if (out.lambda[static_cast<size_t>(q)] > out.lambda[static_cast<size_t>(best)]) best = q;
        if (best != p) {
            std::swap(out.lambda[static_cast<size_t>(p)], out.lambda[static_cast<size_t>(best)]);
            out.Z.swap_cols(p, best);
        }
    }
    return out;
}

}  // namespace dqmat
