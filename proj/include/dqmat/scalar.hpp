#pragma once

// Scalar arithmetic for dual numbers, quaternions and dual quaternions.
// A dual number is a + b*eps with eps^2 = 0; a dual quaternion has quaternion
// standard and infinitesimal parts.  Multiplication is noncommutative for
// (dual) quaternions, so every formula below keeps operand order.

#include <cmath>
#include <compare>
#include <ostream>

#include "dqmat/errors.hpp"

namespace dqmat {

struct ToleranceConfig {
    double appreciable_tol = 1e-12;  // threshold on |standard part|
    double rank_tol = 1e-10;         // singular-value cutoff, per dual component
    double residual_tol = 1e-9;      // verification threshold

    void validate() const {
        if (!(appreciable_tol > 0) || !(rank_tol > 0) || !(residual_tol > 0))
            throw Error("tolerances must be strictly positive");
        if (rank_tol < 2.2204460492503131e-16)
            throw Error("rank_tol must be at least machine epsilon");
    }
};

inline constexpr double kDefaultAppreciableTol = 1e-12;

// ---------------------------------------------------------------------------
// Dual numbers

struct DualNumber {
    double st = 0.0;  // standard part
    double in = 0.0;  // coefficient of eps

    constexpr DualNumber() = default;
    constexpr DualNumber(double s, double i = 0.0) : st(s), in(i) {}

    bool appreciable(double tol = kDefaultAppreciableTol) const { return std::abs(st) > tol; }
};

constexpr DualNumber operator+(DualNumber p, DualNumber q) { return {p.st + q.st, p.in + q.in}; }
constexpr DualNumber operator-(DualNumber p, DualNumber q) { return {p.st - q.st, p.in - q.in}; }
constexpr DualNumber operator-(DualNumber q) { return {-q.st, -q.in}; }
// pq = p_st q_st + (p_st q_in + p_in q_st) eps; the eps^2 term drops.
constexpr DualNumber operator*(DualNumber p, DualNumber q) {
    return {p.st * q.st, p.st * q.in + p.in * q.st};
}
constexpr DualNumber operator*(double a, DualNumber q) { return {a * q.st, a * q.in}; }
constexpr DualNumber operator*(DualNumber q, double a) { return {a * q.st, a * q.in}; }

constexpr bool operator==(DualNumber p, DualNumber q) { return p.st == q.st && p.in == q.in; }
constexpr bool operator!=(DualNumber p, DualNumber q) { return !(p == q); }

// Total order: lexicographic on (standard, infinitesimal), exact comparisons.
constexpr bool operator<(DualNumber p, DualNumber q) {
    return p.st < q.st || (p.st == q.st && p.in < q.in);
}
constexpr bool operator>(DualNumber p, DualNumber q) { return q < p; }
constexpr bool operator<=(DualNumber p, DualNumber q) { return !(q < p); }
constexpr bool operator>=(DualNumber p, DualNumber q) { return !(p < q); }

inline int compare(DualNumber p, DualNumber q) {
    if (p < q) return -1;
    if (q < p) return 1;
    return 0;
}

// Tolerance-based equality used when grouping repeated singular values.
inline bool numerically_equal(DualNumber p, DualNumber q, double tol) {
    return std::abs(p.st - q.st) <= tol && std::abs(p.in - q.in) <= tol;
}

inline DualNumber inverse(DualNumber q, double tol = kDefaultAppreciableTol) {
    if (!q.appreciable(tol)) throw NotAppreciableError("dual number has no inverse: standard part vanishes");
    return {1.0 / q.st, -(q.in / q.st) / q.st};
}

inline DualNumber sqrt(DualNumber q, double tol = kDefaultAppreciableTol) {
    if (q.st < 0.0 || (std::abs(q.st) <= tol && q.in < 0.0))
        throw NegativeError("dual number square root of a negative value");
    if (std::abs(q.st) <= tol)
        throw NotAppreciableError("dual number square root undefined for infinitesimal input");
    const double r = std::sqrt(q.st);
    return {r, q.in / (2.0 * r)};
}

// |q| with the standard sign convention; it is the one that keeps
// |q| >= q and |q| = sqrt(q^2) for appreciable q.
inline DualNumber abs(DualNumber q) {
    if (q.st != 0.0) {
        const double sgn = q.st > 0.0 ? 1.0 : -1.0;
        return {std::abs(q.st), sgn * q.in};
    }
    return {0.0, std::abs(q.in)};
}

inline std::ostream& operator<<(std::ostream& os, DualNumber q) {
    return os << q.st << (q.in < 0 ? " - " : " + ") << std::abs(q.in) << "*eps";
}

// ---------------------------------------------------------------------------
// Quaternions

struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }
};

constexpr Quaternion operator+(Quaternion p, Quaternion q) {
    return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
}
constexpr Quaternion operator-(Quaternion p, Quaternion q) {
    return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
}
constexpr Quaternion operator-(Quaternion q) { return {-q.w, -q.x, -q.y, -q.z}; }
constexpr Quaternion operator*(Quaternion p, Quaternion q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}
constexpr Quaternion operator*(double a, Quaternion q) { return {a * q.w, a * q.x, a * q.y, a * q.z}; }
constexpr Quaternion operator*(Quaternion q, double a) { return a * q; }
constexpr Quaternion& operator+=(Quaternion& p, Quaternion q) { return p = p + q; }
constexpr Quaternion& operator-=(Quaternion& p, Quaternion q) { return p = p - q; }

constexpr bool operator==(Quaternion p, Quaternion q) {
    return p.w == q.w && p.x == q.x && p.y == q.y && p.z == q.z;
}
constexpr bool operator!=(Quaternion p, Quaternion q) { return !(p == q); }

constexpr Quaternion conj(Quaternion q) { return {q.w, -q.x, -q.y, -q.z}; }
inline double norm_sq(Quaternion q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double abs(Quaternion q) { return std::sqrt(norm_sq(q)); }

inline Quaternion unit_phase(Quaternion q) {
    const double a = abs(q);
    if (a == 0.0) return Quaternion(1);
    return (1.0 / a) * q;
}

inline Quaternion inverse(Quaternion q) {
    const double n = norm_sq(q);
    if (n == 0.0) throw NotAppreciableError("quaternion inverse of zero");
    return (1.0 / n) * conj(q);
}

inline std::ostream& operator<<(std::ostream& os, Quaternion q) {
    return os << "(" << q.w << "," << q.x << "," << q.y << "," << q.z << ")";
}

// ---------------------------------------------------------------------------
// Dual quaternions

struct DualQuaternion {
    Quaternion st;  // standard part
    Quaternion in;  // infinitesimal part

    constexpr DualQuaternion() = default;
    constexpr DualQuaternion(Quaternion s, Quaternion i = Quaternion()) : st(s), in(i) {}
    constexpr DualQuaternion(double s) : st(s) {}
    constexpr DualQuaternion(DualNumber d) : st(d.st), in(d.in) {}

    bool appreciable(double tol = kDefaultAppreciableTol) const { return abs(st) > tol; }
};

// q = q_in * eps for a quaternion q_in.
constexpr DualQuaternion eps(Quaternion q_in) { return {Quaternion(), q_in}; }

constexpr DualQuaternion operator+(DualQuaternion p, DualQuaternion q) {
    return {p.st + q.st, p.in + q.in};
}
constexpr DualQuaternion operator-(DualQuaternion p, DualQuaternion q) {
    return {p.st - q.st, p.in - q.in};
}
constexpr DualQuaternion operator-(DualQuaternion q) { return {-q.st, -q.in}; }
constexpr DualQuaternion operator*(DualQuaternion p, DualQuaternion q) {
    return {p.st * q.st, p.st * q.in + p.in * q.st};
}
constexpr DualQuaternion operator*(double a, DualQuaternion q) { return {a * q.st, a * q.in}; }
constexpr DualQuaternion operator*(DualQuaternion q, double a) { return a * q; }
constexpr DualQuaternion operator*(DualQuaternion q, DualNumber d) {
    return q * DualQuaternion(d);
}
constexpr DualQuaternion operator*(DualNumber d, DualQuaternion q) {
    return DualQuaternion(d) * q;
}
constexpr DualQuaternion& operator+=(DualQuaternion& p, DualQuaternion q) { return p = p + q; }
constexpr DualQuaternion& operator-=(DualQuaternion& p, DualQuaternion q) { return p = p - q; }

constexpr bool operator==(DualQuaternion p, DualQuaternion q) { return p.st == q.st && p.in == q.in; }
constexpr bool operator!=(DualQuaternion p, DualQuaternion q) { return !(p == q); }

constexpr DualQuaternion conj(DualQuaternion q) { return {conj(q.st), conj(q.in)}; }

// |q| as a dual number; for infinitesimal q this is |q_in| eps.
inline DualNumber abs(DualQuaternion q, double tol = kDefaultAppreciableTol) {
    const double a = abs(q.st);
    if (a > tol) {
        // sqrt(q q*) with q q* = |q_st|^2 + 2 Re(q_in q_st*) eps
        const double cross = q.st.w * q.in.w + q.st.x * q.in.x + q.st.y * q.in.y + q.st.z * q.in.z;
        return {a, cross / a};
    }
    return {0.0, abs(q.in)};
}

inline DualQuaternion inverse(DualQuaternion q, double tol = kDefaultAppreciableTol) {
    if (!q.appreciable(tol)) throw NotAppreciableError("dual quaternion inverse needs an appreciable standard part");
    const Quaternion s = inverse(q.st);
    return {s, -(s * q.in * s)};
}

// q / |q| for appreciable q; otherwise the unit phase of the infinitesimal
// part (the identity for q = 0).  Always a unit dual quaternion.
inline DualQuaternion unit_phase(DualQuaternion q, double tol = kDefaultAppreciableTol) {
    if (q.appreciable(tol)) {
        DualNumber a = abs(q, tol);
        return q * inverse(a, tol);
    }
    return DualQuaternion(unit_phase(q.in));
}

inline double max_component(DualQuaternion q) {
    return std::max(abs(q.st), abs(q.in));
}

inline std::ostream& operator<<(std::ostream& os, DualQuaternion q) {
    return os << q.st << " + " << q.in << "*eps";
}

}  // namespace dqmat
