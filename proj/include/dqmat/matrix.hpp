#pragma once

// Dense row-major matrices templated on the scalar ring.  The two
// instantiations used throughout are Matrix<Quaternion> and
// Matrix<DualQuaternion>.  Products keep operand order; nothing here assumes
// commutative scalars.

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "dqmat/scalar.hpp"

namespace dqmat {

using Index = std::ptrdiff_t;

template <typename Scalar>
class Matrix {
  public:
    Matrix() = default;
    Matrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols)) {
        assert(rows >= 0 && cols >= 0);
    }
    Matrix(Index rows, Index cols, std::initializer_list<Scalar> entries) : Matrix(rows, cols) {
        assert(static_cast<Index>(entries.size()) == rows * cols);
        Index idx = 0;
        for (const Scalar& s : entries) data_[static_cast<size_t>(idx++)] = s;
    }

    static Matrix Zero(Index rows, Index cols) { return Matrix(rows, cols); }
    static Matrix Identity(Index n) {
        Matrix m(n, n);
        for (Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index size() const { return rows_ * cols_; }

    Scalar& operator()(Index i, Index j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<size_t>(i * cols_ + j)];
    }
    const Scalar& operator()(Index i, Index j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<size_t>(i * cols_ + j)];
    }

    Matrix block(Index i0, Index j0, Index r, Index c) const {
        assert(i0 >= 0 && j0 >= 0 && i0 + r <= rows_ && j0 + c <= cols_);
        Matrix out(r, c);
        for (Index i = 0; i < r; ++i)
            for (Index j = 0; j < c; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
        return out;
    }
    void set_block(Index i0, Index j0, const Matrix& m) {
        assert(i0 + m.rows() <= rows_ && j0 + m.cols() <= cols_);
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j) (*this)(i0 + i, j0 + j) = m(i, j);
    }
    Matrix col(Index j) const { return block(0, j, rows_, 1); }
    Matrix row(Index i) const { return block(i, 0, 1, cols_); }
    void set_col(Index j, const Matrix& v) { set_block(0, j, v); }

    void swap_cols(Index a, Index b) {
        for (Index i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

  private:
    Index rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

using QMatrix = Matrix<Quaternion>;
using DQMatrix = Matrix<DualQuaternion>;
using DQVector = DQMatrix;  // a DQMatrix with one column

template <typename Scalar>
Matrix<Scalar> operator+(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Matrix<Scalar> out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

template <typename Scalar>
Matrix<Scalar> operator-(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Matrix<Scalar> out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

template <typename Scalar>
Matrix<Scalar> operator-(const Matrix<Scalar>& a) {
    Matrix<Scalar> out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(i, j) = -a(i, j);
    return out;
}

template <typename Scalar>
Matrix<Scalar> operator*(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
    if (a.cols() != b.rows()) throw DimensionMismatchError("matrix product: inner dimensions disagree");
    Matrix<Scalar> out(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index k = 0; k < a.cols(); ++k) {
            const Scalar& aik = a(i, k);
            for (Index j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

template <typename Scalar>
Matrix<Scalar> operator*(double s, const Matrix<Scalar>& a) {
    Matrix<Scalar> out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

template <typename Scalar>
Matrix<Scalar> operator*(const Matrix<Scalar>& a, double s) {
    return s * a;
}

// Right-multiply by a scalar of the ring (order matters).
template <typename Scalar>
Matrix<Scalar> operator*(const Matrix<Scalar>& a, const Scalar& s) {
    Matrix<Scalar> out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * s;
    return out;
}

// Conjugate transpose; (AB)* = B* A*.
template <typename Scalar>
Matrix<Scalar> adjoint(const Matrix<Scalar>& a) {
    Matrix<Scalar> out(a.cols(), a.rows());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
    return out;
}

inline QMatrix standard_part(const DQMatrix& a) {
    QMatrix out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).st;
    return out;
}

inline QMatrix infinitesimal_part(const DQMatrix& a) {
    QMatrix out(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).in;
    return out;
}

inline DQMatrix to_dual(const QMatrix& st) {
    DQMatrix out(st.rows(), st.cols());
    for (Index i = 0; i < st.rows(); ++i)
        for (Index j = 0; j < st.cols(); ++j) out(i, j) = DualQuaternion(st(i, j));
    return out;
}

// T*eps as a dual quaternion matrix.
inline DQMatrix eps_times(const QMatrix& in) {
    DQMatrix out(in.rows(), in.cols());
    for (Index i = 0; i < in.rows(); ++i)
        for (Index j = 0; j < in.cols(); ++j) out(i, j) = eps(in(i, j));
    return out;
}

inline DQMatrix from_parts(const QMatrix& st, const QMatrix& in) {
    assert(st.rows() == in.rows() && st.cols() == in.cols());
    DQMatrix out(st.rows(), st.cols());
    for (Index i = 0; i < st.rows(); ++i)
        for (Index j = 0; j < st.cols(); ++j) out(i, j) = DualQuaternion(st(i, j), in(i, j));
    return out;
}

inline double max_abs(const QMatrix& a) {
    double m = 0.0;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) m = std::max(m, abs(a(i, j)));
    return m;
}

inline double max_abs_standard(const DQMatrix& a) {
    double m = 0.0;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) m = std::max(m, abs(a(i, j).st));
    return m;
}

inline double max_abs_infinitesimal(const DQMatrix& a) {
    double m = 0.0;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) m = std::max(m, abs(a(i, j).in));
    return m;
}

// Largest entry magnitude over both dual components.
inline double max_abs(const DQMatrix& a) {
    return std::max(max_abs_standard(a), max_abs_infinitesimal(a));
}

inline bool is_zero(const DQMatrix& a, double tol) { return max_abs(a) <= tol; }

template <typename Scalar>
Matrix<Scalar> hstack(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
    assert(a.rows() == b.rows());
    Matrix<Scalar> out(a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

template <typename Scalar>
Matrix<Scalar> vstack(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
    assert(a.cols() == b.cols());
    Matrix<Scalar> out(a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

template <typename Scalar>
Matrix<Scalar> block_diag(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
    Matrix<Scalar> out(a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

inline DQMatrix diagonal(const std::vector<DualNumber>& d, Index rows, Index cols) {
    DQMatrix out(rows, cols);
    const Index n = std::min<Index>(static_cast<Index>(d.size()), std::min(rows, cols));
    for (Index i = 0; i < n; ++i) out(i, i) = DualQuaternion(d[static_cast<size_t>(i)]);
    return out;
}

inline QMatrix diagonal_real(const std::vector<double>& d, Index rows, Index cols) {
    QMatrix out(rows, cols);
    const Index n = std::min<Index>(static_cast<Index>(d.size()), std::min(rows, cols));
    for (Index i = 0; i < n; ++i) out(i, i) = Quaternion(d[static_cast<size_t>(i)]);
    return out;
}

}  // namespace dqmat
