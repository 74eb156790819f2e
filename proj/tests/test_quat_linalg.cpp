#include <doctest.h>

#include "dqmat/quat_linalg.hpp"
#include "test_support.hpp"

using namespace dqtest;

TEST_SUITE_BEGIN("quat_linalg");

namespace {

double qsvd_recon_error(const QMatrix& a, const QSVD& f) {
    return max_abs(f.U * f.middle(a.rows(), a.cols()) * adjoint(f.V) - a);
}

double q_unitary_error(const QMatrix& u) {
    const QMatrix id = QMatrix::Identity(u.rows());
    return std::max(max_abs(adjoint(u) * u - id), max_abs(u * adjoint(u) - id));
}

}  // namespace

TEST_CASE("diagonal input") {
    QMatrix a(2, 2);
    a(0, 0) = Quaternion(3);
    a(1, 1) = Quaternion(1);
    const QSVD f = quat_svd(a);
    CHECK(f.sigma[0] == doctest::Approx(3.0));
    CHECK(f.sigma[1] == doctest::Approx(1.0));
    CHECK(qsvd_recon_error(a, f) <= 1e-14);
    CHECK(max_abs(f.U - QMatrix::Identity(2)) <= 1e-14);
    CHECK(max_abs(f.V - QMatrix::Identity(2)) <= 1e-14);
}

TEST_CASE("unit orthogonal columns") {
    QMatrix a(2, 2);
    a(0, 1) = qi();
    a(1, 0) = qj();
    const QSVD f = quat_svd(a);
    CHECK(f.sigma[0] == doctest::Approx(1.0));
    CHECK(f.sigma[1] == doctest::Approx(1.0));
    CHECK(qsvd_recon_error(a, f) <= 1e-14);
}

TEST_CASE("random rectangular, both orientations") {
    Rng rng(301);
    for (auto [m, n] : {std::pair<Index, Index>{4, 3}, {3, 4}, {6, 6}, {1, 5}, {5, 1}}) {
        for (int it = 0; it < 10; ++it) {
            const QMatrix a = rng.quat_matrix(m, n);
            const QSVD f = quat_svd(a);
            CHECK(qsvd_recon_error(a, f) <= 1e-13);
            CHECK(q_unitary_error(f.U) <= 1e-13);
            CHECK(q_unitary_error(f.V) <= 1e-13);
            for (size_t i = 1; i < f.sigma.size(); ++i) CHECK(f.sigma[i] <= f.sigma[i - 1]);
        }
    }
}

TEST_CASE("rank deficient input") {
    Rng rng(302);
    const QMatrix u = rng.quat_matrix(5, 2);
    const QMatrix v = rng.quat_matrix(4, 2);
    const QMatrix a = u * adjoint(v);  // rank <= 2
    const QSVD f = quat_svd(a);
    CHECK(qsvd_recon_error(a, f) <= 1e-12);
    CHECK(q_unitary_error(f.U) <= 1e-13);
    CHECK(f.sigma[2] <= 1e-12);
    CHECK(f.sigma[3] <= 1e-12);
}

TEST_CASE("singular values match the complex adjoint, pairs collapsed") {
    Rng rng(303);
    for (int it = 0; it < 10; ++it) {
        const QMatrix a = rng.quat_matrix(4, 3);
        const QSVD f = quat_svd(a);
        const std::vector<double> doubled = adjoint_singular_values(a);
        REQUIRE(doubled.size() == 2 * f.sigma.size());
        for (size_t i = 0; i < f.sigma.size(); ++i) {
            CHECK(doubled[2 * i] == doctest::Approx(f.sigma[i]).epsilon(1e-10));
            CHECK(doubled[2 * i + 1] == doctest::Approx(f.sigma[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("hermitian eigendecomposition") {
    Rng rng(304);
    for (int it = 0; it < 20; ++it) {
        const Index n = 2 + static_cast<Index>(it % 5);
        QMatrix h(n, n);
        for (Index i = 0; i < n; ++i) {
            for (Index j = i + 1; j < n; ++j) {
                const Quaternion q = rng.quat();
                h(i, j) = q;
                h(j, i) = conj(q);
            }
            h(i, i) = Quaternion(rng.real());
        }
        const HermEig e = hermitian_eigen(h);
        QMatrix lam(n, n);
        for (Index i = 0; i < n; ++i) lam(i, i) = Quaternion(e.lambda[static_cast<size_t>(i)]);
        CHECK(max_abs(e.Z * lam * adjoint(e.Z) - h) <= 1e-13);
        CHECK(q_unitary_error(e.Z) <= 1e-13);
        for (size_t i = 1; i < e.lambda.size(); ++i) CHECK(e.lambda[i] <= e.lambda[i - 1]);
    }
}

TEST_SUITE_END();
