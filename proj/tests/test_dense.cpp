#include <doctest.h>

#include "dqmat/svd.hpp"
#include "test_support.hpp"

using namespace dqtest;

TEST_SUITE_BEGIN("dense");

TEST_CASE("matmul identity and eps grading") {
    Rng rng(201);
    const DQMatrix a = rng.matrix(3, 4);
    CHECK(recon_error(a * DQMatrix::Identity(4), a) == 0.0);

    const DQMatrix ain = eps_times(rng.quat_matrix(3, 3));
    const DQMatrix bin = eps_times(rng.quat_matrix(3, 3));
    CHECK(max_abs(ain * bin) == 0.0);
}

TEST_CASE("matmul reconstructs the first worked example") {
    const DQMatrix lhs = example1_U() * example1_SigmaA_full() * example1_X();
    CHECK(recon_error(lhs, example1_A()) <= 1e-15);
    const DQMatrix rhs = example1_V() * example1_SigmaB_full() * example1_X();
    CHECK(recon_error(rhs, example1_B()) <= 1e-15);
}

TEST_CASE("matmul dimension mismatch") {
    Rng rng(202);
    CHECK_THROWS_AS(rng.matrix(2, 3) * rng.matrix(4, 2), DimensionMismatchError);
}

TEST_CASE("adjoint involution and anti-homomorphism") {
    Rng rng(203);
    const DQMatrix a = rng.matrix(4, 3), b = rng.matrix(3, 5);
    CHECK(recon_error(adjoint(adjoint(a)), a) == 0.0);
    CHECK(recon_error(adjoint(a * b), adjoint(b) * adjoint(a)) <= 1e-14);
    CHECK(recon_error(adjoint(DQMatrix::Identity(4)), DQMatrix::Identity(4)) == 0.0);

    const HouseholderStep h = householder_annihilate(rng.matrix(4, 1));
    const DQMatrix hm = h.H.as_matrix();
    CHECK(recon_error(adjoint(hm), hm) <= 1e-15);
}

TEST_CASE("matmul associativity") {
    Rng rng(204);
    for (int it = 0; it < 20; ++it) {
        const DQMatrix a = rng.matrix(3, 4), b = rng.matrix(4, 2), c = rng.matrix(2, 5);
        CHECK(recon_error((a * b) * c, a * (b * c)) <= 1e-13);
    }
}

TEST_CASE("inner product") {
    DQMatrix e1(3, 1), e2(3, 1);
    e1(0, 0) = dq(1);
    e2(1, 0) = dq(1);
    CHECK(max_component(inner_product(e1, e2)) == 0.0);

    DQMatrix u(2, 1);
    u(0, 0) = dq(1);
    u(1, 0) = dqe(qk());
    CHECK(max_component(inner_product(u, u) - DualQuaternion(1.0)) == 0.0);

    // Two infinitesimal vectors are weakly orthogonal regardless of content.
    Rng rng(205);
    const DQMatrix v1 = eps_times(rng.quat_matrix(4, 1));
    const DQMatrix v2 = eps_times(rng.quat_matrix(4, 1));
    CHECK(max_component(inner_product(v1, v2)) == 0.0);
}

TEST_CASE("infinitesimal orthogonality forces quaternion orthogonality") {
    // <u, v> = 0 with u infinitesimal implies v_st* u_in = 0.
    Rng rng(206);
    for (int it = 0; it < 50; ++it) {
        DQMatrix v = rng.matrix(4, 1);
        QMatrix uin = rng.quat_matrix(4, 1);
        // project u_in against v_st to enforce <u, v> = 0 at the standard level
        Quaternion coupling;
        double vnorm = 0;
        for (Index i = 0; i < 4; ++i) {
            coupling += conj(v(i, 0).st) * uin(i, 0);
            vnorm += norm_sq(v(i, 0).st);
        }
        for (Index i = 0; i < 4; ++i) uin(i, 0) -= v(i, 0).st * ((1.0 / vnorm) * coupling);
        const DQMatrix u = eps_times(uin);
        CHECK(max_component(inner_product(u, v)) <= 1e-14);
        Quaternion check;
        for (Index i = 0; i < 4; ++i) check += conj(v(i, 0).st) * uin(i, 0);
        CHECK(abs(check) <= 1e-14);
    }
}

TEST_CASE("vector norm") {
    DQMatrix e1(3, 1);
    e1(0, 0) = dq(1);
    CHECK(norm2(e1) == DualNumber(1, 0));

    // First column of the worked example: norm sqrt(1/2 + sqrt(2) eps).
    DQMatrix u(3, 1);
    u(0, 0) = DualQuaternion(Quaternion(kS2), Quaternion(1));
    u(1, 0) = dqe(kS2 * qk());
    const DualNumber n = norm2(u);
    CHECK(n.st == doctest::Approx(kS2));
    CHECK(n.in == doctest::Approx(1.0));

    DQMatrix inf(2, 1);
    inf(0, 0) = dqe(1);
    CHECK(norm2(inf) == DualNumber(0, 1));
}

TEST_CASE("unitarity predicate") {
    ToleranceConfig tol;
    CHECK(is_unitary(DQMatrix::Identity(4), tol));
    CHECK(is_unitary(example1_P(), tol));
    DQMatrix two = DQMatrix::Identity(2);
    two(0, 0) = dq(2);
    CHECK_FALSE(is_unitary(two, tol));
    Rng rng(207);
    CHECK_THROWS_AS(is_unitary(rng.matrix(2, 3), tol), NotSquareError);
}

TEST_CASE("rank and appreciable rank") {
    ToleranceConfig tol;
    const RankInfo zero = rank_and_arank(DQMatrix(3, 3), tol);
    CHECK(zero.rank == 0);
    CHECK(zero.arank == 0);

    const RankInfo e1 = rank_and_arank(vstack(example1_A(), example1_B()), tol);
    CHECK(e1.rank == 3);
    CHECK(e1.arank == 2);

    const RankInfo e2 = rank_and_arank(vstack(example2_A(), example2_B()), tol);
    CHECK(e2.rank == 5);
    CHECK(e2.arank == 3);
}

TEST_SUITE_END();
