#include <doctest.h>

#include "dqmat/cs.hpp"
#include "test_support.hpp"

using namespace dqtest;

TEST_SUITE_BEGIN("cs");

namespace {

double cs_recon_error_2x1(const DQMatrix& w, const CSFactorization& f) {
    const DQMatrix lhs = block_diag(adjoint(f.U1), adjoint(f.U2)) * w * f.V1;
    return recon_error(lhs, f.middle);
}

double cs_recon_error_2x2(const DQMatrix& w, const CSFactorization& f) {
    const DQMatrix lhs = block_diag(adjoint(f.U1), adjoint(f.U2)) * w * block_diag(f.V1, f.V2);
    return recon_error(lhs, f.middle);
}

void check_pairs(const CSFactorization& f, double tol = 1e-12) {
    REQUIRE(f.C.size() == f.S.size());
    for (size_t i = 0; i < f.C.size(); ++i) {
        const DualNumber gap = f.C[i] * f.C[i] + f.S[i] * f.S[i] - DualNumber(1.0);
        CHECK(std::abs(gap.st) <= tol);
        CHECK(std::abs(gap.in) <= tol);
        CHECK(f.C[i].st > 0.0);
        CHECK(f.C[i].st < 1.0);
        CHECK(f.S[i].st > 0.0);
        CHECK(f.S[i].st < 1.0);
        if (i > 0) {
            CHECK(f.C[i] <= f.C[i - 1]);
            CHECK(f.S[i] >= f.S[i - 1]);
        }
    }
}

// B1 W of the third worked example, a weakly orthogonal 3 x 3 matrix.
DQMatrix example3_B1W() {
    DQMatrix b1(3, 3);
    b1(0, 0) = dqe(1);
    b1(0, 1) = dqe(kS2 * qj());
    b1(1, 0) = dqe(kS2);
    b1(1, 1) = dq(kS2);
    b1(2, 2) = dq(1);
    DQMatrix w(3, 3);
    w(0, 0) = dq(1);
    w(0, 1) = dqe(1);
    w(1, 0) = dqe(-1);
    w(1, 1) = dq(1);
    w(2, 2) = dq(1);
    return b1 * w;
}

}  // namespace

TEST_CASE("weak orthogonal triangularization, appreciable orthonormal columns") {
    ToleranceConfig tol;
    Rng rng(601);
    const DQMatrix a = rng.unitary(4).block(0, 0, 4, 3);
    const PreCSResult f = weak_orth_triangularize(a, 0, tol);
    CHECK(f.s == 0);
    CHECK(f.t == 3);
    for (const DualNumber& th : f.Theta) {
        CHECK(th.st == doctest::Approx(1.0));
        CHECK(std::abs(th.in) <= 1e-13);
    }
    CHECK(unitary_error(f.U1) <= 1e-13);
}

TEST_CASE("weak orthogonal triangularization, single infinitesimal column") {
    ToleranceConfig tol;
    DQMatrix a(2, 1);
    a(0, 0) = dqe(qk());
    const PreCSResult f = weak_orth_triangularize(a, 1, tol);
    CHECK(f.T.rows() == 2);
    CHECK(f.T.cols() == 1);
    // The column collapses onto the complement basis with coefficient of
    // unit magnitude.
    const double t_norm = std::sqrt(norm_sq(f.T(0, 0)) + norm_sq(f.T(1, 0)));
    CHECK(t_norm == doctest::Approx(1.0));
    const DQMatrix lhs = adjoint(f.U1) * a;
    CHECK(max_component(lhs(0, 0) - eps(f.T(0, 0))) <= 1e-14);
    CHECK(max_component(lhs(1, 0) - eps(f.T(1, 0))) <= 1e-14);
}

TEST_CASE("weak orthogonal triangularization of the third example's inner matrix") {
    ToleranceConfig tol;
    const DQMatrix b1w = example3_B1W();
    const PreCSResult f = weak_orth_triangularize(b1w, 1, tol);
    REQUIRE(f.t == 2);
    CHECK(f.Theta[0].st == doctest::Approx(kS2));
    CHECK(std::abs(f.Theta[0].in) <= 1e-14);
    CHECK(f.Theta[1].st == doctest::Approx(1.0));
    CHECK(std::abs(f.Theta[1].in) <= 1e-14);
    REQUIRE(f.T.rows() == 1);
    CHECK(abs(f.T(0, 0)) == doctest::Approx(1.0));

    // U1* A has the [[T eps, 0],[0, Theta]] shape.
    const DQMatrix lhs = adjoint(f.U1) * b1w;
    CHECK(max_component(lhs(0, 0) - eps(f.T(0, 0))) <= 1e-14);
    CHECK(max_component(lhs(1, 1) - DualQuaternion(DualNumber(kS2))) <= 1e-14);
    CHECK(max_component(lhs(2, 2) - DualQuaternion(1.0)) <= 1e-14);
    CHECK(max_component(lhs(1, 0)) <= 1e-14);
    CHECK(max_component(lhs(2, 0)) <= 1e-14);
}

TEST_CASE("weak orthogonal triangularization rejects bad input") {
    ToleranceConfig tol;
    Rng rng(602);
    CHECK_THROWS_AS(weak_orth_triangularize(rng.matrix(4, 3), 1, tol), PreconditionError);
}

TEST_CASE("2x1 decomposition of a coordinate isometry") {
    ToleranceConfig tol;
    DQMatrix w(5, 2);
    w(0, 0) = dq(1);
    w(1, 1) = dq(1);
    const CSFactorization f = cs_decompose_2x1(w, 2, tol);
    CHECK(cs_recon_error_2x1(w, f) <= 1e-13);
    CHECK(f.blocks.ones_coupled == 0);
    CHECK(f.blocks.ones_plain == 2);
    CHECK(f.blocks.mid == 0);
}

TEST_CASE("2x1 decomposition of the first example's stacked factor") {
    ToleranceConfig tol;
    const DQMatrix p = example1_P();
    const DQMatrix w = p.block(0, 0, 6, 3);
    const CSFactorization f = cs_decompose_2x1(w, 3, tol);
    CHECK(cs_recon_error_2x1(w, f) <= 1e-12);
    CHECK(unitary_error(f.U1) <= 1e-12);
    CHECK(unitary_error(f.U2) <= 1e-12);
    CHECK(unitary_error(f.V1) <= 1e-12);

    // Middle blocks: diag(1, sqrt2/2, eps) over diag(eps, sqrt2/2, 1).
    const DQMatrix want_top = example1_SigmaA_full().block(0, 0, 3, 3);
    const DQMatrix want_bot = example1_SigmaB_full().block(0, 0, 3, 3);
    CHECK(recon_error(f.middle.block(0, 0, 3, 3), want_top) <= 1e-12);
    CHECK(recon_error(f.middle.block(3, 0, 3, 3), want_bot) <= 1e-12);
    CHECK(f.blocks.ones_coupled == 1);
    CHECK(f.blocks.mid == 1);
    CHECK(f.blocks.inf == 1);
}

TEST_CASE("2x1 decomposition of random isometries") {
    ToleranceConfig tol;
    Rng rng(603);
    for (int it = 0; it < 15; ++it) {
        const Index m = 7;
        const Index cols = 4;
        // isometry from the unitary factor of a random QR
        const DQMatrix w = qr(rng.matrix(m, cols)).Q.block(0, 0, m, cols);
        const Index r1 = 1 + static_cast<Index>(rng.gen() % (m - 1));
        const CSFactorization f = cs_decompose_2x1(w, r1, tol);
        CHECK(cs_recon_error_2x1(w, f) <= 1e-11);
        check_pairs(f, 1e-11);
    }
    CHECK_THROWS_AS(cs_decompose_2x1(rng.matrix(4, 2), 2, tol), NotIsometryError);
}

TEST_CASE("2x2 decomposition of the identity") {
    ToleranceConfig tol;
    const CSFactorization f = cs_decompose_2x2(DQMatrix::Identity(4), 2, 2, tol);
    CHECK(cs_recon_error_2x2(DQMatrix::Identity(4), f) <= 1e-13);
    CHECK(f.blocks.mid == 0);
    CHECK(f.blocks.inf == 0);
}

TEST_CASE("2x2 decomposition of a plane rotation") {
    ToleranceConfig tol;
    const double th = 0.83;
    DQMatrix w(2, 2);
    w(0, 0) = dq(std::cos(th));
    w(0, 1) = dq(-std::sin(th));
    w(1, 0) = dq(std::sin(th));
    w(1, 1) = dq(std::cos(th));
    const CSFactorization f = cs_decompose_2x2(w, 1, 1, tol);
    CHECK(cs_recon_error_2x2(w, f) <= 1e-13);
    REQUIRE(f.C.size() == 1);
    CHECK(f.C[0].st == doctest::Approx(std::cos(th)));
    CHECK(f.S[0].st == doctest::Approx(std::sin(th)));
}

TEST_CASE("2x2 decomposition of the first example's full factor") {
    ToleranceConfig tol;
    const DQMatrix p = example1_P();
    const CSFactorization f = cs_decompose_2x2(p, 3, 3, tol);
    CHECK(cs_recon_error_2x2(p, f) <= 1e-12);
    CHECK(recon_error(f.middle.block(0, 0, 3, 3), example1_SigmaA_full().block(0, 0, 3, 3)) <= 1e-12);
    CHECK(unitary_error(f.V2) <= 1e-12);
    check_pairs(f);
}

TEST_CASE("2x2 decomposition of random unitary matrices") {
    ToleranceConfig tol;
    Rng rng(604);
    for (int it = 0; it < 15; ++it) {
        const Index n = 4 + static_cast<Index>(rng.gen() % 4);
        const DQMatrix w = rng.unitary(n);
        const Index r1 = 1 + static_cast<Index>(rng.gen() % (n - 1));
        const Index t1 = 1 + static_cast<Index>(rng.gen() % (n - 1));
        const CSFactorization f = cs_decompose_2x2(w, r1, t1, tol);
        CHECK(cs_recon_error_2x2(w, f) <= 1e-11);
        CHECK(unitary_error(f.U1) <= 1e-12);
        CHECK(unitary_error(f.U2) <= 1e-12);
        CHECK(unitary_error(f.V1) <= 1e-12);
        CHECK(unitary_error(f.V2) <= 1e-12);
        check_pairs(f, 1e-11);
    }
    CHECK_THROWS_AS(cs_decompose_2x2(2.0 * DQMatrix::Identity(3), 1, 1, tol), NotUnitaryError);
}

TEST_CASE("quaternion degeneration leaves no eps blocks") {
    ToleranceConfig tol;
    Rng rng(605);
    // Unitary with zero infinitesimal part.
    DQMatrix w = rng.unitary(5);
    w = to_dual(standard_part(w));
    const CSFactorization f = cs_decompose_2x2(w, 2, 3, tol);
    CHECK(cs_recon_error_2x2(w, f) <= 1e-12);
    CHECK(f.blocks.ones_coupled == 0);
    CHECK(f.blocks.inf == 0);
    CHECK(f.Sigma.empty());
    CHECK(f.D.empty());
    CHECK(max_abs_infinitesimal(f.middle) <= 1e-12);
}

TEST_SUITE_END();
