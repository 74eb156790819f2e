#include <doctest.h>

#include <thread>

#include "dqmat/svd.hpp"
#include "test_support.hpp"

using namespace dqtest;

TEST_SUITE_BEGIN("svd");

namespace {

void check_contract(const DQMatrix& a, const DQSVDFactorization& f, double tol = 1e-12) {
    CHECK(recon_error_st(f.U * f.middle(a.rows(), a.cols()) * adjoint(f.V), a) <= tol);
    CHECK(recon_error_in(f.U * f.middle(a.rows(), a.cols()) * adjoint(f.V), a) <= tol);
    CHECK(unitary_error(f.U) <= tol);
    CHECK(unitary_error(f.V) <= tol);
    bool seen_infinitesimal = false;
    for (size_t i = 0; i < f.sigma.size(); ++i) {
        if (i > 0) CHECK(f.sigma[i] <= f.sigma[i - 1]);
        const bool appr = f.sigma[i].st > 0.0;
        if (appr) CHECK_FALSE(seen_infinitesimal);
        if (!appr) seen_infinitesimal = true;
        CHECK(f.sigma[i] >= DualNumber(0.0, 0.0));
    }
}

}  // namespace

TEST_CASE("already diagonal dual matrix") {
    ToleranceConfig tol;
    DQMatrix a(2, 2);
    a(0, 0) = DualQuaternion(Quaternion(kS2), Quaternion(1));
    a(1, 1) = dq(kS2);
    const DQSVDFactorization f = dqsvd(a, tol);
    CHECK(f.sigma[0].st == doctest::Approx(kS2));
    CHECK(f.sigma[0].in == doctest::Approx(1.0));
    CHECK(f.sigma[1].st == doctest::Approx(kS2));
    CHECK(std::abs(f.sigma[1].in) <= 1e-14);
    CHECK(recon_error(f.U, DQMatrix::Identity(2)) <= 1e-13);
    CHECK(recon_error(f.V, DQMatrix::Identity(2)) <= 1e-13);
}

TEST_CASE("stacked pair of the second worked example") {
    ToleranceConfig tol;
    const DQMatrix c = vstack(example2_A(), example2_B());
    const DQSVDFactorization f = dqsvd(c, tol);
    check_contract(c, f);
    CHECK(sigma_multiset_match(f.sigma, example2_sigmaC(), 1e-10));
    CHECK(f.rank == 5);
    CHECK(f.arank == 3);
}

TEST_CASE("stacked pair of the first worked example") {
    ToleranceConfig tol;
    const DQMatrix c = vstack(example1_A(), example1_B());
    const DQSVDFactorization f = dqsvd(c, tol);
    check_contract(c, f);
    CHECK(sigma_multiset_match(f.sigma, example1_sigmaC(), 1e-10));
    CHECK(f.rank == 3);
    CHECK(f.arank == 2);
}

TEST_CASE("random dense matrices") {
    ToleranceConfig tol;
    Rng rng(501);
    for (int it = 0; it < 30; ++it) {
        const Index m = 1 + static_cast<Index>(rng.gen() % 8);
        const Index n = 1 + static_cast<Index>(rng.gen() % 8);
        const DQMatrix a = rng.matrix(m, n);
        check_contract(a, dqsvd(a, tol));
    }
}

TEST_CASE("planted spectra are recovered as multisets") {
    ToleranceConfig tol;
    Rng rng(502);
    for (int it = 0; it < 30; ++it) {
        const Index m = 2 + static_cast<Index>(rng.gen() % 6);
        const Index n = 2 + static_cast<Index>(rng.gen() % 6);
        const Index span = std::min(m, n);
        std::vector<DualNumber> sigma;
        for (Index i = 0; i < span; ++i) {
            switch (rng.gen() % 5) {
                case 0:
                case 1:
                    sigma.push_back({2.0 + std::abs(rng.real()), rng.real()});
                    break;
                case 2:
                    sigma.push_back({1.0, rng.real()});  // planted repeats at st = 1
                    break;
                case 3:
                    sigma.push_back({0.0, 0.5 + std::abs(rng.real())});
                    break;
                default:
                    sigma.push_back({0.0, 0.0});
            }
        }
        std::sort(sigma.begin(), sigma.end(), [](DualNumber a, DualNumber b) { return b < a; });
        const DQMatrix a = rng.planted(m, n, sigma);
        const DQSVDFactorization f = dqsvd(a, tol);
        check_contract(a, f, 1e-11);
        CHECK(sigma_multiset_match(f.sigma, sigma, 1e-11));
    }
}

TEST_CASE("repeated standard parts with distinct dual parts") {
    ToleranceConfig tol;
    Rng rng(503);
    // A triple group at sqrt(2)/2 with dual parts +1, 0, -1 and a double
    // infinitesimal group, mirroring the worked examples.
    const std::vector<DualNumber> sigma = {{kS2, 1.0}, {kS2, 0.0}, {kS2, -1.0}, {0.0, 1.0}, {0.0, 1.0}};
    const DQMatrix a = rng.planted(6, 5, sigma);
    const DQSVDFactorization f = dqsvd(a, tol);
    check_contract(a, f, 1e-11);
    CHECK(sigma_multiset_match(f.sigma, sigma, 1e-11));
    CHECK(f.rank == 5);
    CHECK(f.arank == 3);
}

TEST_CASE("graded and rank deficient standard parts stay stable") {
    // Low-rank products leave junk singular values at the denormal scale,
    // and eps-injected columns leave exactly zero ones; the Jacobi kernel
    // must treat both as zero columns instead of rotating against them.
    ToleranceConfig tol;
    Rng rng(505);
    for (int it = 0; it < 10; ++it) {
        const DQMatrix a = rng.matrix(3, 3) * rng.matrix(3, 7);
        const DQMatrix c = vstack(a, DQMatrix(5, 7));
        const DQSVDFactorization f = dqsvd(c, tol);
        CHECK(recon_error(f.U * f.middle(8, 7) * adjoint(f.V), c) <= 1e-11);
        CHECK(unitary_error(f.U) <= 1e-11);
        CHECK(unitary_error(f.V) <= 1e-11);

        DQMatrix g = rng.matrix(4, 5);
        for (Index j = 0; j < 5; j += 2) g.set_col(j, eps_times(rng.quat_matrix(4, 1)));
        const DQSVDFactorization fg = dqsvd(g, tol);
        CHECK(recon_error(fg.U * fg.middle(4, 5) * adjoint(fg.V), g) <= 1e-11);
        CHECK(unitary_error(fg.U) <= 1e-11);
    }
}

TEST_CASE("infinitesimal only matrix") {
    ToleranceConfig tol;
    Rng rng(504);
    const DQMatrix a = eps_times(rng.quat_matrix(4, 3));
    const DQSVDFactorization f = dqsvd(a, tol);
    check_contract(a, f);
    CHECK(f.arank == 0);
    CHECK(f.rank == 3);
}

TEST_CASE("concurrent batch calls match serial results") {
    // No global state anywhere: parallel decompositions of the same inputs
    // must reproduce the serial factors bit for bit.
    ToleranceConfig tol;
    Rng rng(506);
    std::vector<DQMatrix> inputs;
    for (int i = 0; i < 8; ++i) inputs.push_back(rng.matrix(5, 4));

    std::vector<DQSVDFactorization> serial;
    for (const DQMatrix& a : inputs) serial.push_back(dqsvd(a, tol));

    std::vector<DQSVDFactorization> parallel(inputs.size());
    std::vector<std::thread> workers;
    for (size_t t = 0; t < 4; ++t)
        workers.emplace_back([&, t]() {
            for (size_t i = t; i < inputs.size(); i += 4) parallel[i] = dqsvd(inputs[i], tol);
        });
    for (std::thread& w : workers) w.join();

    for (size_t i = 0; i < inputs.size(); ++i) {
        CHECK(recon_error(parallel[i].U, serial[i].U) == 0.0);
        CHECK(recon_error(parallel[i].V, serial[i].V) == 0.0);
        for (size_t j = 0; j < serial[i].sigma.size(); ++j)
            CHECK(parallel[i].sigma[j] == serial[i].sigma[j]);
    }
}

TEST_SUITE_END();
