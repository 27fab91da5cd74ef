#include "qrelax/redfield.hpp"

#include "qrelax/errors.hpp"
#include "oracles.hpp"

#include "doctest.h"

#include <random>

using namespace qrelax;
using linalg::Matrix;
using redfield::RelaxationTimes;

namespace {
const RelaxationTimes kTaus{4.6, 4.7, 11.1, 20.8, 23.8};
const states::SpinSystem kSys = states::make_spin_system(3, 1e-5);
}

TEST_CASE("t = 0 is the identity map") {
    std::mt19937 rng(31);
    const auto d0 = redfield::make_delta(oracles::random_traceless_hermitian(rng, 4));
    const auto dt = redfield::propagate_delta(d0, 0.0, kTaus);
    CHECK(linalg::max_abs(dt.mat - d0.mat) < 1e-15);
}

TEST_CASE("all modes decay at long times") {
    std::mt19937 rng(32);
    const auto d0 = redfield::make_delta(oracles::random_traceless_hermitian(rng, 4));
    const auto dt = redfield::propagate_delta(d0, 50.0 * 23.8, kTaus);
    CHECK(linalg::max_abs(dt.mat) < 1e-12 * linalg::max_abs(d0.mat));
}

TEST_CASE("negative time is rejected") {
    const auto d0 = redfield::make_delta(Matrix::Zero(4, 4));
    CHECK_THROWS_AS(redfield::propagate_delta(d0, -0.1, kTaus), NegativeTime);
}

TEST_CASE("invalid characteristic times are rejected") {
    CHECK_THROWS_AS(redfield::validate(RelaxationTimes{0.0, 4.7, 11.1, 20.8, 23.8}), Error);
    CHECK_THROWS_AS(redfield::validate(RelaxationTimes{4.6, -1.0, 11.1, 20.8, 23.8}), Error);
}

TEST_CASE("closed form matches the fine-step ODE oracle") {
    std::mt19937 rng(33);
    const oracles::DeltaIntegrator integrator(kTaus);
    for (int rep = 0; rep < 10; ++rep) {
        const auto d0 = redfield::make_delta(oracles::random_traceless_hermitian(rng, 4));
        for (double t : {1.0, 5.0, 20.0, 100.0}) {
            const auto closed = redfield::propagate_delta(d0, t, kTaus);
            const Matrix reference = integrator.integrate(d0.mat, t);
            CHECK(linalg::max_abs(closed.mat - reference) < 1e-8);
        }
    }
}

TEST_CASE("basis11 initial condition matches the ODE oracle at 5 ms") {
    const auto sigma0 = states::initial_deviation(kSys, states::basis_ket(4, 3));
    const auto sigma_inf = states::equilibrium_deviation(kSys);
    const auto d0 = redfield::make_delta(sigma0.mat - sigma_inf.mat);
    const auto closed = redfield::propagate_delta(d0, 5.0, kTaus);
    const Matrix reference = oracles::DeltaIntegrator(kTaus).integrate(d0.mat, 5.0);
    CHECK(linalg::max_abs(closed.mat - reference) < 1e-9 * linalg::max_abs(d0.mat) + 1e-18);
}

TEST_CASE("trace is conserved") {
    std::mt19937 rng(34);
    for (int rep = 0; rep < 20; ++rep) {
        const auto d0 = redfield::make_delta(oracles::random_traceless_hermitian(rng, 4));
        for (double t : {0.3, 2.0, 9.7, 44.0}) {
            const auto dt = redfield::propagate_delta(d0, t, kTaus);
            CHECK(std::abs(dt.mat.trace()) < 1e-12);
        }
    }
}

TEST_CASE("Hermiticity is preserved") {
    std::mt19937 rng(35);
    const auto d0 = redfield::make_delta(oracles::random_traceless_hermitian(rng, 4));
    for (double t : {0.1, 3.0, 17.0})
        CHECK(linalg::hermiticity_defect(redfield::propagate_delta(d0, t, kTaus).mat) < 1e-12);
}

TEST_CASE("two short steps equal one long step") {
    std::mt19937 rng(36);
    for (int rep = 0; rep < 10; ++rep) {
        const auto d0 = redfield::make_delta(oracles::random_traceless_hermitian(rng, 4));
        const auto two = redfield::propagate_delta(redfield::propagate_delta(d0, 7.3, kTaus), 11.2, kTaus);
        const auto one = redfield::propagate_delta(d0, 18.5, kTaus);
        CHECK(linalg::max_abs(two.mat - one.mat) < 1e-10);
    }
}

TEST_CASE("single-mode coherences decay monotonically") {
    std::mt19937 rng(37);
    const auto d0 = redfield::make_delta(oracles::random_traceless_hermitian(rng, 4));
    double prev12 = std::abs(d0.mat(1, 2)), prev03 = std::abs(d0.mat(0, 3));
    for (double t = 0.5; t <= 60.0; t += 0.5) {
        const auto dt = redfield::propagate_delta(d0, t, kTaus);
        CHECK(std::abs(dt.mat(1, 2)) <= prev12 + 1e-15);
        CHECK(std::abs(dt.mat(0, 3)) <= prev03 + 1e-15);
        prev12 = std::abs(dt.mat(1, 2));
        prev03 = std::abs(dt.mat(0, 3));
    }
}

TEST_CASE("evolve_sigma endpoints") {
    const auto sigma0 = states::initial_deviation(kSys, states::basis_ket(4, 3));
    const auto sigma_inf = states::equilibrium_deviation(kSys);
    const auto at0 = redfield::evolve_sigma(sigma0, sigma_inf, 0.0, kTaus);
    CHECK(linalg::max_abs(at0.mat - sigma0.mat) < 1e-18);
    const auto late = redfield::evolve_sigma(sigma0, sigma_inf, 50.0 * 23.8, kTaus);
    CHECK(linalg::max_abs(late.mat - sigma_inf.mat) < 1e-12 * kSys.epsilon);
}

TEST_CASE("evolve_sigma snapshot at 10 ms for basis11") {
    // frozen from the ODE oracle on first computation
    const auto sigma0 = states::initial_deviation(kSys, states::basis_ket(4, 3));
    const auto sigma_inf = states::equilibrium_deviation(kSys);
    const auto sigma = redfield::evolve_sigma(sigma0, sigma_inf, 10.0, kTaus);
    const double expected[4] = {-0.010605764459709873, 0.025201162873819693,
                                -0.10770182314704164, 0.093106424732931764};
    for (int k = 0; k < 4; ++k)
        CHECK(sigma.mat(k, k).real() / kSys.epsilon ==
              doctest::Approx(expected[k]).epsilon(1e-12));
}
