#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qbos/linalg.hpp"
#include "qbos/protocol.hpp"
#include "test_util.hpp"

using namespace qbos;
using testutil::Rng;

namespace {
constexpr double pi = std::numbers::pi;

ComplexMatrix television4() {
    const ComplexMatrix t = strategy_operator({pi, 0.0});
    return kron(t, t);
}

ComplexMatrix random_unitary(Rng& rng) {
    return kron(strategy_operator(rng.strategy()), strategy_operator(rng.strategy())) *
           judge_operator(rng.lambda()) *
           kron(strategy_operator(rng.strategy()), strategy_operator(rng.strategy()));
}
}  // namespace

TEST_CASE("kron of two identities is the 4x4 identity") {
    const ComplexMatrix eye2 = ComplexMatrix::identity(2);
    CHECK(kron(eye2, eye2).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron(T, T) has antidiagonal 1, -1, -1, 1") {
    const ComplexMatrix tt = television4();
    ComplexMatrix expected(4, 4);
    expected(0, 3) = 1.0;
    expected(1, 2) = -1.0;
    expected(2, 1) = -1.0;
    expected(3, 0) = 1.0;
    CHECK(tt.max_abs_diff(expected) < 1e-15);
}

TEST_CASE("kron(O, T) maps |00> to |01> up to sign") {
    const ComplexMatrix ot = kron(strategy_operator({0.0, 0.0}), strategy_operator({pi, 0.0}));
    const StateVector out = apply(ot, StateVector::basis(0));
    CHECK(std::abs(out[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(out[0]) < 1e-15);
    CHECK(std::abs(out[2]) < 1e-15);
    CHECK(std::abs(out[3]) < 1e-15);
}

TEST_CASE("kron index convention") {
    ComplexMatrix a(2, 2, {cd{1, 0}, cd{2, 0}, cd{3, 0}, cd{4, 0}});
    ComplexMatrix b(2, 2, {cd{0, 1}, cd{0, 0}, cd{0, 0}, cd{0, -1}});
    const ComplexMatrix k = kron(a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t p = 0; p < 2; ++p)
                for (std::size_t q = 0; q < 2; ++q)
                    CHECK(k(i * 2 + p, j * 2 + q) == a(i, j) * b(p, q));
}

TEST_CASE("kron mixed-product and associativity properties") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix a = strategy_operator(rng.strategy());
        const ComplexMatrix b = strategy_operator(rng.strategy());
        const ComplexMatrix c = strategy_operator(rng.strategy());
        const ComplexMatrix d = strategy_operator(rng.strategy());
        CHECK((kron(a, b) * kron(c, d)).max_abs_diff(kron(a * c, b * d)) < 1e-12);
        CHECK(kron(kron(a, b), c).max_abs_diff(kron(a, kron(b, c))) < 1e-12);
    }
}

TEST_CASE("is_unitary accepts the judge and rejects a scaled row") {
    CHECK(is_unitary(ComplexMatrix::identity(4), 1e-12));
    CHECK(is_unitary(judge_operator(pi / 2), 1e-12));

    ComplexMatrix bad = ComplexMatrix::identity(4);
    for (std::size_t j = 0; j < 4; ++j) bad(1, j) *= 1.01;
    CHECK_FALSE(is_unitary(bad, 1e-12));

    CHECK_THROWS_AS(is_unitary(ComplexMatrix(2, 3), 1e-12), std::invalid_argument);
}

TEST_CASE("apply basics") {
    CHECK(apply(ComplexMatrix::identity(4), StateVector::basis(0))[0] == cd{1.0, 0.0});

    const StateVector tt00 = apply(television4(), StateVector::basis(0));
    CHECK(std::abs(tt00[3]) == doctest::Approx(1.0).epsilon(1e-12));

    const StateVector bell = apply(judge_operator(pi / 2), StateVector::basis(0));
    StateVector expected;
    expected[0] = cd{1.0 / std::sqrt(2.0), 0.0};
    expected[3] = cd{0.0, 1.0 / std::sqrt(2.0)};
    CHECK(testutil::max_diff_up_to_global_phase(bell, expected) < 1e-12);

    ComplexMatrix not_unitary = ComplexMatrix::identity(4);
    not_unitary(0, 0) = 2.0;
    CHECK_THROWS_AS(apply(not_unitary, StateVector::basis(0)), std::invalid_argument);
}

TEST_CASE("apply preserves the norm for random unitary/state pairs") {
    Rng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const StateVector out = apply(random_unitary(rng), rng.state());
        worst = std::max(worst, std::abs(out.norm() - 1.0));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("entanglement entropy of product, Bell and intermediate states") {
    CHECK(entanglement_entropy(StateVector::basis(0)) == doctest::Approx(0.0).epsilon(1e-12));

    const StateVector bell = apply(judge_operator(pi / 2), StateVector::basis(0));
    CHECK(std::abs(entanglement_entropy(bell) - 1.0) < 1e-9);

    // frozen regression constant for J(pi/4)|00>
    const StateVector partial = apply(judge_operator(pi / 4), StateVector::basis(0));
    CHECK(entanglement_entropy(partial) == doctest::Approx(0.6008760366928562).epsilon(1e-11));
}

TEST_CASE("entanglement entropy is invariant under local unitaries") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const StateVector psi = rng.state();
        const ComplexMatrix local =
            kron(strategy_operator(rng.strategy()), strategy_operator(rng.strategy()));
        CHECK(std::abs(entanglement_entropy(apply(local, psi)) - entanglement_entropy(psi)) < 1e-9);
    }
}

TEST_CASE("state fidelity basics") {
    Rng rng(3);
    const StateVector psi = rng.state();
    CHECK(state_fidelity(DensityMatrix::pure(psi), psi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(state_fidelity(DensityMatrix::maximally_mixed(), psi) == doctest::Approx(0.25).epsilon(1e-12));

    const StateVector bell = apply(judge_operator(pi / 2), StateVector::basis(0));
    CHECK(state_fidelity(DensityMatrix::pure(StateVector::basis(0)), bell) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("state fidelity rejects invalid density matrices") {
    ComplexMatrix not_hermitian = ComplexMatrix::identity(4);
    not_hermitian(0, 1) = cd{0.5, 0.0};
    not_hermitian = cd{0.25, 0.0} * not_hermitian;
    CHECK_THROWS_AS(state_fidelity(DensityMatrix{not_hermitian}, StateVector::basis(0)),
                    std::invalid_argument);

    ComplexMatrix bad_trace = cd{0.5, 0.0} * ComplexMatrix::identity(4);
    CHECK_THROWS_AS(state_fidelity(DensityMatrix{bad_trace}, StateVector::basis(0)), std::invalid_argument);

    ComplexMatrix negative(4, 4);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(state_fidelity(DensityMatrix{negative}, StateVector::basis(0)), std::invalid_argument);
}

TEST_CASE("hermitian eigensystem reproduces known decompositions") {
    // [[1/2, 1/2], [1/2, 1/2]] has eigenvalues 1 and 0
    ComplexMatrix m(2, 2, {cd{0.5, 0}, cd{0.5, 0}, cd{0.5, 0}, cd{0.5, 0}});
    const EigenSystem es = hermitian_eigensystem(m);
    CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es.values[1] == doctest::Approx(0.0).epsilon(1e-12));

    // eigenvector check: m v = lambda v
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t i = 0; i < 2; ++i) {
            cd mv = 0.0;
            for (std::size_t j = 0; j < 2; ++j) mv += m(i, j) * es.vectors(j, k);
            CHECK(std::abs(mv - es.values[k] * es.vectors(i, k)) < 1e-12);
        }
    }

    // a pure 4x4 projector has spectrum {1, 0, 0, 0}
    Rng rng(5);
    const EigenSystem es4 = hermitian_eigensystem(DensityMatrix::pure(rng.state()).m);
    CHECK(es4.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(es4.values[k]) < 1e-12);
}

TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix::from_matrix(DensityMatrix::maximally_mixed().m));
    CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::identity(2)), std::invalid_argument);
}
