#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qbos/analysis.hpp"
#include "qbos/nmr.hpp"
#include "test_util.hpp"

using namespace qbos;
using testutil::Rng;

namespace {
constexpr double pi = std::numbers::pi;

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return a.max_abs_diff(b); }

// match up to one global phase
double unitary_diff_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
    cd phase = 0.0;
    for (std::size_t i = 0; i < a.rows() && std::abs(phase) < 1e-6; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (std::abs(b(i, j)) > 1e-6) {
                phase = a(i, j) / b(i, j);
                break;
            }
    phase /= std::abs(phase);
    return max_entry_diff(a, std::conj(phase) * ComplexMatrix::identity(a.rows()) * b *
                                 ComplexMatrix::identity(a.cols()));
}
}  // namespace

TEST_CASE("thermal state structure") {
    const SpinSystemParams p = SpinSystemParams::chloroform();
    const DensityMatrix rho = thermal_state(p);
    CHECK(std::abs(rho.m.trace() - cd{1.0, 0.0}) < 1e-15);
    CHECK(max_entry_diff(rho.m, rho.m.dagger()) == 0.0);

    // equal Larmor frequencies: deviation proportional to diag(1, 0, 0, -1)
    SpinSystemParams equal = p;
    equal.larmor_ratio = 1.0;
    const DensityMatrix rho_eq = thermal_state(equal);
    CHECK(std::abs(rho_eq.m(1, 1).real() - 0.25) < 1e-16);
    CHECK(std::abs(rho_eq.m(2, 2).real() - 0.25) < 1e-16);
    CHECK(rho_eq.m(0, 0).real() > 0.25);
    CHECK(std::abs((rho_eq.m(0, 0).real() - 0.25) + (rho_eq.m(3, 3).real() - 0.25)) < 1e-16);
}

TEST_CASE("temporal averaging produces the pseudo-pure state") {
    const SpinSystemParams p = SpinSystemParams::chloroform();
    const TemporalAverageResult avg = temporal_average(thermal_state(p));
    CHECK(avg.thermal_input);

    ComplexMatrix expected = cd{0.25 * (1.0 - p.epsilon), 0.0} * ComplexMatrix::identity(4);
    expected(0, 0) += p.epsilon;
    CHECK(max_entry_diff(avg.state.m, expected) < 1e-12);
}

TEST_CASE("temporal averaging fixed points and idempotence") {
    const SpinSystemParams p = SpinSystemParams::chloroform();

    const DensityMatrix mixed = DensityMatrix::maximally_mixed();
    CHECK(max_entry_diff(temporal_average(mixed).state.m, mixed.m) < 1e-15);

    const DensityMatrix pseudo = temporal_average(thermal_state(p)).state;
    const DensityMatrix again = temporal_average(pseudo).state;
    CHECK(max_entry_diff(again.m, pseudo.m) < 1e-15);

    // idempotent on its own output for any input (group averaging)
    Rng rng(61);
    const DensityMatrix random_pure = DensityMatrix::pure(rng.state());
    const DensityMatrix once = temporal_average(random_pure).state;
    const DensityMatrix twice = temporal_average(once).state;
    CHECK(max_entry_diff(twice.m, once.m) < 1e-14);
}

TEST_CASE("temporal averaging is linear") {
    Rng rng(67);
    const DensityMatrix r1 = DensityMatrix::pure(rng.state());
    const DensityMatrix r2 = DensityMatrix::pure(rng.state());
    const double a = 0.3, b = 0.7;
    const ComplexMatrix blend = cd{a, 0.0} * r1.m + cd{b, 0.0} * r2.m;
    const ComplexMatrix averaged_blend = temporal_average(DensityMatrix{blend}).state.m;
    const ComplexMatrix blended_averages =
        cd{a, 0.0} * temporal_average(r1).state.m + cd{b, 0.0} * temporal_average(r2).state.m;
    CHECK(max_entry_diff(averaged_blend, blended_averages) < 1e-10);
}

TEST_CASE("rf pulse unitaries") {
    // a pi pulse about +x squares to -identity on the addressed spin
    const ComplexMatrix pulse = rf_pulse_unitary(PulseEvent::rf(Channel::hydrogen, Axis::plus_x, pi));
    const ComplexMatrix square = pulse * pulse;
    const ComplexMatrix expected = kron(cd{-1.0, 0.0} * ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    CHECK(max_entry_diff(square, expected) < 1e-14);

    // pi/2 on both channels along -x is the kron of two single-spin rotations
    ComplexMatrix rot(2, 2);
    const double c = std::cos(pi / 4), s = std::sin(pi / 4);
    rot(0, 0) = c;
    rot(0, 1) = cd{0.0, -s} * cd{-1.0, 0.0};
    rot(1, 0) = cd{0.0, -s} * cd{-1.0, 0.0};
    rot(1, 1) = c;
    const ComplexMatrix both = rf_pulse_unitary(PulseEvent::rf(Channel::both, Axis::minus_x, pi / 2));
    CHECK(max_entry_diff(both, kron(rot, rot)) < 1e-14);

    CHECK(is_unitary(rf_pulse_unitary(PulseEvent::rf(Channel::carbon, Axis::minus_y, 1.0)), 1e-12));

    CHECK_THROWS_AS(PulseEvent::rf(Channel::both, Axis::plus_x, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PulseEvent::rf(Channel::both, Axis::plus_x, 7.0), std::invalid_argument);
    CHECK_THROWS_AS(rf_pulse_unitary(PulseEvent::delay(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(PulseEvent::delay(-1.0), std::invalid_argument);
}

TEST_CASE("free evolution unitary") {
    const SpinSystemParams p = SpinSystemParams::chloroform();
    CHECK(max_entry_diff(free_evolution_unitary(0.0, p), ComplexMatrix::identity(4)) == 0.0);

    // duration 1/J: diagonal phases (e^{-i pi/2}, e^{+i pi/2}, e^{+i pi/2}, e^{-i pi/2})
    const ComplexMatrix full = free_evolution_unitary(1.0 / p.j_coupling, p);
    CHECK(std::abs(full(0, 0) - cd{0.0, -1.0}) < 1e-12);
    CHECK(std::abs(full(1, 1) - cd{0.0, 1.0}) < 1e-12);
    CHECK(std::abs(full(2, 2) - cd{0.0, 1.0}) < 1e-12);
    CHECK(std::abs(full(3, 3) - cd{0.0, -1.0}) < 1e-12);
}

TEST_CASE("entangler block compiles to the judge") {
    const SpinSystemParams p = SpinSystemParams::chloroform();

    const PulseSequence seq = compile_entangler(pi / 2, p, false);
    REQUIRE(seq.events.size() == 5);
    CHECK(seq.events[1].duration == doctest::Approx(1.0 / (4.0 * p.j_coupling)).epsilon(1e-15));
    CHECK(seq.events[1].duration == doctest::Approx(1.1627906976744e-3).epsilon(1e-10));

    // net propagator equals J(lambda) up to a global phase, for several lambdas
    for (double lambda : {0.0, 0.2, pi / 4, pi / 2}) {
        const ComplexMatrix fwd = sequence_unitary(compile_entangler(lambda, p, false), p);
        CHECK(unitary_diff_up_to_phase(fwd, judge_operator(lambda)) < 1e-12);
        const ComplexMatrix inv = sequence_unitary(compile_entangler(lambda, p, true), p);
        CHECK(unitary_diff_up_to_phase(inv, judge_operator(lambda).dagger()) < 1e-12);
    }

    // lambda = 0 forward block is the identity
    const ComplexMatrix idle = sequence_unitary(compile_entangler(0.0, p, false), p);
    CHECK(unitary_diff_up_to_phase(idle, ComplexMatrix::identity(4)) < 1e-13);

    // inverse after forward restores the pseudo-pure input
    const DensityMatrix pseudo = temporal_average(thermal_state(p)).state;
    PulseSequence round_trip = compile_entangler(pi / 2, p, false);
    round_trip.append(compile_entangler(pi / 2, p, true));
    const DensityMatrix back = simulate(round_trip, pseudo, p);
    CHECK(fidelity_report(back, StateVector::basis(0), p) >= 1.0 - 1e-9);
}

TEST_CASE("entangler output is maximally entangled at lambda = pi/2") {
    const SpinSystemParams p = SpinSystemParams::chloroform();
    const DensityMatrix pseudo = temporal_average(thermal_state(p)).state;
    const DensityMatrix after = simulate(compile_entangler(pi / 2, p, false), pseudo, p);
    const DensityMatrix dev = deviation_state(after, p);

    // deviation part is pure: take its principal eigenvector
    const EigenSystem es = hermitian_eigensystem(dev.m);
    CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-8));
    StateVector principal;
    for (std::size_t i = 0; i < 4; ++i) principal[i] = es.vectors(i, 0);
    CHECK(std::abs(entanglement_entropy(principal) - 1.0) < 1e-6);
}

TEST_CASE("strategy pulse blocks") {
    // (theta = pi, phi = 0): a single pi pulse along +y
    const PulseSequence television = compile_strategy({pi, 0.0}, Channel::hydrogen);
    REQUIRE(television.events.size() == 1);
    CHECK(television.events[0].axis == Axis::plus_y);
    CHECK(television.events[0].flip_angle == doctest::Approx(pi).epsilon(1e-15));

    // (theta = 0, phi): the four-event composite with two phi pulses
    const PulseSequence composite = compile_strategy({0.0, pi / 8}, Channel::carbon);
    REQUIRE(composite.events.size() == 4);
    CHECK(composite.events[0].axis == Axis::plus_x);
    CHECK(composite.events[1].axis == Axis::plus_y);
    CHECK(composite.events[1].flip_angle == doctest::Approx(pi / 8).epsilon(1e-15));
    CHECK(composite.events[2].axis == Axis::plus_y);
    CHECK(composite.events[3].axis == Axis::minus_x);

    // (0, 0): empty
    CHECK(compile_strategy({0.0, 0.0}, Channel::hydrogen).events.empty());

    // mixed angles: the composite-z halves sandwich the theta pulse
    const PulseSequence mixed = compile_strategy({pi / 3, pi / 5}, Channel::hydrogen);
    REQUIRE(mixed.events.size() == 7);
    CHECK(mixed.events[3].axis == Axis::plus_y);
    CHECK(mixed.events[3].flip_angle == doctest::Approx(pi / 3).epsilon(1e-15));
}

TEST_CASE("strategy pulses realize the strategy operator up to the z frame") {
    // the compiled block equals sigma_z U(theta, phi) sigma_z on its channel
    const SpinSystemParams p = SpinSystemParams::chloroform();
    Rng rng(71);
    ComplexMatrix sz(2, 2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    const ComplexMatrix frame = kron(sz, ComplexMatrix::identity(2));
    for (int trial = 0; trial < 100; ++trial) {
        const StrategyParams s = rng.strategy();
        const ComplexMatrix pulse = sequence_unitary(compile_strategy(s, Channel::hydrogen), p);
        const ComplexMatrix expected =
            frame * kron(strategy_operator(s), ComplexMatrix::identity(2)) * frame;
        CHECK(max_entry_diff(pulse, expected) < 1e-12);
    }
}

TEST_CASE("compiled blocks have unitary propagators") {
    const SpinSystemParams p = SpinSystemParams::chloroform();
    Rng rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        const double lambda = rng.lambda();
        CHECK(is_unitary(sequence_unitary(compile_game(rng.strategy(), rng.strategy(), lambda, p), p), 1e-10));
    }
}

TEST_CASE("simulate basics") {
    const SpinSystemParams p = SpinSystemParams::chloroform();
    const DensityMatrix pseudo = temporal_average(thermal_state(p)).state;

    const DensityMatrix unchanged = simulate(PulseSequence{}, pseudo, p);
    CHECK(max_entry_diff(unchanged.m, pseudo.m) == 0.0);

    Rng rng(79);
    const PulseSequence seq = compile_game(rng.strategy(), rng.strategy(), pi / 2, p);
    const DensityMatrix out = simulate(seq, pseudo, p);
    CHECK(std::abs(out.m.trace() - cd{1.0, 0.0}) < 1e-10);
    CHECK(max_entry_diff(out.m, out.m.dagger()) < 1e-10);

    // linearity
    const DensityMatrix r1 = DensityMatrix::pure(rng.state());
    const DensityMatrix r2 = DensityMatrix::pure(rng.state());
    const ComplexMatrix blend = cd{0.25, 0.0} * r1.m + cd{0.75, 0.0} * r2.m;
    const ComplexMatrix sim_blend = simulate(seq, DensityMatrix{blend}, p).m;
    const ComplexMatrix blend_sim =
        cd{0.25, 0.0} * simulate(seq, r1, p).m + cd{0.75, 0.0} * simulate(seq, r2, p).m;
    CHECK(max_entry_diff(sim_blend, blend_sim) < 1e-10);
}

TEST_CASE("game pipeline populations at the named profiles") {
    const SpinSystemParams p = SpinSystemParams::chloroform();
    const DensityMatrix pseudo = temporal_average(thermal_state(p)).state;

    const auto populations = [&](StrategyParams a, StrategyParams b, double lambda) {
        return deviation_populations(simulate(compile_game(a, b, lambda, p), pseudo, p), p);
    };

    const auto identity_pops = populations({0, 0}, {0, 0}, pi / 2);
    CHECK(identity_pops[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(identity_pops[1]) + std::abs(identity_pops[2]) + std::abs(identity_pops[3]) < 1e-9);

    const auto bell_pops = populations({0, pi / 8}, {0, pi / 8}, pi / 2);
    CHECK(bell_pops[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(bell_pops[3] == doctest::Approx(0.5).epsilon(1e-9));

    const auto idle_pops = populations({0, 0}, {0, 0}, 0.0);
    CHECK(idle_pops[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("frame calibration lands on the frozen constants") {
    const auto [z_h, z_c] = calibrate_frame(SpinSystemParams::chloroform());
    CHECK(z_h == doctest::Approx(kFrameZHydrogen).epsilon(1e-12));
    CHECK(z_c == doctest::Approx(kFrameZCarbon).epsilon(1e-12));
}

TEST_CASE("fidelity report") {
    const SpinSystemParams p = SpinSystemParams::chloroform();
    const GameConfig cfg = GameConfig::max_entanglement();
    const DensityMatrix pseudo = temporal_average(thermal_state(p)).state;

    // pseudo-pure input against |00>
    CHECK(fidelity_report(pseudo, StateVector::basis(0), p) == doctest::Approx(1.0).epsilon(1e-9));

    // end-to-end across the experiment profiles and random theta=0 / phi=0 profiles
    for (const StrategyProfile& prof : experiment_profiles()) {
        const DensityMatrix out = simulate(compile_game(prof.alice, prof.bob, pi / 2, p), pseudo, p);
        CHECK(fidelity_report(out, final_state(prof.alice, prof.bob, cfg), p) >= 1.0 - 1e-6);
    }
    Rng rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        const StrategyProfile prof{rng.strategy(), rng.strategy()};
        const DensityMatrix out = simulate(compile_game(prof.alice, prof.bob, pi / 2, p), pseudo, p);
        CHECK(fidelity_report(out, final_state(prof.alice, prof.bob, cfg), p) >= 1.0 - 1e-6);
    }

    // deliberately mis-set delays: pulses at lambda = pi/4 against the
    // lambda = pi/2 target; frozen regression value (2 + sqrt 2)/4
    const StrategyParams sol{0.0, pi / 8};
    const DensityMatrix detuned = simulate(compile_game(sol, sol, pi / 4, p), pseudo, p);
    const double detuned_fidelity = fidelity_report(detuned, final_state(sol, sol, cfg), p);
    CHECK(detuned_fidelity < 1.0 - 1e-3);
    CHECK(detuned_fidelity == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-9));
}

TEST_CASE("pulse sequence serialization golden") {
    const SpinSystemParams p = SpinSystemParams::chloroform();
    const PulseSequence seq = compile_game({0.0, pi / 8}, {0.0, pi / 8}, pi / 2, p);
    const std::string expected =
        "RF both -x 1.57079632679\n"
        "DELAY 0.00116279069767\n"
        "RF both -x 3.14159265359\n"
        "DELAY 0.00116279069767\n"
        "RF both -x 1.57079632679\n"
        "RF H +x 1.57079632679\n"
        "RF H +y 0.392699081699\n"
        "RF H +y 0.392699081699\n"
        "RF H -x 1.57079632679\n"
        "RF C +x 1.57079632679\n"
        "RF C +y 0.392699081699\n"
        "RF C +y 0.392699081699\n"
        "RF C -x 1.57079632679\n"
        "RF both -x 1.57079632679\n"
        "DELAY 0.00348837209302\n"
        "RF both -x 3.14159265359\n"
        "DELAY 0.00348837209302\n"
        "RF both -x 1.57079632679\n";
    CHECK(serialize(seq) == expected);
}

TEST_CASE("spin system parameter validation") {
    CHECK_NOTHROW(validate(SpinSystemParams::chloroform()));
    SpinSystemParams bad = SpinSystemParams::chloroform();
    bad.j_coupling = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = SpinSystemParams::chloroform();
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}
