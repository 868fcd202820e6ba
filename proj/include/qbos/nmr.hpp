// Ideal (decoherence-free) emulation of the two-spin NMR realization of the
// game protocol: thermal state, temporal-averaging pseudo-pure preparation,
// pulse-program compilation, propagator simulation and fidelity reporting
// against the ideal circuit.
//
// Conventions: an rf pulse of flip angle beta about +axis acts as
// exp(-i beta I_axis) on the addressed spin(s); free evolution on resonance
// is exp(-i 2 pi J t Iz Iz). Hydrogen carries Alice (first tensor factor),
// Carbon carries Bob.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "qbos/linalg.hpp"
#include "qbos/protocol.hpp"

namespace qbos {

struct SpinSystemParams {
    double j_coupling = 215.0;       // Hz, H-C scalar coupling
    double epsilon = 1.34e-5;        // pseudo-pure polarization
    double larmor_ratio = 0.2514;    // omega_C / omega_H
    static SpinSystemParams chloroform();
};

void validate(const SpinSystemParams& p);

enum class PulseKind { rf_pulse, free_evolution };
enum class Channel { hydrogen, carbon, both };
enum class Axis { plus_x, minus_x, plus_y, minus_y };

struct PulseEvent {
    PulseKind kind = PulseKind::rf_pulse;
    Channel channel = Channel::both;  // rf only
    Axis axis = Axis::plus_x;         // rf only
    double flip_angle = 0.0;          // rad, rf only, in (0, 2pi]
    double duration = 0.0;            // s, free evolution only, >= 0

    static PulseEvent rf(Channel ch, Axis ax, double flip);
    static PulseEvent delay(double seconds);
};

struct PulseSequence {
    std::vector<PulseEvent> events;
    std::string label;

    void append(const PulseSequence& other);
};

// One event per line: "RF <channel> <axis> <angle_rad>" / "DELAY <seconds>",
// numbers printed with 12 significant digits.
std::string serialize(const PulseSequence& seq);

// (1/4) I + c (Iz_H + ratio Iz_C), with c chosen so that temporal averaging
// of this state yields exactly the pseudo-pure polarization epsilon.
DensityMatrix thermal_state(const SpinSystemParams& p);

// Average of the identity and the two cyclic population permutations
// (p2 p4 p3) and its inverse, realized as explicit permutation matrices.
// For the thermal input the result is (1/4 - eps/4) I + eps |00><00|.
// The procedure is linear and is applied to any input; `thermal_input`
// records whether the input looked like a diagonal-dominant thermal state.
struct TemporalAverageResult {
    DensityMatrix state;
    bool thermal_input = false;
};
TemporalAverageResult temporal_average(const DensityMatrix& rho);

// Propagator of a single rf pulse: exp(-i flip I_axis) on the addressed
// spin(s), identity on the other.
ComplexMatrix rf_pulse_unitary(const PulseEvent& e);

// exp(-i 2 pi J t Iz Iz)
ComplexMatrix free_evolution_unitary(double duration, const SpinSystemParams& p);

ComplexMatrix event_unitary(const PulseEvent& e, const SpinSystemParams& p);
ComplexMatrix sequence_unitary(const PulseSequence& seq, const SpinSystemParams& p);

// Judge block: pi/2(-x, both), tau, pi(-x, both), tau, pi/2(-x, both) with
// tau = lambda/(2 pi J), or tau' = (2 pi - lambda)/(2 pi J) for the inverse.
PulseSequence compile_entangler(double lambda, const SpinSystemParams& p, bool inverse);

// Strategy block for one channel. The phi control is a composite-z block
// (pi/2 +x, phi +y, pi/2 -x) placed on each side of the theta pulse so the
// two phi pulses realize the e^{+-i phi} phases of the strategy operator;
// with theta = 0 the two halves merge into the single four-event composite
// [pi/2 +x, phi +y, phi +y, pi/2 -x]. Zero-angle pulses are omitted.
PulseSequence compile_strategy(const StrategyParams& s, Channel channel);

// entangler(lambda) -> strategies (H then C; the blocks commute) ->
// inverse entangler(lambda)
PulseSequence compile_game(const StrategyParams& alice, const StrategyParams& bob, double lambda,
                           const SpinSystemParams& p);

// rho_f = U_n ... U_1 rho U_1^dag ... U_n^dag
DensityMatrix simulate(const PulseSequence& seq, const DensityMatrix& rho0, const SpinSystemParams& p);

// Deviation part of a pseudo-pure state: (rho - (1-eps)/4 I) / eps.
DensityMatrix deviation_state(const DensityMatrix& rho, const SpinSystemParams& p);
std::array<double, 4> deviation_populations(const DensityMatrix& rho, const SpinSystemParams& p);

// Frame calibration: the pulse-level theta control differs from the strategy
// operator by conjugation with sigma_z on each spin, so simulated states
// match the ideal circuit only after fixed local z rotations by pi. The
// constants below were determined once by calibrate_frame() and frozen.
inline constexpr double kFrameZHydrogen = 3.14159265358979323846;
inline constexpr double kFrameZCarbon = 3.14159265358979323846;

// Brute-force fit of the two local z-rotation angles that maximize the
// worst-case fidelity against the ideal circuit over the seven experiment
// profiles at lambda = pi/2.
std::pair<double, double> calibrate_frame(const SpinSystemParams& p);

// Applies the frozen frame calibration to the deviation part of rho_f and
// returns its fidelity <ideal| rho |ideal> against the ideal state.
double fidelity_report(const DensityMatrix& rho_f, const StateVector& ideal, const SpinSystemParams& p);

}  // namespace qbos
