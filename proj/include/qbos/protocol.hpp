// The quantized battle-of-the-sexes game: strategy unitaries, the entangling
// judge, the final two-qubit state, outcome probabilities and payoffs.
//
// Two independent evaluation routes are provided on purpose: a circuit route
// (judge / strategy / inverse-judge operator products) and a closed-form
// trigonometric route. Their agreement is the central correctness check of
// the whole project and is enforced by the test suite.

#pragma once

#include "qbos/linalg.hpp"

namespace qbos {

// One player's continuous strategy U(theta, phi), theta in [0, pi] and
// phi in [0, pi/2].
struct StrategyParams {
    double theta = 0.0;
    double phi = 0.0;
};

// Payoff constants (alpha > beta > gamma) plus the judge entanglement level
// lambda in [0, pi/2]. lambda lives here because the judge is fixed by the
// referee, not chosen by the players.
struct GameConfig {
    double alpha = 5.0;
    double beta = 3.0;
    double gamma = 1.0;
    double lambda = 0.0;  // see max_entanglement() for the usual default
    static GameConfig max_entanglement();
};

struct OutcomeProbabilities {
    double p_oo = 0.0;
    double p_ot = 0.0;
    double p_to = 0.0;
    double p_tt = 0.0;
    double sum() const { return p_oo + p_ot + p_to + p_tt; }
};

struct PayoffPair {
    double a = 0.0;  // Alice
    double b = 0.0;  // Bob
};

// Domain checks. `who` is used in error messages ("theta_a", "phi_b", ...).
void validate(const StrategyParams& s, const char* suffix);
void validate(const GameConfig& cfg);
void validate_lambda(double lambda);

// U(theta, phi) = [[e^{+i phi} cos(theta/2), sin(theta/2)],
//                  [-sin(theta/2), e^{-i phi} cos(theta/2)]]
// The sign convention is copied entry-for-entry; other conventions in the
// literature silently move the Pareto points.
ComplexMatrix strategy_operator(const StrategyParams& s);

// J(lambda) = exp(i (lambda/2) T (x) T), computed in closed form as
// cos(lambda/2) I + i sin(lambda/2) (T (x) T), exact because (T(x)T)^2 = I.
ComplexMatrix judge_operator(double lambda);

// J^dag (U_A (x) U_B) J |00>
StateVector final_state(const StrategyParams& alice, const StrategyParams& bob, const GameConfig& cfg);

// The four trigonometric amplitudes of the final state at lambda = pi/2,
// evaluated directly (no operator products).
StateVector final_state_closed_form_max_entanglement(const StrategyParams& alice, const StrategyParams& bob);

// Closed-form probabilities at any lambda in [0, pi/2].
OutcomeProbabilities outcome_probabilities_closed_form(const StrategyParams& alice, const StrategyParams& bob,
                                                       const GameConfig& cfg);

// Squared moduli of the amplitudes of final_state().
OutcomeProbabilities outcome_probabilities_circuit(const StrategyParams& alice, const StrategyParams& bob,
                                                   const GameConfig& cfg);

// a = alpha p_oo + gamma (p_ot + p_to) + beta p_tt
// b = beta  p_oo + gamma (p_ot + p_to) + alpha p_tt
PayoffPair payoffs(const OutcomeProbabilities& p, const GameConfig& cfg);

// Convenience: closed-form probabilities composed with payoffs.
PayoffPair payoffs_closed_form(const StrategyParams& alice, const StrategyParams& bob, const GameConfig& cfg);

}  // namespace qbos
