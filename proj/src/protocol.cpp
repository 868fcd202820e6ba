#include "qbos/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "probs_point.hpp"

namespace qbos {

namespace {
constexpr double pi = std::numbers::pi;
}

GameConfig GameConfig::max_entanglement() { return GameConfig{5.0, 3.0, 1.0, pi / 2}; }

void validate(const StrategyParams& s, const char* suffix) {
    const std::string tag = suffix ? suffix : "";
    if (!(s.theta >= 0.0 && s.theta <= pi))
        throw std::invalid_argument("theta" + tag + " = " + std::to_string(s.theta) + " outside [0, pi]");
    if (!(s.phi >= 0.0 && s.phi <= pi / 2))
        throw std::invalid_argument("phi" + tag + " = " + std::to_string(s.phi) + " outside [0, pi/2]");
}

void validate_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= pi / 2))
        throw std::invalid_argument("lambda = " + std::to_string(lambda) + " outside [0, pi/2]");
}

void validate(const GameConfig& cfg) {
    if (!(cfg.alpha > cfg.beta && cfg.beta > cfg.gamma))
        throw std::invalid_argument("payoff constants must obey alpha > beta > gamma");
    validate_lambda(cfg.lambda);
}

ComplexMatrix strategy_operator(const StrategyParams& s) {
    validate(s, "");
    const double c = std::cos(0.5 * s.theta);
    const double sn = std::sin(0.5 * s.theta);
    const cd eip = std::polar(1.0, s.phi);
    ComplexMatrix u(2, 2);
    u(0, 0) = eip * c;
    u(0, 1) = sn;
    u(1, 0) = -sn;
    u(1, 1) = std::conj(eip) * c;
    return u;
}

ComplexMatrix judge_operator(double lambda) {
    validate_lambda(lambda);
    const StrategyParams television{pi, 0.0};
    const ComplexMatrix tt = kron(strategy_operator(television), strategy_operator(television));
    return cd{std::cos(0.5 * lambda), 0.0} * ComplexMatrix::identity(4) + cd{0.0, std::sin(0.5 * lambda)} * tt;
}

StateVector final_state(const StrategyParams& alice, const StrategyParams& bob, const GameConfig& cfg) {
    validate(alice, "_a");
    validate(bob, "_b");
    validate_lambda(cfg.lambda);
    const ComplexMatrix judge = judge_operator(cfg.lambda);
    StateVector psi = apply(judge, StateVector::basis(0));
    psi = apply(kron(strategy_operator(alice), strategy_operator(bob)), psi);
    return apply(judge.dagger(), psi);
}

StateVector final_state_closed_form_max_entanglement(const StrategyParams& alice, const StrategyParams& bob) {
    validate(alice, "_a");
    validate(bob, "_b");
    const double ca = std::cos(0.5 * alice.theta);
    const double sa = std::sin(0.5 * alice.theta);
    const double cb = std::cos(0.5 * bob.theta);
    const double sb = std::sin(0.5 * bob.theta);
    const double sum = alice.phi + bob.phi;
    StateVector psi;
    psi[0] = ca * cb * std::cos(sum);
    psi[1] = cb * sa * std::sin(bob.phi) - ca * sb * std::cos(alice.phi);
    psi[2] = ca * sb * std::sin(alice.phi) - cb * sa * std::cos(bob.phi);
    psi[3] = sa * sb + ca * cb * std::sin(sum);
    return psi;
}

OutcomeProbabilities outcome_probabilities_closed_form(const StrategyParams& alice, const StrategyParams& bob,
                                                       const GameConfig& cfg) {
    validate(alice, "_a");
    validate(bob, "_b");
    validate_lambda(cfg.lambda);
    const detail::ProbsPoint p = detail::probs_point(alice.theta, alice.phi, bob.theta, bob.phi, cfg.lambda);
    return OutcomeProbabilities{p.p_oo, p.p_ot, p.p_to, p.p_tt};
}

OutcomeProbabilities outcome_probabilities_circuit(const StrategyParams& alice, const StrategyParams& bob,
                                                   const GameConfig& cfg) {
    const StateVector psi = final_state(alice, bob, cfg);
    return OutcomeProbabilities{std::norm(psi[0]), std::norm(psi[1]), std::norm(psi[2]), std::norm(psi[3])};
}

PayoffPair payoffs(const OutcomeProbabilities& p, const GameConfig& cfg) {
    const double shared = cfg.gamma * (p.p_ot + p.p_to);
    return PayoffPair{cfg.alpha * p.p_oo + shared + cfg.beta * p.p_tt,
                      cfg.beta * p.p_oo + shared + cfg.alpha * p.p_tt};
}

PayoffPair payoffs_closed_form(const StrategyParams& alice, const StrategyParams& bob, const GameConfig& cfg) {
    return payoffs(outcome_probabilities_closed_form(alice, bob, cfg), cfg);
}

}  // namespace qbos
