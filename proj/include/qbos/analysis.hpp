// Equilibrium and optimality machinery: Nash checks over the continuous
// strategy space, the Pareto gradient condition, the equal-payoff manifold
// reduction and its five solution families, plus the sweep generators used
// by the CLI for tables, contour and surface data.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbos/protocol.hpp"

namespace qbos {

struct StrategyProfile {
    StrategyParams alice;
    StrategyParams bob;
};

void validate(const StrategyProfile& p);

// --------------------------------------------------------------------------
// classical 2x2 game
// --------------------------------------------------------------------------

enum class PureStrategy { television, opera };
using PurePair = std::pair<PureStrategy, PureStrategy>;

// Pure-strategy Nash pairs of the classical bimatrix
//   (T,T) -> (beta, alpha)   (T,O) -> (gamma, gamma)
//   (O,T) -> (gamma, gamma)  (O,O) -> (alpha, beta)
// No ordering of the constants is assumed (a degenerate game is allowed).
std::vector<PurePair> classical_nash_pairs(double alpha, double beta, double gamma);
std::vector<PurePair> classical_nash_pairs(const GameConfig& cfg);

// --------------------------------------------------------------------------
// gradients and the Pareto condition
// --------------------------------------------------------------------------

// Finite-difference partials of each player's payoff with respect to that
// player's own parameters. Central differences of step h; one-sided at the
// domain edges, in which case the corresponding boundary flag is set.
//
// pareto_* reports the opposite-sign gradient condition
//     d$A/dxi_A = -d$B/dxi_B   (xi = theta or phi)
// It is true only when both players' xi are interior (two-sided stencils),
// the magnitudes agree within tolerance, and the common magnitude is
// nonzero; points where both rates vanish satisfy the equation only
// trivially and are not reported as Pareto-stationary.
struct GradientReport {
    StrategyProfile point;
    double h = 0.0;
    double d_a_d_theta_a = 0.0;
    double d_a_d_phi_a = 0.0;
    double d_b_d_theta_b = 0.0;
    double d_b_d_phi_b = 0.0;
    bool boundary_theta_a = false, boundary_phi_a = false;
    bool boundary_theta_b = false, boundary_phi_b = false;
    bool pareto_theta = false;
    bool pareto_phi = false;
};

GradientReport payoff_gradient(const StrategyProfile& p, const GameConfig& cfg, double h = 1e-5);

// --------------------------------------------------------------------------
// equal-payoff manifold (maximal entanglement)
// --------------------------------------------------------------------------

// (cos(S) cA cB)^2 - (sA sB + sin(S) cA cB)^2 with S = phi_A + phi_B,
// cX = cos(theta_X/2), sX = sin(theta_X/2). Zero exactly where the two
// payoffs coincide at lambda = pi/2; in fact
// (alpha - beta) * residual = $A - $B there.
double equal_payoff_residual(const StrategyProfile& p);

// Roots of the quadratic in t = tan(theta_A/2) tan(theta_B/2):
//   t^2 + 2 sin(S) t - (cos^2 S - sin^2 S) = 0
// returned as (-sin S + cos S, -sin S - cos S).
std::pair<double, double> quadratic_roots_tan_product(double phi_sum);

// Phi(S) = -cos 2S classification over S in [0, pi].
enum class PhiClass { root_of_phi, maximum_of_phi, minimum_of_phi, interior };
PhiClass phi_classifier(double phi_sum);
const char* to_string(PhiClass c);

// Piecewise equal-payoff constraint on t = tan(theta_A/2) tan(theta_B/2):
// sqrt(-cos 2S) for S in [pi/4, 3pi/4], the linear-combination branch
// -sin S + cos S outside. sqrt_branch records which case applied.
struct TanProductConstraint {
    double value = 0.0;
    bool sqrt_branch = false;
};
TanProductConstraint tan_product_constraint(double phi_sum);

// --------------------------------------------------------------------------
// solution families
// --------------------------------------------------------------------------

struct SolutionFamily {
    int id = 0;  // 1..5
    std::string constraint_description;
    StrategyProfile representative;
    PayoffPair payoff;
};

// The five equal-payoff families at lambda = pi/2, with representative
// profiles and payoffs evaluated through the standard pipeline:
//   1: theta = 0, phi_A + phi_B = pi/4        -> ((a+b)/2, (a+b)/2)
//   2: theta = 0, phi_A + phi_B = 3pi/4       -> ((a+b)/2, (a+b)/2)
//   3: tan(tA/2) = cot(tB/2), sum = pi/2      -> (beta, alpha) at tA = tB = pi/2
//   4: tan(tA/2) tan(tB/2) = 1, sum = 0       -> ((a+2g+b)/4, same)
//   5: tan(tA/2) tan(tB/2) = 1, sum = pi      -> ((a+2g+b)/4, same)
std::vector<SolutionFamily> enumerate_solution_families(const GameConfig& cfg);

// --------------------------------------------------------------------------
// Nash verification by dense grid search
// --------------------------------------------------------------------------

// Best unilateral improvement for one player over a grid_n x grid_n lattice
// covering the deviator's full (theta, phi) domain, opponent held fixed.
// Ties broken toward the lowest lattice index.
struct DeviationScan {
    double best_gain = 0.0;        // best deviation payoff minus current payoff
    StrategyParams best_move;      // lattice point achieving it
    double best_payoff = 0.0;
};

struct NashReport {
    StrategyProfile point;
    PayoffPair payoff;
    DeviationScan alice;
    DeviationScan bob;
    bool grid_nash(double tol = 1e-9) const { return alice.best_gain <= tol && bob.best_gain <= tol; }
};

NashReport nash_check_quantum(const StrategyProfile& p, const GameConfig& cfg, int grid_n);

// --------------------------------------------------------------------------
// entanglement threshold
// --------------------------------------------------------------------------

// Smallest lambda in the grid for which some theta = 0 profile reaches the
// equal payoff (alpha+beta)/2 within 1e-6 for both players. Empty result if
// no grid point qualifies; throws on an empty grid.
std::optional<double> entanglement_threshold_scan(const GameConfig& cfg_template,
                                                  const std::vector<double>& lambda_grid);

// --------------------------------------------------------------------------
// sweeps
// --------------------------------------------------------------------------

// Axis names: theta_a, phi_a, theta_b, phi_b for plain angle grids, or the
// composite axes composite_a / composite_b / composite_diag. A composite
// coordinate s runs over [0, 2]: s in [0,1] moves theta from pi to 0 at
// phi = 0 (Television -> Opera), s in [1,2] moves phi from 0 to pi/2 at
// theta = 0 (Opera -> Q).
struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
    double value(int i) const;  // i-th grid coordinate
};

struct SweepPoint {
    std::array<double, 4> coords{};  // axis coordinates, axes order
    StrategyProfile profile;
    PayoffPair payoff;
};

struct SweepGrid {
    std::vector<SweepAxis> axes;
    std::vector<SweepPoint> cells;  // row-major, last axis fastest
};

StrategyParams composite_axis_point(double s);
SweepGrid sweep_payoffs(const std::vector<SweepAxis>& axes, const GameConfig& cfg);

// Level-set data for the equal-payoff constraint:
// tan(theta_A/2) tan(theta_B/2) over a theta grid.
struct TangentContourPoint {
    double theta_a = 0.0;
    double theta_b = 0.0;
    double tan_product = 0.0;
};
std::vector<TangentContourPoint> tangent_contour_grid(int points);

// --------------------------------------------------------------------------
// bimatrix tables
// --------------------------------------------------------------------------

// Row/column strategy set of the quantum bimatrix, in table order:
// T, O, U(0, pi/8), U(0, 3pi/8), Q.
const std::array<StrategyParams, 5>& bimatrix_strategies();
const std::array<const char*, 5>& bimatrix_labels();

// 5x5 payoff table at the given config, rows Alice / columns Bob, built by
// composing the standard circuit pipeline per cell (no table-specific path).
std::array<std::array<PayoffPair, 5>, 5> bimatrix_table(const GameConfig& cfg);

// The classical 2x2 table (rows/cols ordered T, O) straight from the game
// constants.
std::array<std::array<PayoffPair, 2>, 2> classical_table(const GameConfig& cfg);

// The seven symmetric strategy settings realized in the experiment, in
// the order they are usually reported.
const std::array<StrategyProfile, 7>& experiment_profiles();

}  // namespace qbos
