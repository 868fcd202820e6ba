#include "qbos/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbos/kernels.hpp"

namespace qbos {

namespace {
constexpr double pi = std::numbers::pi;
}

void validate(const StrategyProfile& p) {
    validate(p.alice, "_a");
    validate(p.bob, "_b");
}

// --------------------------------------------------------------------------
// classical game
// --------------------------------------------------------------------------

std::vector<PurePair> classical_nash_pairs(double alpha, double beta, double gamma) {
    const auto pay = [&](PureStrategy a, PureStrategy b) -> PayoffPair {
        if (a == PureStrategy::television && b == PureStrategy::television) return {beta, alpha};
        if (a == PureStrategy::opera && b == PureStrategy::opera) return {alpha, beta};
        return {gamma, gamma};
    };
    const std::array<PureStrategy, 2> options = {PureStrategy::television, PureStrategy::opera};
    std::vector<PurePair> nash;
    for (PureStrategy a : options)
        for (PureStrategy b : options) {
            bool stable = true;
            for (PureStrategy a2 : options)
                if (pay(a2, b).a > pay(a, b).a) stable = false;
            for (PureStrategy b2 : options)
                if (pay(a, b2).b > pay(a, b).b) stable = false;
            if (stable) nash.emplace_back(a, b);
        }
    return nash;
}

std::vector<PurePair> classical_nash_pairs(const GameConfig& cfg) {
    validate(cfg);
    return classical_nash_pairs(cfg.alpha, cfg.beta, cfg.gamma);
}

// --------------------------------------------------------------------------
// gradients
// --------------------------------------------------------------------------

namespace {

struct Partial {
    double value = 0.0;
    bool boundary = false;
};

// d payoff / d x at x0 over [lo, hi]; central when possible, one-sided of
// the same O(h^2) order at the edges.
template <typename F>
Partial partial(F&& f, double x0, double lo, double hi, double h) {
    Partial out;
    if (x0 - h >= lo && x0 + h <= hi) {
        out.value = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
    } else if (x0 + 2.0 * h <= hi) {
        out.value = (-3.0 * f(x0) + 4.0 * f(x0 + h) - f(x0 + 2.0 * h)) / (2.0 * h);
        out.boundary = true;
    } else if (x0 - 2.0 * h >= lo) {
        out.value = (3.0 * f(x0) - 4.0 * f(x0 - h) + f(x0 - 2.0 * h)) / (2.0 * h);
        out.boundary = true;
    } else {
        throw std::invalid_argument("finite-difference step too large for the parameter domain");
    }
    return out;
}

}  // namespace

GradientReport payoff_gradient(const StrategyProfile& p, const GameConfig& cfg, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step h must be positive");
    validate(p);
    validate_lambda(cfg.lambda);

    GradientReport rep;
    rep.point = p;
    rep.h = h;

    const auto pay_a = [&](const StrategyParams& a) { return payoffs_closed_form(a, p.bob, cfg).a; };
    const auto pay_b = [&](const StrategyParams& b) { return payoffs_closed_form(p.alice, b, cfg).b; };

    const Partial da_dta = partial([&](double t) { return pay_a({t, p.alice.phi}); }, p.alice.theta, 0.0, pi, h);
    const Partial da_dpa = partial([&](double f) { return pay_a({p.alice.theta, f}); }, p.alice.phi, 0.0, pi / 2, h);
    const Partial db_dtb = partial([&](double t) { return pay_b({t, p.bob.phi}); }, p.bob.theta, 0.0, pi, h);
    const Partial db_dpb = partial([&](double f) { return pay_b({p.bob.theta, f}); }, p.bob.phi, 0.0, pi / 2, h);

    rep.d_a_d_theta_a = da_dta.value;
    rep.d_a_d_phi_a = da_dpa.value;
    rep.d_b_d_theta_b = db_dtb.value;
    rep.d_b_d_phi_b = db_dpb.value;
    rep.boundary_theta_a = da_dta.boundary;
    rep.boundary_phi_a = da_dpa.boundary;
    rep.boundary_theta_b = db_dtb.boundary;
    rep.boundary_phi_b = db_dpb.boundary;

    const auto opposite = [&](const Partial& da, const Partial& db) {
        if (da.boundary || db.boundary) return false;
        const double mag = std::max(std::abs(da.value), std::abs(db.value));
        const double tol = 10.0 * h * h * std::max(1.0, mag);
        return mag > tol && std::abs(da.value + db.value) <= tol;
    };
    rep.pareto_theta = opposite(da_dta, db_dtb);
    rep.pareto_phi = opposite(da_dpa, db_dpb);
    return rep;
}

// --------------------------------------------------------------------------
// equal-payoff manifold
// --------------------------------------------------------------------------

double equal_payoff_residual(const StrategyProfile& p) {
    validate(p);
    const double ca = std::cos(0.5 * p.alice.theta);
    const double sa = std::sin(0.5 * p.alice.theta);
    const double cb = std::cos(0.5 * p.bob.theta);
    const double sb = std::sin(0.5 * p.bob.theta);
    const double sum = p.alice.phi + p.bob.phi;
    const double first = std::cos(sum) * ca * cb;
    const double second = sa * sb + std::sin(sum) * ca * cb;
    return first * first - second * second;
}

std::pair<double, double> quadratic_roots_tan_product(double phi_sum) {
    if (!(phi_sum >= 0.0 && phi_sum <= pi)) throw std::invalid_argument("phi sum outside [0, pi]");
    const double s = std::sin(phi_sum);
    const double c = std::cos(phi_sum);
    return {-s + c, -s - c};
}

PhiClass phi_classifier(double phi_sum) {
    if (!(phi_sum >= 0.0 && phi_sum <= pi)) throw std::invalid_argument("phi sum outside [0, pi]");
    constexpr double tol = 1e-12;
    if (std::abs(phi_sum - pi / 4) <= tol || std::abs(phi_sum - 3 * pi / 4) <= tol) return PhiClass::root_of_phi;
    if (std::abs(phi_sum - pi / 2) <= tol) return PhiClass::maximum_of_phi;
    if (phi_sum <= tol || std::abs(phi_sum - pi) <= tol) return PhiClass::minimum_of_phi;
    return PhiClass::interior;
}

const char* to_string(PhiClass c) {
    switch (c) {
        case PhiClass::root_of_phi: return "root_of_phi";
        case PhiClass::maximum_of_phi: return "maximum_of_phi";
        case PhiClass::minimum_of_phi: return "minimum_of_phi";
        case PhiClass::interior: return "interior";
    }
    return "unknown";
}

// Outside the sqrt window the constraint falls back to the quadratic root
// itself. The root -sin(S) + cos(S) is the nonnegative one on [0, pi/4];
// past 3pi/4 the nonnegative (and continuous) root is -sin(S) - cos(S).
// tan(theta/2) >= 0 over the strategy domain, so the negative root never
// corresponds to a profile.
TanProductConstraint tan_product_constraint(double phi_sum) {
    if (!(phi_sum >= 0.0 && phi_sum <= pi)) throw std::invalid_argument("phi sum outside [0, pi]");
    TanProductConstraint out;
    if (phi_sum >= pi / 4 && phi_sum <= 3 * pi / 4) {
        out.sqrt_branch = true;
        out.value = std::sqrt(std::max(0.0, -std::cos(2.0 * phi_sum)));
    } else {
        out.sqrt_branch = false;
        const auto [low_root, high_root] = quadratic_roots_tan_product(phi_sum);
        out.value = phi_sum < pi / 4 ? low_root : high_root;
    }
    return out;
}

// --------------------------------------------------------------------------
// solution families
// --------------------------------------------------------------------------

std::vector<SolutionFamily> enumerate_solution_families(const GameConfig& cfg) {
    validate(cfg);
    GameConfig at_max = cfg;
    at_max.lambda = pi / 2;  // the reduction assumes maximal entanglement

    const auto family = [&](int id, const char* text, StrategyProfile rep) {
        SolutionFamily f;
        f.id = id;
        f.constraint_description = text;
        f.representative = rep;
        f.payoff = payoffs_closed_form(rep.alice, rep.bob, at_max);
        return f;
    };

    return {
        family(1, "theta_a = theta_b = 0, phi_a + phi_b = pi/4", {{0.0, pi / 8}, {0.0, pi / 8}}),
        family(2, "theta_a = theta_b = 0, phi_a + phi_b = 3pi/4", {{0.0, 3 * pi / 8}, {0.0, 3 * pi / 8}}),
        family(3, "tan(theta_a/2) = cot(theta_b/2), phi_a + phi_b = pi/2", {{pi / 2, pi / 4}, {pi / 2, pi / 4}}),
        family(4, "tan(theta_a/2) tan(theta_b/2) = 1, phi_a + phi_b = 0", {{pi / 2, 0.0}, {pi / 2, 0.0}}),
        family(5, "tan(theta_a/2) tan(theta_b/2) = 1, phi_a + phi_b = pi", {{pi / 2, pi / 2}, {pi / 2, pi / 2}}),
    };
}

// --------------------------------------------------------------------------
// Nash grid search
// --------------------------------------------------------------------------

namespace {

DeviationScan scan_deviations(const StrategyParams& opponent, bool deviator_is_alice, double current,
                              const GameConfig& cfg, int grid_n) {
    const std::size_t n = static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n);
    std::vector<double> ta(n), pa(n), tb(n), pb(n), lam(n), pay(n);
    std::size_t idx = 0;
    for (int i = 0; i < grid_n; ++i) {
        const double theta = pi * i / (grid_n - 1);
        for (int j = 0; j < grid_n; ++j, ++idx) {
            const double phi = (pi / 2) * j / (grid_n - 1);
            if (deviator_is_alice) {
                ta[idx] = theta; pa[idx] = phi; tb[idx] = opponent.theta; pb[idx] = opponent.phi;
            } else {
                ta[idx] = opponent.theta; pa[idx] = opponent.phi; tb[idx] = theta; pb[idx] = phi;
            }
            lam[idx] = cfg.lambda;
        }
    }
    kernels::Batch batch;
    batch.theta_a = ta.data(); batch.phi_a = pa.data();
    batch.theta_b = tb.data(); batch.phi_b = pb.data();
    batch.lambda = lam.data();
    if (deviator_is_alice) batch.payoff_a = pay.data(); else batch.payoff_b = pay.data();
    batch.n = n;
    kernels::evaluate(batch, cfg.alpha, cfg.beta, cfg.gamma);

    std::size_t best = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (pay[k] > pay[best]) best = k;  // strict: lowest index wins ties

    DeviationScan out;
    out.best_payoff = pay[best];
    out.best_gain = pay[best] - current;
    const int bi = static_cast<int>(best) / grid_n;
    const int bj = static_cast<int>(best) % grid_n;
    out.best_move = {pi * bi / (grid_n - 1), (pi / 2) * bj / (grid_n - 1)};
    return out;
}

}  // namespace

NashReport nash_check_quantum(const StrategyProfile& p, const GameConfig& cfg, int grid_n) {
    if (grid_n < 9) throw std::invalid_argument("nash grid must have at least 9 points per axis");
    validate(p);
    NashReport rep;
    rep.point = p;
    rep.payoff = payoffs_closed_form(p.alice, p.bob, cfg);
    rep.alice = scan_deviations(p.bob, true, rep.payoff.a, cfg, grid_n);
    rep.bob = scan_deviations(p.alice, false, rep.payoff.b, cfg, grid_n);
    return rep;
}

// --------------------------------------------------------------------------
// entanglement threshold
// --------------------------------------------------------------------------

std::optional<double> entanglement_threshold_scan(const GameConfig& cfg_template,
                                                  const std::vector<double>& lambda_grid) {
    if (lambda_grid.empty()) throw std::invalid_argument("lambda grid must not be empty");

    // theta = 0 payoffs depend only on the phi sum; scan it over [0, pi]
    // with a grid that contains pi/2 exactly (the lone solution at the
    // threshold).
    constexpr int kSumSteps = 256;
    std::vector<double> lambdas = lambda_grid;
    std::sort(lambdas.begin(), lambdas.end());
    const double target = 0.5 * (cfg_template.alpha + cfg_template.beta);

    for (double lambda : lambdas) {
        validate_lambda(lambda);
        GameConfig cfg = cfg_template;
        cfg.lambda = lambda;
        for (int j = 0; j <= kSumSteps; ++j) {
            const double sum = pi * j / kSumSteps;
            const StrategyParams half{0.0, 0.5 * sum};
            const PayoffPair pay = payoffs_closed_form(half, half, cfg);
            if (std::abs(pay.a - target) <= 1e-6 && std::abs(pay.b - target) <= 1e-6) return lambda;
        }
    }
    return std::nullopt;
}

// --------------------------------------------------------------------------
// sweeps
// --------------------------------------------------------------------------

double SweepAxis::value(int i) const {
    if (count == 1) return start;
    return start + (stop - start) * i / (count - 1);
}

StrategyParams composite_axis_point(double s) {
    if (!(s >= 0.0 && s <= 2.0)) throw std::invalid_argument("composite coordinate outside [0, 2]");
    if (s <= 1.0) return {pi * (1.0 - s), 0.0};
    return {0.0, (pi / 2) * (s - 1.0)};
}

namespace {

enum class AxisKind { theta_a, phi_a, theta_b, phi_b, composite_a, composite_b, composite_diag };

AxisKind axis_kind(const std::string& name) {
    if (name == "theta_a") return AxisKind::theta_a;
    if (name == "phi_a") return AxisKind::phi_a;
    if (name == "theta_b") return AxisKind::theta_b;
    if (name == "phi_b") return AxisKind::phi_b;
    if (name == "composite_a") return AxisKind::composite_a;
    if (name == "composite_b") return AxisKind::composite_b;
    if (name == "composite_diag") return AxisKind::composite_diag;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

void check_axis(const SweepAxis& axis, AxisKind kind) {
    if (axis.count < 1) throw std::invalid_argument("sweep axis needs at least one point: " + axis.name);
    if (axis.count > 1 && !(axis.stop > axis.start))
        throw std::invalid_argument("sweep axis needs a positive step: " + axis.name);
    double lo = 0.0, hi = 0.0;
    switch (kind) {
        case AxisKind::theta_a:
        case AxisKind::theta_b: hi = pi; break;
        case AxisKind::phi_a:
        case AxisKind::phi_b: hi = pi / 2; break;
        default: hi = 2.0; break;
    }
    if (axis.start < lo - 1e-12 || std::max(axis.start, axis.stop) > hi + 1e-12)
        throw std::invalid_argument("sweep axis outside parameter domain: " + axis.name);
}

}  // namespace

SweepGrid sweep_payoffs(const std::vector<SweepAxis>& axes, const GameConfig& cfg) {
    if (axes.empty() || axes.size() > 4) throw std::invalid_argument("sweep needs between 1 and 4 axes");
    validate_lambda(cfg.lambda);

    std::vector<AxisKind> kinds;
    bool composite = false, plain = false;
    for (const SweepAxis& axis : axes) {
        const AxisKind kind = axis_kind(axis.name);
        check_axis(axis, kind);
        composite |= (kind == AxisKind::composite_a || kind == AxisKind::composite_b ||
                      kind == AxisKind::composite_diag);
        plain |= (kind == AxisKind::theta_a || kind == AxisKind::phi_a || kind == AxisKind::theta_b ||
                  kind == AxisKind::phi_b);
        kinds.push_back(kind);
    }
    if (composite && plain) throw std::invalid_argument("composite and plain angle axes cannot be mixed");

    std::size_t total = 1;
    for (const SweepAxis& axis : axes) total *= static_cast<std::size_t>(axis.count);

    SweepGrid grid;
    grid.axes = axes;
    grid.cells.resize(total);

    std::vector<double> ta(total), pa(total), tb(total), pb(total), lam(total), pay_a(total), pay_b(total);
    std::vector<int> index(axes.size(), 0);
    for (std::size_t cell = 0; cell < total; ++cell) {
        StrategyProfile prof;  // unswept angles stay at 0
        std::array<double, 4> coords{};
        for (std::size_t d = 0; d < axes.size(); ++d) {
            const double v = axes[d].value(index[d]);
            coords[d] = v;
            switch (kinds[d]) {
                case AxisKind::theta_a: prof.alice.theta = v; break;
                case AxisKind::phi_a: prof.alice.phi = v; break;
                case AxisKind::theta_b: prof.bob.theta = v; break;
                case AxisKind::phi_b: prof.bob.phi = v; break;
                case AxisKind::composite_a: prof.alice = composite_axis_point(v); break;
                case AxisKind::composite_b: prof.bob = composite_axis_point(v); break;
                case AxisKind::composite_diag:
                    prof.alice = composite_axis_point(v);
                    prof.bob = prof.alice;
                    break;
            }
        }
        validate(prof);
        grid.cells[cell].coords = coords;
        grid.cells[cell].profile = prof;
        ta[cell] = prof.alice.theta;
        pa[cell] = prof.alice.phi;
        tb[cell] = prof.bob.theta;
        pb[cell] = prof.bob.phi;
        lam[cell] = cfg.lambda;
        // row-major increment, last axis fastest
        for (std::size_t d = axes.size(); d-- > 0;) {
            if (++index[d] < axes[d].count) break;
            index[d] = 0;
        }
    }

    kernels::Batch batch;
    batch.theta_a = ta.data(); batch.phi_a = pa.data();
    batch.theta_b = tb.data(); batch.phi_b = pb.data();
    batch.lambda = lam.data();
    batch.payoff_a = pay_a.data(); batch.payoff_b = pay_b.data();
    batch.n = total;
    kernels::evaluate(batch, cfg.alpha, cfg.beta, cfg.gamma);

    for (std::size_t cell = 0; cell < total; ++cell) grid.cells[cell].payoff = {pay_a[cell], pay_b[cell]};
    return grid;
}

std::vector<TangentContourPoint> tangent_contour_grid(int points) {
    if (points < 2) throw std::invalid_argument("tangent contour grid needs at least 2 points per axis");
    std::vector<TangentContourPoint> out;
    out.reserve(static_cast<std::size_t>(points) * points);
    for (int i = 0; i < points; ++i) {
        const double theta_a = pi * i / (points - 1);
        for (int j = 0; j < points; ++j) {
            const double theta_b = pi * j / (points - 1);
            out.push_back({theta_a, theta_b, std::tan(0.5 * theta_a) * std::tan(0.5 * theta_b)});
        }
    }
    return out;
}

// --------------------------------------------------------------------------
// tables
// --------------------------------------------------------------------------

const std::array<StrategyParams, 5>& bimatrix_strategies() {
    static const std::array<StrategyParams, 5> set = {
        StrategyParams{pi, 0.0},        // T
        StrategyParams{0.0, 0.0},       // O
        StrategyParams{0.0, pi / 8},    // U(0, pi/8)
        StrategyParams{0.0, 3 * pi / 8},// U(0, 3pi/8)
        StrategyParams{0.0, pi / 2},    // Q
    };
    return set;
}

const std::array<const char*, 5>& bimatrix_labels() {
    static const std::array<const char*, 5> labels = {"T", "O", "U_pi8", "U_3pi8", "Q"};
    return labels;
}

std::array<std::array<PayoffPair, 5>, 5> bimatrix_table(const GameConfig& cfg) {
    validate(cfg);
    std::array<std::array<PayoffPair, 5>, 5> table;
    const auto& set = bimatrix_strategies();
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c)
            table[r][c] = payoffs(outcome_probabilities_circuit(set[r], set[c], cfg), cfg);
    return table;
}

std::array<std::array<PayoffPair, 2>, 2> classical_table(const GameConfig& cfg) {
    validate(cfg);
    return {{{PayoffPair{cfg.beta, cfg.alpha}, PayoffPair{cfg.gamma, cfg.gamma}},
             {PayoffPair{cfg.gamma, cfg.gamma}, PayoffPair{cfg.alpha, cfg.beta}}}};
}

const std::array<StrategyProfile, 7>& experiment_profiles() {
    static const std::array<StrategyProfile, 7> rows = {
        StrategyProfile{{pi, 0.0}, {pi, 0.0}},
        StrategyProfile{{pi / 2, 0.0}, {pi / 2, 0.0}},
        StrategyProfile{{0.0, 0.0}, {0.0, 0.0}},
        StrategyProfile{{0.0, pi / 8}, {0.0, pi / 8}},
        StrategyProfile{{0.0, pi / 4}, {0.0, pi / 4}},
        StrategyProfile{{0.0, 3 * pi / 8}, {0.0, 3 * pi / 8}},
        StrategyProfile{{0.0, pi / 2}, {0.0, pi / 2}},
    };
    return rows;
}

}  // namespace qbos
