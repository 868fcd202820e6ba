#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qbos/analysis.hpp"
#include "qbos/kernels.hpp"
#include "qbos/nmr.hpp"
#include "qbos/protocol.hpp"

namespace qbos::cli {

namespace {

constexpr double pi = std::numbers::pi;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct InternalCheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// options shared by all subcommands
// ---------------------------------------------------------------------------

struct Options {
    double alpha = 5.0;
    double beta = 3.0;
    double gamma = 1.0;
    std::string lambda = "pi/2";
    std::string format = "csv";
    std::string output;
    unsigned long seed = 1234567;

    std::string theta_a = "0", phi_a = "0", theta_b = "0", phi_b = "0";

    // sweep
    std::string mode = "grid";
    int points = 101;
    std::string range_theta_a, range_phi_a, range_theta_b, range_phi_b;
    bool fig6 = false;

    // analyze
    int grid_n = 101;
    double fd_step = 1e-5;
    std::string lambda_step = "pi/64";

    GameConfig game() const {
        GameConfig cfg{alpha, beta, gamma, parse_angle(lambda)};
        validate(cfg);
        return cfg;
    }
    StrategyProfile profile() const {
        StrategyProfile p{{parse_angle(theta_a), parse_angle(phi_a)}, {parse_angle(theta_b), parse_angle(phi_b)}};
        validate(p.alice, "_a");
        validate(p.bob, "_b");
        return p;
    }
};

std::ostream& open_output(const Options& opt, std::ofstream& file) {
    if (opt.output.empty()) return std::cout;
    file.open(opt.output, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + opt.output);
    return file;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

json config_json(const Options& opt) {
    json j;
    j["alpha"] = opt.alpha;
    j["beta"] = opt.beta;
    j["gamma"] = opt.gamma;
    j["lambda"] = parse_angle(opt.lambda);
    j["seed"] = opt.seed;
    return j;
}

void emit_json(std::ostream& os, const Options& opt, json rows) {
    json doc;
    doc["config"] = config_json(opt);
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

json probs_json(const OutcomeProbabilities& p) {
    json j;
    j["p_oo"] = p.p_oo;
    j["p_ot"] = p.p_ot;
    j["p_to"] = p.p_to;
    j["p_tt"] = p.p_tt;
    return j;
}

// ---------------------------------------------------------------------------
// payoff
// ---------------------------------------------------------------------------

int cmd_payoff(const Options& opt) {
    const GameConfig cfg = opt.game();
    const StrategyProfile prof = opt.profile();

    const OutcomeProbabilities closed = outcome_probabilities_closed_form(prof.alice, prof.bob, cfg);
    const OutcomeProbabilities circuit = outcome_probabilities_circuit(prof.alice, prof.bob, cfg);
    const double mismatch = std::max({std::abs(closed.p_oo - circuit.p_oo), std::abs(closed.p_ot - circuit.p_ot),
                                      std::abs(closed.p_to - circuit.p_to), std::abs(closed.p_tt - circuit.p_tt)});
    if (mismatch > 1e-9)
        throw InternalCheckError("closed-form and circuit probabilities disagree by " + format_sig(mismatch));
    const PayoffPair pay = payoffs(closed, cfg);

    std::ofstream file;
    std::ostream& os = open_output(opt, file);
    if (opt.format == "json") {
        json row;
        row["theta_a"] = prof.alice.theta;
        row["phi_a"] = prof.alice.phi;
        row["theta_b"] = prof.bob.theta;
        row["phi_b"] = prof.bob.phi;
        row["probabilities"] = probs_json(closed);
        row["payoff_a"] = pay.a;
        row["payoff_b"] = pay.b;
        emit_json(os, opt, json::array({row}));
    } else if (opt.format == "csv") {
        os << "theta_a,phi_a,theta_b,phi_b,lambda,p_oo,p_ot,p_to,p_tt,payoff_a,payoff_b\n"
           << format_sig(prof.alice.theta) << ',' << format_sig(prof.alice.phi) << ','
           << format_sig(prof.bob.theta) << ',' << format_sig(prof.bob.phi) << ',' << format_sig(cfg.lambda)
           << ',' << format_sig(closed.p_oo) << ',' << format_sig(closed.p_ot) << ',' << format_sig(closed.p_to)
           << ',' << format_sig(closed.p_tt) << ',' << format_sig(pay.a) << ',' << format_sig(pay.b) << '\n';
    } else {
        os << "p_oo " << format_sig(closed.p_oo) << '\n'
           << "p_ot " << format_sig(closed.p_ot) << '\n'
           << "p_to " << format_sig(closed.p_to) << '\n'
           << "p_tt " << format_sig(closed.p_tt) << '\n'
           << "payoff_a " << format_sig(pay.a) << '\n'
           << "payoff_b " << format_sig(pay.b) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

template <std::size_t N>
void write_matrix_csv(std::ostream& os, const std::array<const char*, N>& labels,
                      const std::array<std::array<PayoffPair, N>, N>& table) {
    os << "alice";
    for (const char* l : labels) os << ',' << l << "_a," << l << "_b";
    for (const char* l : labels) os << ',' << l << "_a_disp," << l << "_b_disp";
    os << '\n';
    for (std::size_t r = 0; r < N; ++r) {
        os << labels[r];
        for (std::size_t c = 0; c < N; ++c) os << ',' << format_sig(table[r][c].a) << ',' << format_sig(table[r][c].b);
        for (std::size_t c = 0; c < N; ++c) os << ',' << round_display(table[r][c].a) << ',' << round_display(table[r][c].b);
        os << '\n';
    }
}

template <std::size_t N>
json matrix_json(const std::array<const char*, N>& labels, const std::array<std::array<PayoffPair, N>, N>& table) {
    json rows = json::array();
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) {
            json row;
            row["alice"] = labels[r];
            row["bob"] = labels[c];
            row["payoff_a"] = table[r][c].a;
            row["payoff_b"] = table[r][c].b;
            row["payoff_a_disp"] = round_display(table[r][c].a);
            row["payoff_b_disp"] = round_display(table[r][c].b);
            rows.push_back(std::move(row));
        }
    return rows;
}

int cmd_table(const Options& opt, const std::string& which) {
    const GameConfig cfg = opt.game();
    std::ofstream file;
    std::ostream& os = open_output(opt, file);

    if (which == "classical") {
        static const std::array<const char*, 2> labels = {"T", "O"};
        const auto table = classical_table(cfg);
        if (opt.format == "json")
            emit_json(os, opt, matrix_json(labels, table));
        else
            write_matrix_csv(os, labels, table);
        return kExitOk;
    }
    if (which == "bimatrix") {
        const auto table = bimatrix_table(cfg);
        if (opt.format == "json")
            emit_json(os, opt, matrix_json(bimatrix_labels(), table));
        else
            write_matrix_csv(os, bimatrix_labels(), table);
        return kExitOk;
    }
    if (which == "theory-column") {
        GameConfig at_max = cfg;
        at_max.lambda = pi / 2;
        json rows = json::array();
        if (opt.format != "json")
            os << "theta_a,phi_a,theta_b,phi_b,payoff_a,payoff_b,payoff_a_disp,payoff_b_disp\n";
        for (const StrategyProfile& prof : experiment_profiles()) {
            const PayoffPair pay = payoffs_closed_form(prof.alice, prof.bob, at_max);
            if (opt.format == "json") {
                json row;
                row["theta_a"] = prof.alice.theta;
                row["phi_a"] = prof.alice.phi;
                row["theta_b"] = prof.bob.theta;
                row["phi_b"] = prof.bob.phi;
                row["payoff_a"] = pay.a;
                row["payoff_b"] = pay.b;
                row["payoff_a_disp"] = round_display(pay.a);
                row["payoff_b_disp"] = round_display(pay.b);
                rows.push_back(std::move(row));
            } else {
                os << format_sig(prof.alice.theta) << ',' << format_sig(prof.alice.phi) << ','
                   << format_sig(prof.bob.theta) << ',' << format_sig(prof.bob.phi) << ',' << format_sig(pay.a)
                   << ',' << format_sig(pay.b) << ',' << round_display(pay.a) << ',' << round_display(pay.b)
                   << '\n';
            }
        }
        if (opt.format == "json") emit_json(os, opt, std::move(rows));
        return kExitOk;
    }
    throw CLI::ValidationError("table", "unknown table: " + which);
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

SweepAxis parse_axis(const std::string& name, const std::string& text, double fallback_lo, double fallback_hi,
                     int default_count) {
    SweepAxis axis;
    axis.name = name;
    if (text.empty()) {
        axis.start = fallback_lo;
        axis.stop = fallback_hi;
        axis.count = default_count;
        return axis;
    }
    const auto first = text.find(':');
    if (first == std::string::npos) {
        axis.start = axis.stop = parse_angle(text);
        axis.count = 1;
        return axis;
    }
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos)
        throw std::invalid_argument("axis range must be <value> or <start>:<stop>:<count>: " + text);
    axis.start = parse_angle(text.substr(0, first));
    axis.stop = parse_angle(text.substr(first + 1, second - first - 1));
    try {
        std::size_t used = 0;
        const std::string tail = text.substr(second + 1);
        axis.count = std::stoi(tail, &used);
        if (used != tail.size()) throw std::invalid_argument("");
    } catch (...) {
        throw std::invalid_argument("axis count must be an integer: " + text);
    }
    return axis;
}

int cmd_sweep(const Options& opt) {
    const GameConfig cfg = opt.game();
    std::ofstream file;
    std::ostream& os = open_output(opt, file);

    if (opt.mode == "tangent-contour") {
        const auto grid = tangent_contour_grid(opt.points);
        if (opt.format == "json") {
            json rows = json::array();
            for (const auto& p : grid) {
                json row;
                row["theta_a"] = p.theta_a;
                row["theta_b"] = p.theta_b;
                row["tan_product"] = p.tan_product;
                rows.push_back(std::move(row));
            }
            emit_json(os, opt, std::move(rows));
        } else {
            os << "theta_a,theta_b,tan_product\n";
            for (const auto& p : grid)
                os << format_sig(p.theta_a) << ',' << format_sig(p.theta_b) << ',' << format_sig(p.tan_product)
                   << '\n';
        }
        return kExitOk;
    }

    std::vector<SweepAxis> axes;
    int coord_columns = 0;
    if (opt.mode == "composite-diagonal") {
        axes.push_back({"composite_diag", 0.0, 2.0, opt.points});
        coord_columns = 1;
    } else if (opt.mode == "composite") {
        axes.push_back({"composite_a", 0.0, 2.0, opt.points});
        axes.push_back({"composite_b", 0.0, 2.0, opt.points});
        coord_columns = 2;
    } else if (opt.mode == "grid") {
        if (opt.fig6) {
            const int n = opt.points;
            axes.push_back(parse_axis("theta_a", opt.range_theta_a, 0.0, pi, n));
            axes.push_back(parse_axis("phi_a", opt.range_phi_a, 0.0, pi / 2, n));
            axes.push_back(parse_axis("theta_b", opt.range_theta_b.empty() ? opt.theta_b : opt.range_theta_b,
                                      0.0, 0.0, 1));
            axes.push_back(
                parse_axis("phi_b", opt.range_phi_b.empty() ? opt.phi_b : opt.range_phi_b, 0.0, 0.0, 1));
        } else {
            axes.push_back(parse_axis("theta_a", opt.range_theta_a.empty() ? opt.theta_a : opt.range_theta_a,
                                      0.0, 0.0, 1));
            axes.push_back(
                parse_axis("phi_a", opt.range_phi_a.empty() ? opt.phi_a : opt.range_phi_a, 0.0, 0.0, 1));
            axes.push_back(parse_axis("theta_b", opt.range_theta_b.empty() ? opt.theta_b : opt.range_theta_b,
                                      0.0, 0.0, 1));
            axes.push_back(
                parse_axis("phi_b", opt.range_phi_b.empty() ? opt.phi_b : opt.range_phi_b, 0.0, 0.0, 1));
        }
    } else {
        throw CLI::ValidationError("sweep", "unknown sweep mode: " + opt.mode);
    }

    const SweepGrid grid = sweep_payoffs(axes, cfg);

    if (opt.format == "json") {
        json rows = json::array();
        for (const SweepPoint& cell : grid.cells) {
            json row;
            for (int d = 0; d < coord_columns; ++d)
                row[coord_columns == 1 ? "coord" : (d == 0 ? "coord_a" : "coord_b")] = cell.coords[d];
            row["theta_a"] = cell.profile.alice.theta;
            row["phi_a"] = cell.profile.alice.phi;
            row["theta_b"] = cell.profile.bob.theta;
            row["phi_b"] = cell.profile.bob.phi;
            row["lambda"] = cfg.lambda;
            row["payoff_a"] = cell.payoff.a;
            row["payoff_b"] = cell.payoff.b;
            rows.push_back(std::move(row));
        }
        emit_json(os, opt, std::move(rows));
    } else {
        if (coord_columns == 1) os << "coord,";
        if (coord_columns == 2) os << "coord_a,coord_b,";
        os << "theta_a,phi_a,theta_b,phi_b,lambda,payoff_a,payoff_b\n";
        for (const SweepPoint& cell : grid.cells) {
            for (int d = 0; d < coord_columns; ++d) os << format_sig(cell.coords[d]) << ',';
            os << format_sig(cell.profile.alice.theta) << ',' << format_sig(cell.profile.alice.phi) << ','
               << format_sig(cell.profile.bob.theta) << ',' << format_sig(cell.profile.bob.phi) << ','
               << format_sig(cfg.lambda) << ',' << format_sig(cell.payoff.a) << ',' << format_sig(cell.payoff.b)
               << '\n';
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

int cmd_analyze(const Options& opt, const std::string& what) {
    const GameConfig cfg = opt.game();
    std::ofstream file;
    std::ostream& os = open_output(opt, file);

    if (what == "families") {
        const auto families = enumerate_solution_families(cfg);
        if (opt.format == "json") {
            json rows = json::array();
            for (const SolutionFamily& f : families) {
                json row;
                row["id"] = f.id;
                row["constraint"] = f.constraint_description;
                row["theta_a"] = f.representative.alice.theta;
                row["phi_a"] = f.representative.alice.phi;
                row["theta_b"] = f.representative.bob.theta;
                row["phi_b"] = f.representative.bob.phi;
                row["payoff_a"] = f.payoff.a;
                row["payoff_b"] = f.payoff.b;
                rows.push_back(std::move(row));
            }
            emit_json(os, opt, std::move(rows));
        } else {
            os << "id,constraint,theta_a,phi_a,theta_b,phi_b,payoff_a,payoff_b\n";
            for (const SolutionFamily& f : families)
                os << f.id << ',' << csv_escape(f.constraint_description) << ','
                   << format_sig(f.representative.alice.theta) << ',' << format_sig(f.representative.alice.phi)
                   << ',' << format_sig(f.representative.bob.theta) << ','
                   << format_sig(f.representative.bob.phi) << ',' << format_sig(f.payoff.a) << ','
                   << format_sig(f.payoff.b) << '\n';
        }
        return kExitOk;
    }

    if (what == "nash") {
        std::vector<StrategyProfile> points;
        const auto& set = bimatrix_strategies();
        for (const StrategyParams& a : set)
            for (const StrategyParams& b : set) points.push_back({a, b});
        points.push_back({{pi / 2, pi / 4}, {pi / 2, pi / 4}});  // the phi-sum = pi/2 family point

        json rows = json::array();
        if (opt.format != "json")
            os << "theta_a,phi_a,theta_b,phi_b,payoff_a,payoff_b,best_gain_a,best_gain_b,grid_nash\n";
        for (const StrategyProfile& prof : points) {
            const NashReport rep = nash_check_quantum(prof, cfg, opt.grid_n);
            if (opt.format == "json") {
                json row;
                row["theta_a"] = prof.alice.theta;
                row["phi_a"] = prof.alice.phi;
                row["theta_b"] = prof.bob.theta;
                row["phi_b"] = prof.bob.phi;
                row["payoff_a"] = rep.payoff.a;
                row["payoff_b"] = rep.payoff.b;
                row["best_gain_a"] = rep.alice.best_gain;
                row["best_gain_b"] = rep.bob.best_gain;
                row["grid_nash"] = rep.grid_nash();
                rows.push_back(std::move(row));
            } else {
                os << format_sig(prof.alice.theta) << ',' << format_sig(prof.alice.phi) << ','
                   << format_sig(prof.bob.theta) << ',' << format_sig(prof.bob.phi) << ','
                   << format_sig(rep.payoff.a) << ',' << format_sig(rep.payoff.b) << ','
                   << format_sig(rep.alice.best_gain) << ',' << format_sig(rep.bob.best_gain) << ','
                   << (rep.grid_nash() ? "true" : "false") << '\n';
            }
        }
        if (opt.format == "json") emit_json(os, opt, std::move(rows));
        return kExitOk;
    }

    if (what == "pareto") {
        const std::array<StrategyProfile, 3> anchors = {
            StrategyProfile{{0.0, pi / 8}, {0.0, pi / 8}},
            StrategyProfile{{0.0, 3 * pi / 8}, {0.0, 3 * pi / 8}},
            StrategyProfile{{pi / 2, 0.0}, {pi / 2, 0.0}},
        };
        json rows = json::array();
        if (opt.format != "json")
            os << "theta_a,phi_a,theta_b,phi_b,d_a_d_theta_a,d_a_d_phi_a,d_b_d_theta_b,d_b_d_phi_b,"
                  "pareto_theta,pareto_phi\n";
        for (const StrategyProfile& prof : anchors) {
            const GradientReport rep = payoff_gradient(prof, cfg, opt.fd_step);
            if (opt.format == "json") {
                json row;
                row["theta_a"] = prof.alice.theta;
                row["phi_a"] = prof.alice.phi;
                row["theta_b"] = prof.bob.theta;
                row["phi_b"] = prof.bob.phi;
                row["d_a_d_theta_a"] = rep.d_a_d_theta_a;
                row["d_a_d_phi_a"] = rep.d_a_d_phi_a;
                row["d_b_d_theta_b"] = rep.d_b_d_theta_b;
                row["d_b_d_phi_b"] = rep.d_b_d_phi_b;
                row["pareto_theta"] = rep.pareto_theta;
                row["pareto_phi"] = rep.pareto_phi;
                rows.push_back(std::move(row));
            } else {
                os << format_sig(prof.alice.theta) << ',' << format_sig(prof.alice.phi) << ','
                   << format_sig(prof.bob.theta) << ',' << format_sig(prof.bob.phi) << ','
                   << format_sig(rep.d_a_d_theta_a) << ',' << format_sig(rep.d_a_d_phi_a) << ','
                   << format_sig(rep.d_b_d_theta_b) << ',' << format_sig(rep.d_b_d_phi_b) << ','
                   << (rep.pareto_theta ? "true" : "false") << ',' << (rep.pareto_phi ? "true" : "false")
                   << '\n';
            }
        }
        if (opt.format == "json") emit_json(os, opt, std::move(rows));
        return kExitOk;
    }

    if (what == "threshold") {
        const double step = parse_angle(opt.lambda_step);
        if (!(step > 0.0)) throw std::invalid_argument("threshold step must be positive");
        std::vector<double> grid;
        for (int k = 0; k * step <= pi / 2 + 1e-12; ++k) grid.push_back(std::min(k * step, pi / 2));
        const std::optional<double> threshold = entanglement_threshold_scan(cfg, grid);
        if (opt.format == "json") {
            json row;
            row["step"] = step;
            row["lambda_min"] = threshold ? json(*threshold) : json(nullptr);
            emit_json(os, opt, json::array({row}));
        } else {
            os << "step,lambda_min\n"
               << format_sig(step) << ',' << (threshold ? format_sig(*threshold) : "none") << '\n';
        }
        return kExitOk;
    }

    throw CLI::ValidationError("analyze", "unknown analysis: " + what);
}

// ---------------------------------------------------------------------------
// pulse
// ---------------------------------------------------------------------------

int cmd_pulse(const Options& opt) {
    const GameConfig cfg = opt.game();
    const StrategyProfile prof = opt.profile();
    const SpinSystemParams spin = SpinSystemParams::chloroform();

    const PulseSequence seq = compile_game(prof.alice, prof.bob, cfg.lambda, spin);
    const DensityMatrix pseudo_pure = temporal_average(thermal_state(spin)).state;
    const DensityMatrix rho_f = simulate(seq, pseudo_pure, spin);
    const std::array<double, 4> pops = deviation_populations(rho_f, spin);
    const OutcomeProbabilities ref = outcome_probabilities_closed_form(prof.alice, prof.bob, cfg);
    const StateVector ideal = final_state(prof.alice, prof.bob, cfg);
    const double fidelity = fidelity_report(rho_f, ideal, spin);

    const double mismatch = std::max({std::abs(pops[0] - ref.p_oo), std::abs(pops[1] - ref.p_ot),
                                      std::abs(pops[2] - ref.p_to), std::abs(pops[3] - ref.p_tt)});
    if (mismatch > 1e-6)
        throw InternalCheckError("simulated populations deviate from the closed form by " + format_sig(mismatch));

    std::ofstream file;
    std::ostream& os = open_output(opt, file);
    if (opt.format == "json") {
        json rows = json::array();
        json row;
        row["label"] = seq.label;
        row["sequence"] = serialize(seq);
        row["populations"] = json::array({pops[0], pops[1], pops[2], pops[3]});
        row["reference"] = probs_json(ref);
        row["fidelity"] = fidelity;
        rows.push_back(std::move(row));
        emit_json(os, opt, std::move(rows));
    } else {
        os << "# pulse program (" << seq.label << ", " << seq.events.size() << " events)\n"
           << serialize(seq) << "# simulated deviation populations\n"
           << "p_oo " << format_sig(pops[0]) << '\n'
           << "p_ot " << format_sig(pops[1]) << '\n'
           << "p_to " << format_sig(pops[2]) << '\n'
           << "p_tt " << format_sig(pops[3]) << '\n'
           << "# closed-form reference probabilities\n"
           << "p_oo " << format_sig(ref.p_oo) << '\n'
           << "p_ot " << format_sig(ref.p_ot) << '\n'
           << "p_to " << format_sig(ref.p_to) << '\n'
           << "p_tt " << format_sig(ref.p_tt) << '\n'
           << "# fidelity against the ideal final state\n"
           << "fidelity " << format_sig(fidelity) << '\n';
    }
    return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------------------
// parsing helpers
// ---------------------------------------------------------------------------

double parse_angle(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty angle");

    const auto parse_number = [](const std::string& t) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (...) {
            throw std::invalid_argument("invalid angle: " + t);
        }
        if (used != t.size()) throw std::invalid_argument("invalid angle: " + t);
        return v;
    };

    const auto at = s.find("pi");
    if (at == std::string::npos) return parse_number(s);

    double coef = 1.0;
    const std::string head = s.substr(0, at);
    if (head == "-")
        coef = -1.0;
    else if (!head.empty())
        coef = parse_number(head);

    double divisor = 1.0;
    const std::string tail = s.substr(at + 2);
    if (!tail.empty()) {
        if (tail[0] != '/') throw std::invalid_argument("invalid angle: " + text);
        divisor = parse_number(tail.substr(1));
        if (divisor == 0.0) throw std::invalid_argument("invalid angle: " + text);
    }
    return coef * pi / divisor;
}

std::string format_sig(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string round_display(double v) {
    const double rounded = std::round(v * 10.0) / 10.0;  // half away from zero
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.1f", rounded);
    return buf;
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv) {
    Options opt;
    CLI::App app{"Quantized battle-of-the-sexes toolkit: payoffs, equilibrium analysis and the "
                 "two-spin pulse-level emulation of the game protocol"};
    app.set_config("--config", "", "flat key = value config file; flags override");
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    app.add_option("--alpha", opt.alpha, "payoff for the favored coordinated outcome");
    app.add_option("--beta", opt.beta, "payoff for the unfavored coordinated outcome");
    app.add_option("--gamma", opt.gamma, "payoff for miscoordination");
    app.add_option("--lambda", opt.lambda, "entanglement level in [0, pi/2] (accepts pi literals)");
    app.add_option("--format", opt.format, "output format: csv, json or text")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    app.add_option("--output", opt.output, "write to this file instead of stdout");
    app.add_option("--seed", opt.seed, "seed recorded in emitted configs");

    const auto add_profile_options = [&](CLI::App* cmd) {
        cmd->add_option("--theta-a", opt.theta_a, "Alice theta in [0, pi]");
        cmd->add_option("--phi-a", opt.phi_a, "Alice phi in [0, pi/2]");
        cmd->add_option("--theta-b", opt.theta_b, "Bob theta in [0, pi]");
        cmd->add_option("--phi-b", opt.phi_b, "Bob phi in [0, pi/2]");
    };

    CLI::App* payoff = app.add_subcommand("payoff", "probabilities and payoffs for one strategy profile");
    add_profile_options(payoff);

    CLI::App* table = app.add_subcommand("table", "reproduce the payoff tables");
    std::string which_table;
    table->add_option("which", which_table, "classical | bimatrix | theory-column")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "payoff sweeps over the strategy domain");
    sweep->add_option("--mode", opt.mode, "grid | composite | composite-diagonal | tangent-contour")
        ->check(CLI::IsMember({"grid", "composite", "composite-diagonal", "tangent-contour"}));
    sweep->add_option("--points", opt.points, "points per swept axis");
    sweep->add_option("--theta-a", opt.range_theta_a, "value or start:stop:count");
    sweep->add_option("--phi-a", opt.range_phi_a, "value or start:stop:count");
    sweep->add_option("--theta-b", opt.range_theta_b, "value or start:stop:count");
    sweep->add_option("--phi-b", opt.range_phi_b, "value or start:stop:count");
    sweep->add_flag("--fig6", opt.fig6, "surface over Alice's parameters with Bob held fixed");

    CLI::App* analyze = app.add_subcommand("analyze", "equilibrium and optimality reports");
    std::string which_analysis;
    analyze->add_option("what", which_analysis, "families | nash | pareto | threshold")->required();
    analyze->add_option("--grid-n", opt.grid_n, "lattice points per axis for the Nash scan");
    analyze->add_option("--fd-step", opt.fd_step, "finite-difference step");
    analyze->add_option("--step", opt.lambda_step, "lambda grid step for the threshold scan");

    CLI::App* pulse = app.add_subcommand("pulse", "compile, simulate and check the pulse program");
    add_profile_options(pulse);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (payoff->parsed()) return cmd_payoff(opt);
        if (table->parsed()) return cmd_table(opt, which_table);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (analyze->parsed()) return cmd_analyze(opt, which_analysis);
        if (pulse->parsed()) return cmd_pulse(opt);
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const InternalCheckError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> with_name;
    with_name.reserve(args.size() + 1);
    with_name.push_back("qbos");
    with_name.insert(with_name.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(with_name.size());
    for (const std::string& a : with_name) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace qbos::cli
