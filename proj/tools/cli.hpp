// Command-line front end: single-profile evaluation, table reproduction,
// sweeps, equilibrium analysis and the pulse-level emulation pipeline.
// Exposed as a tiny library so the test suite can call commands directly.

#pragma once

#include <string>
#include <vector>

namespace qbos::cli {

// Exit codes: 0 success, 2 usage or domain error, 1 internal inconsistency
// (for example the closed-form / circuit cross-check failing).
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without the program name

// Angles are accepted in radians, either as plain decimals or as pi
// literals: "pi", "pi/2", "3pi/8", "0.5pi", "-pi/4".
double parse_angle(const std::string& text);

// 12 significant digits (exact CSV columns) and the one-decimal
// round-half-away-from-zero display rounding used by the printed tables.
std::string format_sig(double v);
std::string round_display(double v);

}  // namespace qbos::cli
