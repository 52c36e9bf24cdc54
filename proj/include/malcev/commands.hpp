#pragma once

// One function per CLI subcommand. Each takes parsed JSON inputs, calls the
// library and returns the verdicts as JSON; the executable only parses
// arguments and prints.

#include "malcev/io.hpp"

#include <optional>
#include <string>

namespace malcev::cli {

using io::Json;

struct RunReport {
    std::string command;
    std::string inputs_digest;
    Json verdicts;
    double seconds = 0;
    /// False when a demo step failed; the report then ends at that step.
    bool completed = true;
};

Json to_json(const RunReport &r, bool with_timing);
std::string to_text(const RunReport &r, bool with_timing);

RunReport cmd_hall(std::size_t generators, std::size_t class_bound);
RunReport cmd_bch(const Json &x, const Json &y, std::size_t class_bound, std::size_t generators = 2);
RunReport cmd_quadcheck(const Json &algebra);
RunReport cmd_malcev_model(const Json &cup, std::size_t class_bound);
/// seed: optional degree-1 element of A (x) N
RunReport cmd_mc(const Json &dga, const Json &coefficients, const std::optional<Json> &seed = std::nullopt);
/// a, b, c: {"degree", "coords"}
RunReport cmd_massey(const Json &dga, const Json &a, const Json &b, const Json &c);
RunReport cmd_lift(const Json &presentation, const Json &target, const Json &assignment, std::size_t level);
/// lattice: matrix whose columns generate the lattice
RunReport cmd_lattice_check(const Json &algebra, const Json &lattice);

struct DemoOptions {
    std::optional<Matrix> lattice; // columns; default e1, e2, w/2
    std::optional<Matrix> action;  // 2 x 2; default [[2, 3], [1, 2]]
};
RunReport cmd_heisenberg_demo(const DemoOptions &options = {});

} // namespace malcev::cli
