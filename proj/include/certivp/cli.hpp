#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "certivp/problem.hpp"

namespace certivp {

/// Parsed command line. One command per run; all randomized checks derive
/// from the explicit seed so identical configs give byte-identical output.
struct RunConfig {
    enum class Command { solve, converge, verify, compare };

    Command command = Command::solve;
    std::string problem_path;
    std::optional<double> tol;
    std::optional<int> level;
    std::optional<int> min_level;
    std::optional<int> max_level;
    std::optional<std::string> out_path;
    std::uint64_t seed = 0;
};

/// Reads a problem file: a JSON object with an expression string `f` and
/// numbers `t0`, `x0`, `a`, `M`, `L`. Throws ConfigError / ParseError on
/// malformed input.
Problem load_problem(const std::string& path);

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full entry point: parses args (without the program name), dispatches,
/// and maps errors to exit codes: 1 config/parse, 2 hypothesis violation,
/// 3 capacity, 4 property failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace certivp
