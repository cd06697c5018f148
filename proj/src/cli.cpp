#include "certivp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "certivp/dyadic.hpp"
#include "certivp/errors.hpp"
#include "certivp/euler_grid.hpp"
#include "certivp/expr.hpp"
#include "certivp/fp.hpp"
#include "certivp/solution.hpp"

namespace certivp {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw ConfigError(std::string("problem file missing field '") + key + "'");
    }
    const auto& v = j.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string("problem file field '") + key + "' must be a number");
    }
    return v.get<double>();
}

/// Sampled hypothesis check shared by solve and converge; a failed check is
/// a hypothesis violation, not a property report.
void require_validated(const Problem& p) {
    const ValidationReport r = validate_problem(p);
    if (!r.bound_ok) {
        throw HypothesisError("sampled max |f| = " + fmt17(r.max_abs_f_sampled) +
                              " exceeds the claimed M = " + fmt17(p.m_bound) + " near (t=" +
                              fmt17(r.worst_points[0].t) + ", x=" + fmt17(r.worst_points[0].x) +
                              ")");
    }
    if (!r.lipschitz_ok) {
        throw HypothesisError("sampled Lipschitz quotient " + fmt17(r.lipschitz_estimate) +
                              " exceeds the claimed L = " + fmt17(p.l_const));
    }
}

void write_text(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path) {
        std::ofstream file(*cfg.out_path);
        if (!file) throw ConfigError("cannot write output file: " + *cfg.out_path);
        file << text;
    } else {
        out << text;
    }
}

void print_bound_block(std::ostream& os, const Solution& s) {
    os << "level      " << s.grid.level << "\n";
    os << "alpha      " << fmt17(s.bounds.alpha) << "\n";
    os << "beta       " << fmt17(s.bounds.beta) << "\n";
    os << "c_const    " << fmt17(s.bounds.c_const) << "\n";
    os << "eval_bound " << fmt17(s.eval_bound) << "\n";
}

std::uint64_t default_oracle_steps(int level) {
    return std::uint64_t{4} << level;
}

}  // namespace

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open problem file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("problem file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError("problem file must hold a JSON object");
    if (!j.contains("f") || !j.at("f").is_string()) {
        throw ConfigError("problem file needs an expression string field 'f'");
    }

    auto expr = std::make_shared<const Expr>(Expr::parse(j.at("f").get<std::string>()));
    const double t0 = require_number(j, "t0");
    const double x0 = require_number(j, "x0");
    const double a = require_number(j, "a");
    const double m_bound = require_number(j, "M");
    const double l_const = require_number(j, "L");
    try {
        return Problem([expr](double t, double x) { return expr->eval(t, x); }, t0, x0, a,
                       m_bound, l_const);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("invalid problem parameters: " + std::string(e.what()));
    }
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Problem p = load_problem(cfg.problem_path);
    require_validated(p);

    int m;
    if (cfg.level) {
        m = *cfg.level;
    } else if (cfg.tol) {
        m = choose_level(p, *cfg.tol);
    } else {
        throw ConfigError("solve needs --tol or --level");
    }

    const Solution s = make_solution(p, m);
    const std::string csv = sample_table_csv(sample_table(s, 32));
    write_text(cfg, csv, out);
    // Keep the report off the CSV stream when both share stdout.
    print_bound_block(cfg.out_path ? out : err, s);
    return 0;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.min_level || !cfg.max_level) {
        throw ConfigError("converge needs --min-level and --max-level");
    }
    const int lo = *cfg.min_level;
    const int hi = *cfg.max_level;
    if (lo >= hi) throw ConfigError("--min-level must be below --max-level");

    const Problem p = load_problem(cfg.problem_path);
    require_validated(p);

    std::ostringstream csv;
    csv << ConvergenceReport::csv_header() << "\n";
    bool all_ok = true;
    EulerGrid coarse = build_grid(p, lo);
    for (int m = lo; m < hi; ++m) {
        EulerGrid fine = build_grid(p, m + 1);
        const ConvergenceReport r = refinement_report(coarse, fine);
        all_ok = all_ok && r.bound_satisfied;
        csv << r.csv_row() << "\n";
        coarse = std::move(fine);
    }
    write_text(cfg, csv.str(), out);
    if (!all_ok) {
        err << "inter-level decay bound violated\n";
        return 4;
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    if (!cfg.level) throw ConfigError("verify needs --level");
    const int m = *cfg.level;
    if (m < 3) throw ConfigError("verify needs --level >= 3 so derivative probes fit the window");

    const Problem p = load_problem(cfg.problem_path);
    bool all_ok = true;
    auto record = [&](const char* name, bool ok, const std::string& detail) {
        out << (ok ? "PASS  " : "FAIL  ") << name << "  (" << detail << ")\n";
        all_ok = all_ok && ok;
    };

    const ValidationReport v = validate_problem(p);
    record("hypothesis-validation", v.bound_ok && v.lipschitz_ok,
           "max |f| = " + fmt17(v.max_abs_f_sampled) +
               ", lipschitz estimate = " + fmt17(v.lipschitz_estimate));

    // Diagnostic build: report containment violations instead of throwing.
    const Solution s = make_solution(build_grid_unchecked(p, m));
    const ContainmentReport c = containment_check(s.grid, cfg.seed);
    record("containment", c.ok,
           "worst node " + std::to_string(c.worst_node) + ", excess " + fmt17(c.worst_excess));

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> in_window(p.t0, p.t0 + p.a);

    bool modulus_ok = true;
    double modulus_worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
        const double t1 = in_window(rng);
        const double t2 = in_window(rng);
        const double gap = std::abs(evaluate(s, t1).value - evaluate(s, t2).value);
        const double cap = p.m_bound * std::abs(t1 - t2) + 2.0 * s.eval_bound;
        modulus_ok = modulus_ok && leq_with_slack(gap, cap);
        modulus_worst = std::max(modulus_worst, gap - cap);
    }
    record("lipschitz-modulus", modulus_ok, "worst slack " + fmt17(-modulus_worst));

    const int h_exp = std::clamp(m - 4, 1, m - 2);
    const double h = std::ldexp(p.a, -h_exp);
    const double residual_cap = 2.0 * s.eval_bound / h +
                                p.l_const * (p.m_bound + 1.0) * h + p.l_const * s.eval_bound;
    bool residual_ok = true;
    double residual_worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double res = derivative_residual(s, in_window(rng), h);
        residual_ok = residual_ok && leq_with_slack(res, residual_cap);
        residual_worst = std::max(residual_worst, res);
    }
    record("derivative-residual", residual_ok,
           "worst " + fmt17(residual_worst) + " vs cap " + fmt17(residual_cap));

    const CrossCheckReport x = cross_check(p, s, default_oracle_steps(m));
    record("cross-check", x.passed, "discrepancy " + fmt17(x.max_discrepancy) + ", allowance " +
                                        fmt17(x.allowance));

    return all_ok ? 0 : 4;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    if (!cfg.level) throw ConfigError("compare needs --level");
    const Problem p = load_problem(cfg.problem_path);
    const Solution s = make_solution(p, *cfg.level);
    const CrossCheckReport r = cross_check(p, s, default_oracle_steps(*cfg.level));
    out << "discrepancy " << fmt17(r.max_discrepancy) << "\n";
    out << "allowance   " << fmt17(r.allowance) << "\n";
    out << (r.passed ? "PASS" : "FAIL") << "\n";
    return r.passed ? 0 : 4;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"certified Euler polygon solver for scalar initial value problems"};
    app.require_subcommand(1);

    RunConfig cfg;
    struct SubcommandSpec {
        RunConfig::Command command;
        CLI::App* sub;
    };
    std::vector<SubcommandSpec> subs;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--problem", cfg.problem_path, "problem file (JSON)")->required();
        sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve and emit a dense sample table");
    add_common(solve);
    solve->add_option("--tol", cfg.tol, "target certified error per evaluation")
        ->check(CLI::PositiveNumber);
    solve->add_option("--level", cfg.level, "grid level override")->check(CLI::Range(1, kMaxLevel));
    solve->add_option("--out", cfg.out_path, "CSV output path (default: stdout)");
    subs.push_back({RunConfig::Command::solve, solve});

    CLI::App* converge = app.add_subcommand("converge", "inter-level decay study");
    add_common(converge);
    converge->add_option("--min-level", cfg.min_level, "first level")
        ->check(CLI::Range(1, kMaxLevel));
    converge->add_option("--max-level", cfg.max_level, "last level (exclusive as a report row)")
        ->check(CLI::Range(1, kMaxLevel));
    converge->add_option("--out", cfg.out_path, "CSV output path (default: stdout)");
    subs.push_back({RunConfig::Command::converge, converge});

    CLI::App* verify = app.add_subcommand("verify", "run the property checks at one level");
    add_common(verify);
    verify->add_option("--level", cfg.level, "grid level")
        ->required()
        ->check(CLI::Range(1, kMaxLevel));
    subs.push_back({RunConfig::Command::verify, verify});

    CLI::App* compare = app.add_subcommand("compare", "cross-check against the reference integrator");
    add_common(compare);
    compare->add_option("--level", cfg.level, "grid level")
        ->required()
        ->check(CLI::Range(1, kMaxLevel));
    subs.push_back({RunConfig::Command::compare, compare});

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        for (const SubcommandSpec& s : subs) {
            if (!s.sub->parsed()) continue;
            cfg.command = s.command;
            switch (s.command) {
                case RunConfig::Command::solve: return cmd_solve(cfg, out, err);
                case RunConfig::Command::converge: return cmd_converge(cfg, out, err);
                case RunConfig::Command::verify: return cmd_verify(cfg, out, err);
                case RunConfig::Command::compare: return cmd_compare(cfg, out, err);
            }
        }
        err << "no command given\n";
        return 1;
    } catch (const HypothesisError& e) {
        err << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace certivp
