#include "certivp/euler_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "certivp/dyadic.hpp"
#include "certivp/errors.hpp"
#include "certivp/fp.hpp"

namespace certivp {

namespace {

void check_build_level(int m) {
    if (m < 1 || m > kMaxLevel) {
        throw std::invalid_argument("grid level " + std::to_string(m) + " outside [1, " +
                                    std::to_string(kMaxLevel) + "]");
    }
}

EulerGrid run_recursion(const Problem& p, int m, std::uint64_t max_values,
                        bool enforce_containment) {
    check_build_level(m);
    const std::uint64_t n = level_size(m);
    if (n + 1 > max_values) {
        throw CapacityError("level " + std::to_string(m) + " needs " + std::to_string(n + 1) +
                            " values, above the cap of " + std::to_string(max_values));
    }

    EulerGrid g{m, std::vector<double>(n + 1), p};
    const double h = g.step();
    g.values[0] = p.x0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const double t_rel = static_cast<double>(k) * h;
        const double slope = checked_rhs(p, p.t0 + t_rel, g.values[k]);
        g.values[k + 1] = g.values[k] + h * slope;
        if (enforce_containment) {
            const double drift = std::abs(g.values[k + 1] - p.x0);
            const double limit = p.m_bound * (static_cast<double>(k + 1) * h);
            if (!leq_with_slack(drift, limit)) {
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "containment violated at node %llu of level %d: "
                              "|x - x0| = %.17g > M t = %.17g (claimed M too small?)",
                              static_cast<unsigned long long>(k + 1), m, drift, limit);
                throw HypothesisError(buf);
            }
        }
    }
    return g;
}

}  // namespace

double EulerGrid::step() const {
    return std::ldexp(problem.a, -level);
}

double EulerGrid::node_offset(std::uint64_t k) const {
    return static_cast<double>(k) * step();
}

EulerGrid build_grid(const Problem& p, int m, std::uint64_t max_values) {
    return run_recursion(p, m, max_values, true);
}

EulerGrid build_grid_unchecked(const Problem& p, int m, std::uint64_t max_values) {
    return run_recursion(p, m, max_values, false);
}

ContainmentReport containment_check(const EulerGrid& g, std::uint64_t seed) {
    const std::uint64_t n = level_size(g.level);
    const double h = g.step();
    const double m_bound = g.problem.m_bound;

    ContainmentReport report;
    report.worst_excess = -std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k <= n; ++k) {
        const double drift = std::abs(g.values[k] - g.problem.x0);
        const double limit = m_bound * (static_cast<double>(k) * h);
        const double excess = drift - limit;
        if (excess > report.worst_excess) {
            report.worst_excess = excess;
            report.worst_node = k;
        }
        if (!leq_with_slack(drift, limit)) report.ok = false;
    }

    // Two-node slope bound on a seeded sample of pairs.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, n);
    const int pairs = 256;
    for (int i = 0; i < pairs; ++i) {
        const std::uint64_t k = pick(rng);
        const std::uint64_t j = pick(rng);
        const double gap = std::abs(g.values[k] - g.values[j]);
        const std::uint64_t span = k > j ? k - j : j - k;
        const double limit = m_bound * (static_cast<double>(span) * h);
        if (!leq_with_slack(gap, limit)) {
            report.ok = false;
            const double excess = gap - limit;
            if (excess > report.worst_excess) {
                report.worst_excess = excess;
                report.worst_node = std::max(k, j);
            }
        }
    }
    return report;
}

BoundModel bound_constants(const Problem& p, int m) {
    if (m < 1) throw std::invalid_argument("bound constants need level m >= 1");
    const double al = p.a * p.l_const;
    const double growth = std::exp(al);
    if (!std::isfinite(growth)) {
        throw std::range_error("e^{aL} overflows for aL = " + std::to_string(al));
    }
    BoundModel b;
    b.level = m;
    b.alpha = std::ldexp(al, -m);
    b.beta = std::ldexp(p.a * p.a * p.l_const * (p.m_bound + 1.0), -(2 * m + 2));
    b.c_const = p.a * (p.m_bound + 1.0) * (growth * (1.0 + al) - 1.0) / 4.0;
    if (!std::isfinite(b.c_const)) {
        throw std::range_error("bound constant overflows for aL = " + std::to_string(al));
    }
    return b;
}

ConvergenceReport refinement_report(const EulerGrid& g_m, const EulerGrid& g_m1) {
    if (g_m1.level != g_m.level + 1) {
        throw std::invalid_argument("refinement report needs levels m and m+1, got " +
                                    std::to_string(g_m.level) + " and " +
                                    std::to_string(g_m1.level));
    }
    if (!g_m.problem.same_scalars(g_m1.problem)) {
        throw std::invalid_argument("refinement report needs grids from the same problem");
    }

    const std::uint64_t n = level_size(g_m.level);
    ConvergenceReport report;
    report.level = g_m.level;
    report.deltas.resize(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) {
        report.deltas[k] = std::abs(g_m1.values[2 * k] - g_m.values[k]);
        if (report.deltas[k] > report.max_delta) report.max_delta = report.deltas[k];
    }
    report.bound = std::ldexp(bound_constants(g_m.problem, g_m.level).c_const, -g_m.level);
    report.bound_satisfied = leq_with_slack(report.max_delta, report.bound);
    return report;
}

double tail_bound(const Problem& p, int m) {
    if (m < 1) throw std::invalid_argument("tail bound needs level m >= 1");
    return std::ldexp(bound_constants(p, m).c_const, -(m - 1));
}

std::string ConvergenceReport::csv_header() {
    return "level,max_delta,bound,satisfied";
}

std::string ConvergenceReport::csv_row() const {
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%d", level, max_delta, bound,
                  bound_satisfied ? 1 : 0);
    return buf;
}

}  // namespace certivp
