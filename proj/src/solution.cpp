#include "certivp/solution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "certivp/dyadic.hpp"
#include "certivp/errors.hpp"
#include "certivp/fp.hpp"

namespace certivp {

namespace {

double per_eval_bound(const Problem& p, double c_const, int m) {
    return std::ldexp(c_const, -(m - 1)) + std::ldexp(p.m_bound * p.a, -(m + 1));
}

void check_window(const Solution& s, double t) {
    if (!(t >= s.t_begin()) || !(t <= s.t_end())) {
        char buf[120];
        std::snprintf(buf, sizeof(buf), "t = %.17g outside the window [%.17g, %.17g]", t,
                      s.t_begin(), s.t_end());
        throw std::domain_error(buf);
    }
}

/// Classical four-stage RK4 from t0 to t, using uniform steps no wider than
/// h_max. Kept deliberately separate from the grid recursion so agreement
/// between the two is meaningful.
double rk4_value(const Problem& p, double t, double h_max) {
    const double span = t - p.t0;
    double y = p.x0;
    if (span <= 0.0) return y;
    const auto steps = static_cast<std::uint64_t>(std::ceil(span / h_max - 1e-12));
    const std::uint64_t n = std::max<std::uint64_t>(steps, 1);
    const double h = span / static_cast<double>(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double ti = p.t0 + static_cast<double>(i) * h;
        const double k1 = checked_rhs(p, ti, y);
        const double k2 = checked_rhs(p, ti + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = checked_rhs(p, ti + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = checked_rhs(p, ti + h, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
}

}  // namespace

Solution make_solution(const Problem& p, int m, std::uint64_t max_values) {
    return make_solution(build_grid(p, m, max_values));
}

Solution make_solution(EulerGrid grid) {
    Solution s{std::move(grid), {}, 0.0};
    s.bounds = bound_constants(s.grid.problem, s.grid.level);
    s.eval_bound = per_eval_bound(s.grid.problem, s.bounds.c_const, s.grid.level);
    return s;
}

int choose_level(const Problem& p, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double c = bound_constants(p, 1).c_const;
    double best = per_eval_bound(p, c, 1);
    for (int m = 1; m <= kMaxLevel; ++m) {
        const double bound = per_eval_bound(p, c, m);
        best = std::min(best, bound);
        if (bound <= eps) return m;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "tolerance %.17g unreachable: best achievable bound at level %d is %.17g", eps,
                  kMaxLevel, best);
    throw CapacityError(buf);
}

Evaluation evaluate(const Solution& s, double t) {
    check_window(s, t);
    const Problem& p = s.problem();
    // Translation to the internal window; clamp sheds the rounding of
    // (t0 + offset) - t0 at the edges.
    const double tau = std::clamp(t - p.t0, 0.0, p.a);
    const int m = s.grid.level;
    const DyadicPoint d = nearest_at_level(tau, m, p.a);
    const double node_value = s.grid.values[at_level(d, m)];
    const double node_dist = std::abs(tau - d.value(p.a));
    const double tail = std::ldexp(s.bounds.c_const, -(m - 1));
    return Evaluation{node_value, tail + p.m_bound * node_dist};
}

double derivative_residual(const Solution& s, double t, double h) {
    const Problem& p = s.problem();
    const int m = s.grid.level;
    const double h_floor = std::ldexp(p.a, -(m - 2));
    if (!(h >= h_floor)) {
        char buf[120];
        std::snprintf(buf, sizeof(buf), "probe width %.17g below the floor a/2^(m-2) = %.17g", h,
                      h_floor);
        throw std::invalid_argument(buf);
    }
    check_window(s, t);

    const Evaluation here = evaluate(s, t);
    double quotient;
    if (t + h <= s.t_end()) {
        quotient = (evaluate(s, t + h).value - here.value) / h;
    } else if (t - h >= s.t_begin()) {
        quotient = (here.value - evaluate(s, t - h).value) / h;
    } else {
        throw std::domain_error("probe width does not fit the window on either side of t");
    }
    return std::abs(quotient - checked_rhs(p, t, here.value));
}

std::vector<SampleRow> sample_table(const Solution& s, int n) {
    if (n < 2) throw std::invalid_argument("sample table needs n >= 2");
    std::vector<SampleRow> rows;
    rows.reserve(static_cast<std::size_t>(n) + 1);
    const Problem& p = s.problem();
    for (int i = 0; i <= n; ++i) {
        // i/n is exactly 0 and 1 at the ends, keeping t inside the window.
        const double t = p.t0 + p.a * (static_cast<double>(i) / n);
        const Evaluation e = evaluate(s, t);
        rows.push_back({t, e.value, e.bound});
    }
    return rows;
}

std::string sample_table_csv(const std::vector<SampleRow>& rows) {
    std::string out = "t,x,bound\n";
    char buf[120];
    for (const SampleRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", r.t, r.value, r.bound);
        out += buf;
    }
    return out;
}

CrossCheckReport cross_check(const Problem& p, const Solution& s, std::uint64_t oracle_steps) {
    if (oracle_steps < level_size(s.grid.level)) {
        throw std::invalid_argument("oracle_steps must be at least 2^m = " +
                                    std::to_string(level_size(s.grid.level)));
    }
    const int samples = 32;
    const double h_ref = p.a / static_cast<double>(oracle_steps);
    const double h_coarse = 2.0 * h_ref;

    CrossCheckReport report;
    double richardson = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = p.t0 + p.a * (static_cast<double>(i) / samples);
        const double ours = evaluate(s, t).value;
        const double ref = rk4_value(p, t, h_ref);
        const double ref_coarse = rk4_value(p, t, h_coarse);
        report.max_discrepancy = std::max(report.max_discrepancy, std::abs(ours - ref));
        richardson = std::max(richardson, std::abs(ref - ref_coarse));
    }
    // Fourth-order Richardson estimate of the reference error at step h_ref:
    // |v_h - v_2h| / (2^4 - 1), padded to an upper estimate.
    report.allowance = s.eval_bound + richardson * (16.0 / 15.0) + fp_slack(s.eval_bound);
    report.passed = report.max_discrepancy <= report.allowance;
    return report;
}

}  // namespace certivp
