#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "certivp/euler_grid.hpp"

namespace certivp {

/// Dense-output view of a level-m grid. Any t in [t0, t0 + a] is answered
/// from the nearest grid node; the certified per-evaluation error combines
/// the level tail c/2^(m-1) with the M-Lipschitz modulus of the limit over
/// the distance to that node. Immutable; all queries are safe to run
/// concurrently.
struct Solution {
    EulerGrid grid;
    BoundModel bounds;
    /// Worst case of evaluate().bound: c/2^(m-1) + M a/2^(m+1).
    double eval_bound = 0.0;

    const Problem& problem() const { return grid.problem; }
    double t_begin() const { return grid.problem.t0; }
    double t_end() const { return grid.problem.t0 + grid.problem.a; }
};

/// Builds the level-m grid (containment enforced) and attaches bounds.
Solution make_solution(const Problem& p, int m,
                       std::uint64_t max_values = kDefaultMaxGridValues);

/// Attaches bounds to an already-built grid. Accepts unchecked grids, for
/// diagnostic runs on problems whose hypotheses are in doubt.
Solution make_solution(EulerGrid grid);

/// Least level m >= 1 whose per-evaluation bound c/2^(m-1) + M a/2^(m+1)
/// is at most eps. Throws CapacityError, reporting the best achievable
/// bound, if no level up to kMaxLevel reaches eps.
int choose_level(const Problem& p, double eps);

struct Evaluation {
    double value = 0.0;
    double bound = 0.0;  // certified: |value - x_true(t)| <= bound
};

/// Value and certified error bound at absolute time t in [t0, t0 + a].
Evaluation evaluate(const Solution& s, double t);

/// |(x(t+h) - x(t))/h - f(t, x(t))| computed from solver values only (the
/// backward quotient is used when t + h leaves the window). Documented
/// contract: the result is at most 2*eval_bound/h + L(M+1)h + L*eval_bound.
/// Requires h >= a/2^(m-2); below grid resolution the quotient degenerates.
double derivative_residual(const Solution& s, double t, double h);

struct SampleRow {
    double t = 0.0;
    double value = 0.0;
    double bound = 0.0;
};

/// n+1 equally spaced rows across the window, each from evaluate(). n >= 2.
std::vector<SampleRow> sample_table(const Solution& s, int n);

/// CSV with header "t,x,bound"; 17 significant digits per value.
std::string sample_table_csv(const std::vector<SampleRow>& rows);

struct CrossCheckReport {
    double max_discrepancy = 0.0;  // over 33 equally spaced times
    double allowance = 0.0;        // eval_bound + estimated reference error
    bool passed = false;
};

/// Compares the solution against an independently implemented classical
/// fixed-step RK4 integrator at step a/oracle_steps, sampling 33 equally
/// spaced times. The allowance adds a Richardson estimate of the reference
/// integrator's own error to eval_bound. Requires oracle_steps >= 2^m.
CrossCheckReport cross_check(const Problem& p, const Solution& s, std::uint64_t oracle_steps);

}  // namespace certivp
