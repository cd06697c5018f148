#pragma once

#include <functional>
#include <vector>

namespace certivp {

/// Scalar initial value problem x'(t) = f(t, x) on [t0, t0 + a], together
/// with the user-supplied bound M on |f| and Lipschitz constant L (with
/// respect to the 1-norm on (t, x) pairs) from which all error bounds are
/// derived.
///
/// Times are absolute everywhere in the public interface; the solver works
/// on the translated window [0, a] internally. The rhs callable must be safe
/// for concurrent invocation; Problem values are immutable after
/// construction and safe to share across threads.
struct Problem {
    std::function<double(double, double)> rhs;  // f(t, x), absolute time
    double t0 = 0.0;
    double x0 = 0.0;
    double a = 0.0;        // window length, > 0
    double m_bound = 0.0;  // M, > 0
    double l_const = 0.0;  // L, > 0

    /// Throws std::invalid_argument unless a, M, L are positive, every field
    /// is finite, and rhs is callable. Evaluability of rhs over the
    /// rectangle is checked on demand by validate_problem, not here.
    Problem(std::function<double(double, double)> rhs_, double t0_, double x0_, double a_,
            double m_bound_, double l_const_);

    /// True when the scalar fields coincide; used to detect grids built from
    /// different problems (the rhs itself is not comparable).
    bool same_scalars(const Problem& other) const;
};

/// The rectangle on which the hypotheses about f are assumed:
/// [t0, t0 + a] x [x0 - M a, x0 + M a].
struct Rect {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
};

Rect rect_of(const Problem& p);

struct SamplePoint {
    double t = 0.0;
    double x = 0.0;
};

/// Result of spot-checking |f| <= M and the Lipschitz bound on a uniform
/// sample grid over rect_of(p). Sampling underestimates the true suprema, so
/// a passing report is necessary but not sufficient.
struct ValidationReport {
    double max_abs_f_sampled = 0.0;
    double lipschitz_estimate = 0.0;
    bool bound_ok = false;
    bool lipschitz_ok = false;
    /// worst_points[0] attains max_abs_f_sampled; worst_points[1] and [2],
    /// when present, are the adjacent sample pair attaining
    /// lipschitz_estimate.
    std::vector<SamplePoint> worst_points;
};

/// Samples f on an (n+1) x (n+1) uniform grid over rect_of(p).
/// max_abs_f_sampled is the largest |f| seen; lipschitz_estimate is the
/// largest |f(u) - f(v)| / ||u - v||_1 over horizontally and vertically
/// adjacent sample pairs. Requires n >= 2. Throws HypothesisError if the rhs
/// fails to evaluate at a sample point.
ValidationReport validate_problem(const Problem& p, int n = 64);

/// Evaluates p.rhs(t, x), converting evaluation failures and non-finite
/// results into HypothesisError naming the point.
double checked_rhs(const Problem& p, double t, double x);

}  // namespace certivp
