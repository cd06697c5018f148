#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "certivp/problem.hpp"

namespace certivp {

/// Default cap on grid storage: 2^26 + 1 doubles. Larger levels must be
/// requested explicitly so exhaustion turns into a predictable error.
inline constexpr std::uint64_t kDefaultMaxGridValues = (std::uint64_t{1} << 26) + 1;

/// Level-m polygon iterates. values[k] approximates the solution at
/// t0 + a k/2^m and is produced by the explicit recursion
///
///     values[0]   = x0
///     values[k+1] = values[k] + (a/2^m) f(t0 + a k/2^m, values[k])
///
/// evaluated in ascending k, exactly as written, so rebuilding the same
/// (problem, level) is bit-identical. Immutable after construction.
struct EulerGrid {
    int level = 0;
    std::vector<double> values;  // 2^level + 1 entries
    Problem problem;

    double step() const;                           // a / 2^level, exact
    double node_offset(std::uint64_t k) const;     // k * step, relative to t0
};

/// Constants controlling the inter-level agreement of the construction at
/// level m. alpha halves and beta quarters when m increments; c_const is
/// level-independent.
struct BoundModel {
    double alpha = 0.0;    // a L / 2^m
    double beta = 0.0;     // a^2 L (M+1) / 2^(2m+2)
    double c_const = 0.0;  // a (M+1) (e^{aL} (1 + aL) - 1) / 4
    int level = 0;
};

/// Agreement between consecutive levels m and m+1 at the 2^m + 1 shared
/// nodes, compared against the guaranteed decay c_const / 2^m.
struct ConvergenceReport {
    int level = 0;
    std::vector<double> deltas;  // |x^{m+1} - x^m| per shared node
    double max_delta = 0.0;
    double bound = 0.0;  // c_const / 2^m
    bool bound_satisfied = false;

    /// "level,max_delta,bound,satisfied" with 17 significant digits,
    /// satisfied as 1/0.
    std::string csv_row() const;
    static std::string csv_header();
};

struct ContainmentReport {
    bool ok = true;
    std::uint64_t worst_node = 0;
    double worst_excess = 0.0;  // largest |values[k] - x0| - M*(a k/2^m); <= slack when ok
};

/// Runs the recursion at level m (1 <= m <= kMaxLevel). Enforces the
/// containment bound |values[k] - x0| <= M a k/2^m at every step; a
/// violation beyond fp slack means the claimed M is too small and raises
/// HypothesisError. Raises CapacityError when 2^m + 1 exceeds max_values.
EulerGrid build_grid(const Problem& p, int m,
                     std::uint64_t max_values = kDefaultMaxGridValues);

/// Same recursion without the containment enforcement, for diagnosing
/// problems whose claimed M is wrong.
EulerGrid build_grid_unchecked(const Problem& p, int m,
                               std::uint64_t max_values = kDefaultMaxGridValues);

/// Scans |values[k] - x0| <= M a k/2^m at every node and spot-checks the
/// two-node bound |values[k] - values[j]| <= M a |k-j|/2^m on a seeded
/// random sample of pairs. Returns a diagnostic instead of throwing.
ContainmentReport containment_check(const EulerGrid& g, std::uint64_t seed = 0);

/// Computes the bound constants by direct substitution. Throws
/// std::range_error when e^{aL} overflows.
BoundModel bound_constants(const Problem& p, int m);

/// deltas[k] = |g_m1.values[2k] - g_m.values[k]|; bound c_const / 2^m.
/// Requires g_m1.level == g_m.level + 1 and matching problems.
ConvergenceReport refinement_report(const EulerGrid& g_m, const EulerGrid& g_m1);

/// Distance bound from the level-m values to the limit: c_const / 2^(m-1).
double tail_bound(const Problem& p, int m);

}  // namespace certivp
