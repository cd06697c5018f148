#pragma once

#include <algorithm>
#include <cmath>

namespace certivp {

/// Absolute cushion used when checking inequalities that are exact in real
/// arithmetic but accumulate rounding over up to 2^m steps in doubles:
/// 1e-9 plus 1e-12 times the magnitude of the compared values.
inline double fp_slack(double a, double b = 0.0) {
    return 1e-9 + 1e-12 * std::max(std::abs(a), std::abs(b));
}

/// lhs <= rhs, allowing fp_slack.
inline bool leq_with_slack(double lhs, double rhs) {
    return lhs <= rhs + fp_slack(lhs, rhs);
}

}  // namespace certivp
