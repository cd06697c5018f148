#pragma once

#include <cstdint>

namespace certivp {

/// Hard cap on grid levels. Indices at level m must fit in 64 bits with
/// headroom, and the tail bound c/2^(m-1) underflows every practical
/// tolerance long before 40.
inline constexpr int kMaxLevel = 40;

/// Number of subintervals at level m, 2^m.
inline constexpr std::uint64_t level_size(int m) {
    return std::uint64_t{1} << m;
}

/// A point of the dyadic index set {window * k / 2^m : 0 <= k <= 2^m},
/// stored in canonical form: k = 0 with m = 0, or k odd. The canonical m is
/// the coarsest level whose grid contains the point.
///
/// Grid bookkeeping runs on exact integer pairs (k, m); floating-point times
/// would not preserve node identity across levels.
struct DyadicPoint {
    std::uint64_t k = 0;
    int m = 0;

    /// Position inside a window of length `window`: window * k / 2^m.
    double value(double window) const;

    friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
};

/// Reduces (k, m) with 0 <= k <= 2^m to canonical form.
DyadicPoint canonicalize(std::uint64_t k, int m);

/// Index of d on the level-m grid, i.e. k' with d = window * k' / 2^m.
/// Requires m >= d.m.
std::uint64_t at_level(const DyadicPoint& d, int m);

/// Level-m grid point nearest to t in [0, window]. The distance to t is at
/// most window / 2^(m+1); exact ties round to the even index.
DyadicPoint nearest_at_level(double t, int m, double window);

}  // namespace certivp
