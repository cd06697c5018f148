#include "certivp/dyadic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace certivp {

namespace {

void check_level(int m) {
    if (m < 0 || m > kMaxLevel) {
        throw std::domain_error("dyadic level " + std::to_string(m) +
                                " outside [0, " + std::to_string(kMaxLevel) + "]");
    }
}

}  // namespace

double DyadicPoint::value(double window) const {
    // k / 2^m is exact (k < 2^53), so the product rounds once.
    return std::ldexp(static_cast<double>(k), -m) * window;
}

DyadicPoint canonicalize(std::uint64_t k, int m) {
    check_level(m);
    if (k > level_size(m)) {
        throw std::domain_error("dyadic index " + std::to_string(k) +
                                " exceeds 2^" + std::to_string(m));
    }
    if (k == 0) {
        return {0, 0};
    }
    while ((k & 1) == 0) {
        k >>= 1;
        --m;
    }
    return {k, m};
}

std::uint64_t at_level(const DyadicPoint& d, int m) {
    check_level(m);
    if (m < d.m) {
        throw std::domain_error("level " + std::to_string(m) +
                                " is coarser than the point's canonical level " +
                                std::to_string(d.m));
    }
    return d.k << (m - d.m);
}

DyadicPoint nearest_at_level(double t, int m, double window) {
    check_level(m);
    if (!(t >= 0.0) || !(t <= window)) {
        throw std::domain_error("time offset " + std::to_string(t) +
                                " outside [0, " + std::to_string(window) + "]");
    }
    const std::uint64_t n = level_size(m);
    const double pos = std::ldexp(t / window, m);  // in [0, 2^m]
    std::uint64_t lo = static_cast<std::uint64_t>(std::floor(pos));
    if (lo > n) lo = n;

    if (lo == n) {
        return canonicalize(lo, m);
    }
    const std::uint64_t hi = lo + 1;
    const double d_lo = std::abs(t - DyadicPoint{lo, m}.value(window));
    const double d_hi = std::abs(t - DyadicPoint{hi, m}.value(window));
    std::uint64_t k = lo;
    if (d_hi < d_lo) {
        k = hi;
    } else if (d_hi == d_lo) {
        k = (lo % 2 == 0) ? lo : hi;  // tie: round to even
    }
    return canonicalize(k, m);
}

}  // namespace certivp
