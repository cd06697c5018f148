#include "certivp/problem.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "certivp/errors.hpp"

namespace certivp {

namespace {

std::string point_str(double t, double x) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "(t=%.17g, x=%.17g)", t, x);
    return buf;
}

}  // namespace

Problem::Problem(std::function<double(double, double)> rhs_, double t0_, double x0_, double a_,
                 double m_bound_, double l_const_)
    : rhs(std::move(rhs_)), t0(t0_), x0(x0_), a(a_), m_bound(m_bound_), l_const(l_const_) {
    if (!rhs) throw std::invalid_argument("rhs must be callable");
    if (!std::isfinite(t0) || !std::isfinite(x0)) {
        throw std::invalid_argument("t0 and x0 must be finite");
    }
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("window length a must be positive and finite");
    }
    if (!(m_bound > 0.0) || !std::isfinite(m_bound)) {
        throw std::invalid_argument("bound M must be positive and finite");
    }
    if (!(l_const > 0.0) || !std::isfinite(l_const)) {
        throw std::invalid_argument("Lipschitz constant L must be positive and finite");
    }
}

bool Problem::same_scalars(const Problem& other) const {
    return t0 == other.t0 && x0 == other.x0 && a == other.a && m_bound == other.m_bound &&
           l_const == other.l_const;
}

Rect rect_of(const Problem& p) {
    return Rect{p.t0, p.t0 + p.a, p.x0 - p.m_bound * p.a, p.x0 + p.m_bound * p.a};
}

double checked_rhs(const Problem& p, double t, double x) {
    double v;
    try {
        v = p.rhs(t, x);
    } catch (const std::exception& e) {
        throw HypothesisError("right-hand side failed at " + point_str(t, x) + ": " + e.what());
    }
    if (!std::isfinite(v)) {
        throw HypothesisError("right-hand side non-finite at " + point_str(t, x));
    }
    return v;
}

ValidationReport validate_problem(const Problem& p, int n) {
    if (n < 2) throw std::invalid_argument("validation resolution n must be at least 2");

    const Rect u = rect_of(p);
    const double span_t = u.t_hi - u.t_lo;
    const double span_x = u.x_hi - u.x_lo;
    const std::size_t side = static_cast<std::size_t>(n) + 1;

    std::vector<double> ts(side), xs(side);
    for (std::size_t i = 0; i < side; ++i) {
        ts[i] = u.t_lo + (span_t * static_cast<double>(i)) / n;
        xs[i] = u.x_lo + (span_x * static_cast<double>(i)) / n;
    }

    std::vector<double> f(side * side);
    ValidationReport report;
    report.worst_points.push_back({ts[0], xs[0]});
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            const double v = checked_rhs(p, ts[i], xs[j]);
            f[i * side + j] = v;
            if (std::abs(v) > report.max_abs_f_sampled) {
                report.max_abs_f_sampled = std::abs(v);
                report.worst_points[0] = {ts[i], xs[j]};
            }
        }
    }

    // Adjacent-pair difference quotients; the 1-norm distance of an
    // axis-aligned pair is the single coordinate difference.
    SamplePoint pair_a{}, pair_b{};
    bool have_pair = false;
    auto consider = [&](double quot, SamplePoint a, SamplePoint b) {
        if (quot > report.lipschitz_estimate) {
            report.lipschitz_estimate = quot;
            pair_a = a;
            pair_b = b;
            have_pair = true;
        }
    };
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            if (i + 1 < side) {
                const double dt = ts[i + 1] - ts[i];
                if (dt > 0.0) {
                    consider(std::abs(f[(i + 1) * side + j] - f[i * side + j]) / dt,
                             {ts[i], xs[j]}, {ts[i + 1], xs[j]});
                }
            }
            if (j + 1 < side) {
                const double dx = xs[j + 1] - xs[j];
                if (dx > 0.0) {
                    consider(std::abs(f[i * side + j + 1] - f[i * side + j]) / dx,
                             {ts[i], xs[j]}, {ts[i], xs[j + 1]});
                }
            }
        }
    }
    if (have_pair) {
        report.worst_points.push_back(pair_a);
        report.worst_points.push_back(pair_b);
    }

    report.bound_ok = report.max_abs_f_sampled <= p.m_bound;
    report.lipschitz_ok = report.lipschitz_estimate <= p.l_const;
    return report;
}

}  // namespace certivp
