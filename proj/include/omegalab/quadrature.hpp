#pragma once
// Adaptive quadrature for density integrals.
//
// Gauss-Kronrod 15 never samples the interval endpoints, which matters here:
// length functions may jump (or diverge) exactly at segment boundaries.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "errors.hpp"

namespace omegalab {

struct QuadratureOptions {
    /// Relative accuracy requested per panel (against the panel's L1 norm).
    double request_tol = 1e-14;
    /// Absolute accuracy requested over the whole interval.
    double abs_tol = 1e-13;
    /// Largest acceptable total error estimate before QuadratureFailure.
    double fail_tol = 1e-10;
    unsigned max_depth = 24;
};

namespace detail {

struct QuadratureSum {
    double value = 0;
    double error = 0;
};

struct Panel {
    double a, b, value, error, l1;
};

template <typename F>
Panel gk_panel(F& f, double a, double b) {
    Panel p{a, b, 0, 0, 0};
    p.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
    return p;
}

// Bisect until each panel meets max(relative, share of absolute, rounding)
// tolerance. The rounding floor matters for narrow panels away from zero:
// abscissae there resolve only ulp(x) / width of the panel, so the error
// estimate of even a linear integrand never drops below it.
template <typename F>
void gk_adapt(F& f, const Panel& p, double width, unsigned depth, const QuadratureOptions& o, QuadratureSum& acc) {
    const double h = p.b - p.a;
    const double rounding = 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(p.a), std::abs(p.b)) / h;
    const double allowed = std::max({o.request_tol * p.l1, o.abs_tol * h / width, rounding * p.l1});
    const double mid = 0.5 * (p.a + p.b);
    if (p.error <= allowed || depth >= o.max_depth || !(p.a < mid && mid < p.b)) {
        acc.value += p.value;
        acc.error += p.error;
        return;
    }
    gk_adapt(f, gk_panel(f, p.a, mid), width, depth + 1, o, acc);
    gk_adapt(f, gk_panel(f, mid, p.b), width, depth + 1, o, acc);
}

}  // namespace detail

/// Integral of f over [a, b].
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureOptions& options = {}) {
    if (a == b) return 0.0;
    if (!(a < b)) throw QuadratureFailure("integration bounds out of order");
    detail::QuadratureSum acc;
    detail::gk_adapt(f, detail::gk_panel(f, a, b), b - a, 0, options, acc);
    if (!std::isfinite(acc.value) || !(acc.error <= options.fail_tol)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "quadrature on [%.17g, %.17g] did not reach tolerance (error estimate %.3g)", a,
                      b, acc.error);
        throw QuadratureFailure(buf);
    }
    return acc.value;
}

/// weight * value with 0 * anything = 0 (rho * ln(...) where rho vanishes).
inline double weighted(double weight, double value) { return weight == 0.0 ? 0.0 : weight * value; }

}  // namespace omegalab
