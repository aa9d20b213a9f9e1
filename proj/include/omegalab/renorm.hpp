#pragma once
// Renormalization flow on continuous codelength functions (lengths in nats).
//
// The coarse-graining map is T[f](x) = f(ln x) + ln x. Its fixed point is
// the iterated-log length
//   ell_star(x) = ln x + ln ln x + ...,
// where a term ln(x_i) is included only while its argument x_i > 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace omegalab {

/// Iterated natural logs x_0 = x, x_{i+1} = ln x_i, stopped once x_i <= 1.
struct LogChain {
    /// x_0, x_1, ..., x_depth
    std::vector<double> entries;

    [[nodiscard]] std::size_t depth() const noexcept { return entries.size() - 1; }
    [[nodiscard]] double tail() const noexcept { return entries.back(); }

    /// x_1 + ... + x_k
    [[nodiscard]] double term_sum(std::size_t k) const {
        double sum = 0;
        for (std::size_t i = 1; i <= k && i < entries.size(); ++i) sum += entries[i];
        return sum;
    }
};

inline LogChain log_chain(double x) {
    if (!(x >= 1.0)) throw DomainError("log_chain: x must be >= 1");
    LogChain chain{{x}};
    while (chain.entries.back() > 1.0) chain.entries.push_back(std::log(chain.entries.back()));
    return chain;
}

/// Fixed point of T; 0 for x <= 1.
inline double ell_star(double x) {
    double sum = 0;
    while (x > 1.0) {
        x = std::log(x);
        sum += x;
    }
    return sum;
}

class CodelengthFn {
public:
    enum class Kind { zero, constant, table, custom, composed };

    static CodelengthFn zero() {
        return CodelengthFn(Kind::zero, "zero", [](double) { return 0.0; }, 0.0, kInf);
    }

    static CodelengthFn constant(double c) {
        if (!(c >= 0)) throw DomainError("constant codelength must be nonnegative");
        return CodelengthFn(Kind::constant, "const:" + format(c), [c](double) { return c; }, 0.0, kInf);
    }

    /// Piecewise-linear interpolation through (xs[i], ys[i]); xs strictly increasing.
    static CodelengthFn table(std::vector<double> xs, std::vector<double> ys) {
        if (xs.size() < 2 || xs.size() != ys.size()) throw DomainError("table needs >= 2 matching points");
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i > 0 && !(xs[i] > xs[i - 1])) throw DomainError("table abscissae must increase");
            if (!(ys[i] >= 0)) throw DomainError("table lengths must be nonnegative");
        }
        const double lo = xs.front();
        const double hi = xs.back();
        auto eval = [xs = std::move(xs), ys = std::move(ys)](double x) {
            const auto it = std::upper_bound(xs.begin(), xs.end(), x);
            std::size_t j = static_cast<std::size_t>(it - xs.begin());
            j = std::clamp<std::size_t>(j, 1, xs.size() - 1);
            const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
            return ys[j - 1] + t * (ys[j] - ys[j - 1]);
        };
        return CodelengthFn(Kind::table, "table", std::move(eval), lo, hi);
    }

    /// Arbitrary nonnegative function on [lo, hi].
    static CodelengthFn custom(std::string name, std::function<double(double)> f, double lo, double hi) {
        return CodelengthFn(Kind::custom, std::move(name), std::move(f), lo, hi);
    }

    static CodelengthFn fixed_point() {
        return CodelengthFn(Kind::custom, "ell_star", [](double x) { return ell_star(x); }, 0.0, kInf);
    }

    [[nodiscard]] bool defined_at(double x) const noexcept { return x >= lo_ && x <= hi_; }

    double operator()(double x) const {
        if (!defined_at(x)) {
            throw DomainError(description() + " is undefined at " + format(x) + " (domain [" + format(lo_) + ", " +
                              format(hi_) + "])");
        }
        return eval_(x);
    }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] unsigned generation() const noexcept { return generation_; }
    [[nodiscard]] double lower() const noexcept { return lo_; }
    [[nodiscard]] double upper() const noexcept { return hi_; }

    [[nodiscard]] std::string description() const {
        if (kind_ == Kind::composed) return "T^" + std::to_string(generation_) + "[" + name_ + "]";
        return name_;
    }

private:
    friend CodelengthFn flow_iterate(const CodelengthFn& f0, unsigned m);

    static constexpr double kInf = std::numeric_limits<double>::infinity();

    static std::string format(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    CodelengthFn(Kind kind, std::string name, std::function<double(double)> eval, double lo, double hi)
        : kind_(kind), name_(std::move(name)), eval_(std::move(eval)), lo_(lo), hi_(hi) {}

    Kind kind_;
    std::string name_;
    std::function<double(double)> eval_;
    double lo_;
    double hi_;
    unsigned generation_ = 0;
};

/// T[f](x) = f(ln x) + ln x.
inline double apply_T(const CodelengthFn& f, double x) {
    if (!(x >= 1.0)) throw DomainError("apply_T: x must be >= 1");
    const double y = std::log(x);
    return f(y) + y;
}

/// m-fold T applied to f0 and evaluated at x. Iterations whose argument has
/// already dropped to <= 1 leave the value unchanged, so the result is
/// x_1 + ... + x_k + f0(x_k) with k = min(m, depth(x)).
inline double flow(const CodelengthFn& f0, double x, unsigned m) {
    const LogChain chain = log_chain(x);
    const std::size_t k = std::min<std::size_t>(m, chain.depth());
    return chain.term_sum(k) + f0(chain.entries[k]);
}

/// The iterate T^m[f0] as a lazily evaluated function.
inline CodelengthFn flow_iterate(const CodelengthFn& f0, unsigned m) {
    CodelengthFn out(CodelengthFn::Kind::composed, f0.description(),
                     [f0, m](double x) { return flow(f0, x, m); }, 1.0, CodelengthFn::kInf);
    out.generation_ = f0.generation() + m;
    return out;
}

/// |flow(f0, x, depth) - ell_star(x)|, which equals f0 at the chain tail.
inline double convergence_gap(const CodelengthFn& f0, double x) {
    const LogChain chain = log_chain(x);
    return std::abs(flow(f0, x, static_cast<unsigned>(chain.depth())) - ell_star(x));
}

/// n log-spaced points from lo to hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0) || !(hi >= lo) || n == 0) throw DomainError("log_grid needs 0 < lo <= hi and n >= 1");
    std::vector<double> out;
    out.reserve(n);
    if (n == 1) return {lo};
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(i + 1 == n ? hi : std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1)));
    }
    return out;
}

}  // namespace omegalab
