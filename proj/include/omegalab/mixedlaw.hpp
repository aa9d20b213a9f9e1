#pragma once
// Mixed discrete-continuous source laws on [1, inf):
//   p(dx) = sum_w P(w) delta_w(dx) + rho(x) dx
// with the density given as piecewise-linear segments. All lengths are in
// nats; the Kraft measure is counting measure on atoms plus Lebesgue measure.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"

namespace omegalab {

inline constexpr double kMassTolerance = 1e-9;

struct Atom {
    double w;
    double p;
};

/// rho on [a, b] interpolating linearly from ya to yb.
struct LinearPiece {
    double a;
    double b;
    double ya;
    double yb;

    [[nodiscard]] double width() const noexcept { return b - a; }

    [[nodiscard]] double density(double x) const noexcept {
        if (width() == 0) return ya;
        const double t = (x - a) / width();
        return ya + t * (yb - ya);
    }

    [[nodiscard]] double mass() const noexcept { return 0.5 * (ya + yb) * width(); }

    /// Integral of rho ln rho, in closed form.
    [[nodiscard]] double rho_log_rho() const noexcept {
        auto g = [](double y) { return y > 0 ? y * std::log(y) : 0.0; };
        const double dy = yb - ya;
        const double top = std::max(ya, yb);
        if (top == 0) return 0;
        if (std::abs(dy) <= 1e-4 * top) {
            // Mean of y ln y over [ya, yb] by its Taylor series around the midpoint.
            const double mid = 0.5 * (ya + yb);
            const double h = 0.5 * dy;
            const double h2 = h * h;
            return width() * (g(mid) + h2 / (6.0 * mid) + h2 * h2 / (60.0 * mid * mid * mid));
        }
        // Antiderivative of y ln y is y^2 ln(y)/2 - y^2/4.
        auto prim = [](double y) { return y > 0 ? 0.5 * y * y * std::log(y) - 0.25 * y * y : 0.0; };
        return width() * (prim(yb) - prim(ya)) / dy;
    }

    /// Restriction to [lo, hi] (assumed to overlap).
    [[nodiscard]] LinearPiece clip(double lo, double hi) const noexcept {
        const double ca = std::max(a, lo);
        const double cb = std::min(b, hi);
        return {ca, cb, density(ca), density(cb)};
    }
};

class Segment {
public:
    enum class Kind { constant, linear, grid };

    static Segment constant(double a, double b, double value) { return Segment(Kind::constant, a, b, {value}); }
    static Segment linear(double a, double b, double ya, double yb) { return Segment(Kind::linear, a, b, {ya, yb}); }
    /// Equally spaced samples from a to b inclusive, linearly interpolated.
    static Segment grid(double a, double b, std::vector<double> samples) {
        return Segment(Kind::grid, a, b, std::move(samples));
    }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<LinearPiece>& pieces() const noexcept { return pieces_; }

    [[nodiscard]] bool contains(double x) const noexcept { return x >= a_ && x < b_; }

    [[nodiscard]] double density(double x) const noexcept {
        if (x < a_ || x > b_) return 0.0;
        const auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                                         [](double v, const LinearPiece& p) { return v < p.b; });
        const auto& piece = it == pieces_.end() ? pieces_.back() : *it;
        return piece.density(x);
    }

    [[nodiscard]] double mass() const noexcept {
        double m = 0;
        for (const auto& p : pieces_) m += p.mass();
        return m;
    }

    [[nodiscard]] double rho_log_rho() const noexcept {
        double s = 0;
        for (const auto& p : pieces_) s += p.rho_log_rho();
        return s;
    }

    [[nodiscard]] double max_density() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

    [[nodiscard]] static const char* kind_name(Kind k) noexcept {
        switch (k) {
            case Kind::constant: return "const";
            case Kind::linear: return "linear";
            case Kind::grid: return "grid";
        }
        return "?";
    }

private:
    Segment(Kind kind, double a, double b, std::vector<double> values)
        : kind_(kind), a_(a), b_(b), values_(std::move(values)) {
        if (kind_ == Kind::constant && values_.size() == 1) {
            pieces_.push_back({a_, b_, values_[0], values_[0]});
        } else if (values_.size() >= 2) {
            const std::size_t n = values_.size() - 1;
            for (std::size_t i = 0; i < n; ++i) {
                const double lo = i == 0 ? a_ : a_ + (b_ - a_) * static_cast<double>(i) / static_cast<double>(n);
                const double hi = i + 1 == n ? b_ : a_ + (b_ - a_) * static_cast<double>(i + 1) / static_cast<double>(n);
                pieces_.push_back({lo, hi, values_[i], values_[i + 1]});
            }
        }
    }

    Kind kind_;
    double a_;
    double b_;
    std::vector<double> values_;
    std::vector<LinearPiece> pieces_;
};

class MixedLaw {
public:
    /// Validates every invariant; violations raise InvalidInput naming the field.
    static MixedLaw make(std::vector<Atom> atoms, std::vector<Segment> segments) {
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const std::string path = "atoms[" + std::to_string(i) + "]";
            if (!std::isfinite(atoms[i].w) || atoms[i].w < 1.0) throw InvalidInput(path + ".w", "location must be >= 1");
            if (!(atoms[i].p > 0) || !std::isfinite(atoms[i].p)) throw InvalidInput(path + ".p", "mass must be > 0");
            for (std::size_t j = 0; j < i; ++j) {
                if (atoms[j].w == atoms[i].w) {
                    throw InvalidInput(path + ".w", "duplicates atoms[" + std::to_string(j) + "].w");
                }
            }
        }
        for (std::size_t i = 0; i < segments.size(); ++i) {
            const std::string path = "segments[" + std::to_string(i) + "]";
            const auto& s = segments[i];
            if (!std::isfinite(s.a()) || s.a() < 1.0) throw InvalidInput(path + ".a", "must be >= 1");
            if (!std::isfinite(s.b()) || !(s.b() > s.a())) throw InvalidInput(path + ".b", "must exceed a");
            if (s.kind() == Segment::Kind::constant && s.values().size() != 1) {
                throw InvalidInput(path, "const segment needs one value");
            }
            if (s.kind() == Segment::Kind::linear && s.values().size() != 2) {
                throw InvalidInput(path, "linear segment needs ya and yb");
            }
            if (s.kind() == Segment::Kind::grid && s.values().size() < 2) {
                throw InvalidInput(path + ".values", "grid segment needs >= 2 samples");
            }
            for (std::size_t k = 0; k < s.values().size(); ++k) {
                if (!(s.values()[k] >= 0) || !std::isfinite(s.values()[k])) {
                    throw InvalidInput(path + value_field(s.kind(), k), "density must be finite and >= 0");
                }
            }
            for (std::size_t j = 0; j < i; ++j) {
                const auto& o = segments[j];
                if (s.a() < o.b() && o.a() < s.b()) {
                    throw InvalidInput(path, "overlaps segments[" + std::to_string(j) + "]");
                }
            }
            for (std::size_t j = 0; j < atoms.size(); ++j) {
                if (s.contains(atoms[j].w)) {
                    throw InvalidInput("atoms[" + std::to_string(j) + "].w", "lies inside " + path);
                }
            }
        }
        double total = 0;
        for (const auto& a : atoms) total += a.p;
        for (const auto& s : segments) total += s.mass();
        if (std::abs(total - 1.0) > kMassTolerance) {
            throw InvalidInput("mass", "total mass " + std::to_string(total) + " differs from 1 by more than 1e-9");
        }
        std::sort(segments.begin(), segments.end(), [](const Segment& x, const Segment& y) { return x.a() < y.a(); });
        return MixedLaw(std::move(atoms), std::move(segments));
    }

    [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    /// Sorted by left endpoint.
    [[nodiscard]] const std::vector<Segment>& segments() const noexcept { return segments_; }

    /// rho(x); a right endpoint not claimed by another segment takes its
    /// segment's limiting value so quadrature sees a continuous integrand.
    [[nodiscard]] double density(double x) const noexcept {
        for (const auto& s : segments_) {
            if (s.contains(x)) return s.density(x);
        }
        for (const auto& s : segments_) {
            if (x == s.b()) return s.density(x);
        }
        return 0.0;
    }

    [[nodiscard]] double atom_mass() const noexcept {
        double m = 0;
        for (const auto& a : atoms_) m += a.p;
        return m;
    }

    [[nodiscard]] double density_mass() const noexcept {
        double m = 0;
        for (const auto& s : segments_) m += s.mass();
        return m;
    }

    /// Index of the atom at w, or npos.
    [[nodiscard]] std::size_t find_atom(double w) const noexcept {
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (atoms_[i].w == w) return i;
        }
        return npos;
    }

    /// Density pieces clipped to [lo, hi], in order.
    [[nodiscard]] std::vector<LinearPiece> pieces_in(double lo, double hi) const {
        std::vector<LinearPiece> out;
        for (const auto& s : segments_) {
            for (const auto& p : s.pieces()) {
                if (p.a < hi && lo < p.b) out.push_back(p.clip(lo, hi));
            }
        }
        return out;
    }

    /// Total length of [lo, hi] covered by segments.
    [[nodiscard]] double covered_length(double lo, double hi) const noexcept {
        double len = 0;
        for (const auto& s : segments_) {
            const double ca = std::max(s.a(), lo);
            const double cb = std::min(s.b(), hi);
            if (cb > ca) len += cb - ca;
        }
        return len;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    MixedLaw(std::vector<Atom> atoms, std::vector<Segment> segments)
        : atoms_(std::move(atoms)), segments_(std::move(segments)) {}

    static std::string value_field(Segment::Kind kind, std::size_t k) {
        switch (kind) {
            case Segment::Kind::constant: return ".value";
            case Segment::Kind::linear: return k == 0 ? ".ya" : ".yb";
            case Segment::Kind::grid: return ".values[" + std::to_string(k) + "]";
        }
        return "";
    }

    std::vector<Atom> atoms_;
    std::vector<Segment> segments_;
};

/// Codelengths in nats: one per atom (same order as the law) plus a function
/// on the density support.
struct LengthAssignment {
    std::vector<double> atom_lengths;
    std::function<double(double)> density_length;
    std::string description = "explicit";
};

struct ImpliedOptions {
    /// Permit rho > 1, which yields negative implied lengths.
    bool allow_negative = false;
};

/// Lengths -ln P(w) on atoms and -ln rho(x) on the density.
inline LengthAssignment implied_lengths(const MixedLaw& law, const ImpliedOptions& options = {}) {
    for (std::size_t i = 0; i < law.segments().size(); ++i) {
        const auto& s = law.segments()[i];
        const std::string path = "segments[" + std::to_string(i) + "]";
        const auto& v = s.values();
        for (const auto& p : s.pieces()) {
            if (p.ya == 0 && p.yb == 0) throw ZeroMassRegion(path + ": density vanishes on [" + std::to_string(p.a) +
                                                              ", " + std::to_string(p.b) + "]");
        }
        for (std::size_t k = 1; k + 1 < v.size(); ++k) {
            if (v[k] == 0) throw ZeroMassRegion(path + ": density vanishes at interior sample " + std::to_string(k));
        }
        if (!options.allow_negative && s.max_density() > 1.0) {
            throw NegativeLength(path + ": density exceeds 1, implied length would be negative");
        }
    }
    LengthAssignment out;
    out.atom_lengths.reserve(law.atoms().size());
    for (const auto& a : law.atoms()) out.atom_lengths.push_back(-std::log(a.p));
    out.density_length = [law](double x) { return -std::log(law.density(x)); };
    out.description = "implied";
    return out;
}

/// lens + c everywhere (scales the Kraft integral by e^-c).
inline LengthAssignment shifted(LengthAssignment lens, double c) {
    for (auto& l : lens.atom_lengths) l += c;
    lens.density_length = [f = std::move(lens.density_length), c](double x) { return f(x) + c; };
    lens.description += "+" + std::to_string(c);
    return lens;
}

namespace detail {

inline void check_lengths(const MixedLaw& law, const LengthAssignment& lens) {
    if (lens.atom_lengths.size() != law.atoms().size()) {
        throw InvalidInput("lengths.atoms", "expected " + std::to_string(law.atoms().size()) + " atom lengths, got " +
                                                std::to_string(lens.atom_lengths.size()));
    }
    if (!law.segments().empty() && !lens.density_length) {
        throw InvalidInput("lengths.density", "law has a density but no density length");
    }
}

// Sum over density pieces of the integral of g(x, rho(x)).
template <typename G>
double integrate_density(const MixedLaw& law, G&& g, const QuadratureOptions& q) {
    double total = 0;
    for (const auto& s : law.segments()) {
        for (const auto& p : s.pieces()) {
            total += integrate([&](double x) { return g(x, p.density(x)); }, p.a, p.b, q);
        }
    }
    return total;
}

}  // namespace detail

/// -sum P ln P - integral rho ln rho; the continuous part is differential entropy.
inline double entropy(const MixedLaw& law) {
    double h = 0;
    for (const auto& a : law.atoms()) h -= a.p * std::log(a.p);
    for (const auto& s : law.segments()) h -= s.rho_log_rho();
    return h;
}

/// sum_w e^-l(w) + integral e^-l(x) dx over the density support.
inline double kraft_integral(const MixedLaw& law, const LengthAssignment& lens, const QuadratureOptions& q = {}) {
    detail::check_lengths(law, lens);
    double k = 0;
    for (double l : lens.atom_lengths) k += std::exp(-l);
    k += detail::integrate_density(
        law, [&](double x, double) { return std::exp(-lens.density_length(x)); }, q);
    return k;
}

/// Mean codelength under the law.
inline double expected_length(const MixedLaw& law, const LengthAssignment& lens, const QuadratureOptions& q = {}) {
    detail::check_lengths(law, lens);
    double e = 0;
    for (std::size_t i = 0; i < law.atoms().size(); ++i) e += law.atoms()[i].p * lens.atom_lengths[i];
    e += detail::integrate_density(
        law, [&](double x, double rho) { return weighted(rho, lens.density_length(x)); }, q);
    return e;
}

struct ShannonReport {
    double expected_length;
    double entropy;
    double kl;      ///< D_KL(p || q), q = e^-l / K
    double log_k;   ///< ln K
    double kraft;   ///< K

    /// E[l] - H - KL + ln K, zero up to rounding.
    [[nodiscard]] double residual() const noexcept { return expected_length - entropy - kl + log_k; }
};

inline ShannonReport shannon_identity_report(const MixedLaw& law, const LengthAssignment& lens,
                                             const QuadratureOptions& q = {}) {
    const double k = kraft_integral(law, lens, q);
    if (!(k > 0) || !std::isfinite(k)) throw DomainError("Kraft integral must be finite and positive");
    const double log_k = std::log(k);
    double kl = 0;
    for (std::size_t i = 0; i < law.atoms().size(); ++i) {
        const double p = law.atoms()[i].p;
        kl += p * (std::log(p) + lens.atom_lengths[i] + log_k);
    }
    kl += detail::integrate_density(
        law,
        [&](double x, double rho) {
            return rho == 0 ? 0.0 : rho * (std::log(rho) + lens.density_length(x) + log_k);
        },
        q);
    return {expected_length(law, lens, q), entropy(law), kl, log_k, k};
}

}  // namespace omegalab
