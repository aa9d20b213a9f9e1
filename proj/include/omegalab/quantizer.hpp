#pragma once
// Quantization of a mixed law into a finite code: a subset W0 of atoms plus
// interval cells A_j of the density support, each becoming one symbol with
//   pi_s = P(w)             l_s = l(w)                      (atoms)
//   pi_s = int_A rho        l_s = -ln int_A e^-l(x) dx      (cells)
// and the exact decompositions
//   lbar = H(pi) + D(pi || q) + ln(1/K)                     (identity A)
//   H(pi) = H(p) - sum_j pi_j ln v_j + D(rho || rho_bar)    (identity B, full coverage)

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mixedlaw.hpp"
#include "quadrature.hpp"

namespace omegalab {

struct Cell {
    double a;
    double b;

    [[nodiscard]] double volume() const noexcept { return b - a; }
};

struct Quantization {
    /// Locations of the atoms encoded explicitly.
    std::vector<double> encode_atoms;
    std::vector<Cell> cells;
};

struct CodeEntry {
    enum class Kind { atom, cell };
    Kind kind;
    /// Atom index in the law, or cell index in the quantization.
    std::size_t index;
    double mass;
    double length;
    /// Cell volume v_j; zero for atoms.
    double volume;
};

struct QuantizedCode {
    std::vector<CodeEntry> entries;

    [[nodiscard]] double total_mass() const noexcept {
        double m = 0;
        for (const auto& e : entries) m += e.mass;
        return m;
    }
};

/// Checks atom membership, cell disjointness and that cells lie in the support.
inline void validate_quantization(const MixedLaw& law, const Quantization& q) {
    for (std::size_t i = 0; i < q.encode_atoms.size(); ++i) {
        const std::string path = "encode_atoms[" + std::to_string(i) + "]";
        if (law.find_atom(q.encode_atoms[i]) == MixedLaw::npos) throw InvalidInput(path, "not an atom of the law");
        for (std::size_t j = 0; j < i; ++j) {
            if (q.encode_atoms[j] == q.encode_atoms[i]) throw InvalidInput(path, "listed twice");
        }
    }
    for (std::size_t i = 0; i < q.cells.size(); ++i) {
        const std::string path = "cells[" + std::to_string(i) + "]";
        const auto& c = q.cells[i];
        if (!std::isfinite(c.a) || !std::isfinite(c.b) || !(c.b > c.a)) throw InvalidInput(path, "needs a < b");
        for (std::size_t j = 0; j < i; ++j) {
            const auto& o = q.cells[j];
            if (c.a < o.b && o.a < c.b) throw InvalidInput(path, "overlaps cells[" + std::to_string(j) + "]");
        }
        const double covered = law.covered_length(c.a, c.b);
        if (std::abs(covered - c.volume()) > 1e-12 * std::max(1.0, c.volume())) {
            throw InvalidInput(path, "not inside the density support");
        }
    }
}

inline QuantizedCode quantize(const MixedLaw& law, const LengthAssignment& lens, const Quantization& q,
                              const QuadratureOptions& quad = {}) {
    detail::check_lengths(law, lens);
    validate_quantization(law, q);
    QuantizedCode code;
    for (double w : q.encode_atoms) {
        const std::size_t i = law.find_atom(w);
        code.entries.push_back({CodeEntry::Kind::atom, i, law.atoms()[i].p, lens.atom_lengths[i], 0.0});
    }
    for (std::size_t j = 0; j < q.cells.size(); ++j) {
        const auto& c = q.cells[j];
        double mass = 0;
        double weight = 0;
        for (const auto& p : law.pieces_in(c.a, c.b)) {
            mass += p.mass();
            weight += integrate([&](double x) { return std::exp(-lens.density_length(x)); }, p.a, p.b, quad);
        }
        if (!(mass > 0)) throw EmptyCell("cells[" + std::to_string(j) + "] carries no probability mass");
        code.entries.push_back({CodeEntry::Kind::cell, j, mass, -std::log(weight), c.volume()});
    }
    return code;
}

/// K = sum_s e^-l_s.
inline double quantized_kraft(const QuantizedCode& code) {
    double k = 0;
    for (const auto& e : code.entries) k += std::exp(-e.length);
    return k;
}

struct DecompositionReport {
    double avg_len = 0;          ///< lbar = sum pi_s l_s
    double kraft = 0;            ///< K
    double H_pi = 0;
    double KL_pi_q = 0;
    double logK_slack = 0;       ///< ln(1/K)
    double coverage = 0;         ///< sum pi_s
    bool full_coverage = false;
    double H_p = 0;
    double vol_term = 0;         ///< sum_j pi_j ln v_j
    double KL_rho_rhobar = 0;
    double V_Q = 0;              ///< resolution perplexity exp(vol_term)
    double heisenberg_lhs = 0;   ///< lbar
    double heisenberg_rhs = 0;   ///< H(p) - ln V_Q
    double V = 0;                ///< e^H(p)
    double boltzmann_W = 0;      ///< V / V_Q
    unsigned display_base = 2;
    double k_D = 0;              ///< 1 / ln D

    /// The ln(1/K) term carries weight sum pi_s, which is below 1 under partial coverage.
    [[nodiscard]] double identity_a_residual() const noexcept {
        return avg_len - H_pi - KL_pi_q - coverage * logK_slack;
    }

    /// NaN unless the quantization covers the whole law.
    [[nodiscard]] double identity_b_residual() const noexcept {
        if (!full_coverage) return std::numeric_limits<double>::quiet_NaN();
        return H_pi - H_p + vol_term - KL_rho_rhobar;
    }
};

struct ReportOptions {
    unsigned display_base = 2;
    /// Require full coverage and raise CoverageError otherwise.
    bool require_full_coverage = true;
};

inline DecompositionReport decomposition_report(const MixedLaw& law, const LengthAssignment& lens,
                                                const Quantization& q, const ReportOptions& options = {},
                                                const QuadratureOptions& quad = {}) {
    if (options.display_base < 2) throw DomainError("display base must be >= 2");
    const QuantizedCode code = quantize(law, lens, q, quad);
    DecompositionReport r;
    r.display_base = options.display_base;
    r.k_D = 1.0 / std::log(static_cast<double>(options.display_base));
    r.kraft = quantized_kraft(code);
    r.logK_slack = -std::log(r.kraft);
    for (const auto& e : code.entries) {
        r.avg_len += e.mass * e.length;
        r.H_pi -= e.mass * std::log(e.mass);
        const double q_s = std::exp(-e.length) / r.kraft;
        r.KL_pi_q += e.mass * std::log(e.mass / q_s);
        r.coverage += e.mass;
    }
    r.full_coverage = std::abs(r.coverage - 1.0) <= kMassTolerance;
    if (options.require_full_coverage && !r.full_coverage) {
        throw CoverageError("quantization covers mass " + std::to_string(r.coverage) + ", full decomposition needs 1");
    }
    r.H_p = entropy(law);
    for (const auto& e : code.entries) {
        if (e.kind != CodeEntry::Kind::cell) continue;
        r.vol_term += e.mass * std::log(e.volume);
        const double flat = e.mass / e.volume;
        const Cell& c = q.cells[e.index];
        for (const auto& p : law.pieces_in(c.a, c.b)) {
            r.KL_rho_rhobar += integrate(
                [&](double x) {
                    const double rho = p.density(x);
                    return rho == 0 ? 0.0 : rho * std::log(rho / flat);
                },
                p.a, p.b, quad);
        }
    }
    r.V_Q = std::exp(r.vol_term);
    r.heisenberg_lhs = r.avg_len;
    r.heisenberg_rhs = r.H_p - r.vol_term;
    r.V = std::exp(r.H_p);
    r.boltzmann_W = r.V / r.V_Q;
    return r;
}

struct BoltzmannCheck {
    double lbar_star;  ///< lbar in base-D digits
    double kD_lnW;     ///< k_D ln W
    double gap;        ///< lbar_star - kD_lnW; zero in the equality case
};

/// Compares lbar with k_D ln W in base-D units. Only the equality case
/// (rho uniform per cell, K = 1, q = pi) promises a zero gap.
inline BoltzmannCheck boltzmann_check(const DecompositionReport& report, unsigned base) {
    if (base < 2) throw DomainError("base must be >= 2");
    const double k = 1.0 / std::log(static_cast<double>(base));
    const double lbar = report.avg_len * k;
    const double rhs = k * (report.H_p - report.vol_term);  // ln W without overflow
    return {lbar, rhs, lbar - rhs};
}

}  // namespace omegalab
