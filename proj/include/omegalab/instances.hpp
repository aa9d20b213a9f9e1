#pragma once
// Seeded random laws, Kraft-feasible lengths and cell partitions for the
// property suites. Only mt19937_64 raw output is consumed, so instances are
// identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mixedlaw.hpp"
#include "quantizer.hpp"

namespace omegalab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform on {lo, ..., hi}.
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) { return lo + engine_() % (hi - lo + 1); }
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Instance seed for index i of a suite run with base seed s.
inline std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct LawShape {
    unsigned max_atoms = 3;
    unsigned max_segments = 3;
    bool allow_grid = false;
    /// Only constant segments (uniform density).
    bool uniform_only = false;
};

namespace detail {

struct RawLaw {
    std::vector<Atom> atoms;
    std::vector<double> seg_a, seg_b;
    std::vector<std::vector<double>> heights;
    std::vector<Segment::Kind> kinds;
};

inline RawLaw raw_layout(Rng& rng, const LawShape& shape) {
    RawLaw raw;
    const unsigned n_atoms = static_cast<unsigned>(rng.integer(0, shape.max_atoms));
    const unsigned n_segs = static_cast<unsigned>(rng.integer(1, shape.max_segments));
    double x = 1.0;
    // Atoms sit in the gaps between segments.
    std::vector<unsigned> atoms_before(n_segs + 1, 0);
    for (unsigned i = 0; i < n_atoms; ++i) ++atoms_before[rng.integer(0, n_segs)];
    for (unsigned s = 0; s <= n_segs; ++s) {
        for (unsigned i = 0; i < atoms_before[s]; ++i) {
            raw.atoms.push_back({x, rng.uniform(0.05, 1.0)});
            x += rng.uniform(0.25, 1.0);
        }
        if (s == n_segs) break;
        const double a = x;
        const double b = a + rng.uniform(0.5, 4.0);
        Segment::Kind kind = Segment::Kind::constant;
        if (!shape.uniform_only) {
            const auto pick = rng.integer(0, shape.allow_grid ? 2 : 1);
            kind = pick == 0 ? Segment::Kind::constant : pick == 1 ? Segment::Kind::linear : Segment::Kind::grid;
        }
        std::vector<double> h;
        const unsigned count = kind == Segment::Kind::constant ? 1 : kind == Segment::Kind::linear ? 2
                                                                  : static_cast<unsigned>(rng.integer(3, 9));
        for (unsigned k = 0; k < count; ++k) h.push_back(rng.uniform(0.05, 1.0));
        raw.seg_a.push_back(a);
        raw.seg_b.push_back(b);
        raw.heights.push_back(std::move(h));
        raw.kinds.push_back(kind);
        x = b + (rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.1, 1.0));
    }
    return raw;
}

inline Segment make_segment(Segment::Kind kind, double a, double b, const std::vector<double>& h, double scale) {
    std::vector<double> v;
    for (double y : h) v.push_back(y * scale);
    switch (kind) {
        case Segment::Kind::constant: return Segment::constant(a, b, v[0]);
        case Segment::Kind::linear: return Segment::linear(a, b, v[0], v[1]);
        case Segment::Kind::grid: return Segment::grid(a, b, std::move(v));
    }
    return Segment::constant(a, b, v[0]);
}

inline MixedLaw normalize(const RawLaw& raw, const std::vector<std::vector<double>>& heights,
                          const std::vector<double>& atom_weights) {
    double total = 0;
    for (double w : atom_weights) total += w;
    for (std::size_t s = 0; s < heights.size(); ++s) {
        total += make_segment(raw.kinds[s], raw.seg_a[s], raw.seg_b[s], heights[s], 1.0).mass();
    }
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < raw.atoms.size(); ++i) atoms.push_back({raw.atoms[i].w, atom_weights[i] / total});
    std::vector<Segment> segments;
    for (std::size_t s = 0; s < heights.size(); ++s) {
        segments.push_back(make_segment(raw.kinds[s], raw.seg_a[s], raw.seg_b[s], heights[s], 1.0 / total));
    }
    return MixedLaw::make(std::move(atoms), std::move(segments));
}

inline double max_density(const MixedLaw& law) {
    double m = 0;
    for (const auto& s : law.segments()) m = std::max(m, s.max_density());
    return m;
}

}  // namespace detail

/// A normalized random law with density <= 1 everywhere.
inline MixedLaw random_law(Rng& rng, const LawShape& shape = {}) {
    for (;;) {
        const auto raw = detail::raw_layout(rng, shape);
        std::vector<double> weights;
        for (const auto& a : raw.atoms) weights.push_back(a.p);
        auto law = detail::normalize(raw, raw.heights, weights);
        if (detail::max_density(law) <= 1.0) return law;
    }
}

/// Lengths -ln p'(x) + c where p' is a second random law on the same atoms
/// and segments and c >= max(0, ln max rho'), so lengths are nonnegative and
/// the Kraft integral equals e^-c <= 1.
inline LengthAssignment random_feasible_lengths(const MixedLaw& law, Rng& rng) {
    detail::RawLaw raw;
    for (const auto& a : law.atoms()) raw.atoms.push_back({a.w, 0});
    std::vector<std::vector<double>> heights;
    for (const auto& s : law.segments()) {
        raw.seg_a.push_back(s.a());
        raw.seg_b.push_back(s.b());
        raw.kinds.push_back(s.kind());
        std::vector<double> h;
        for (std::size_t k = 0; k < s.values().size(); ++k) h.push_back(rng.uniform(0.05, 1.0));
        heights.push_back(std::move(h));
    }
    std::vector<double> weights;
    for (std::size_t i = 0; i < law.atoms().size(); ++i) weights.push_back(rng.uniform(0.05, 1.0));
    const MixedLaw other = detail::normalize(raw, heights, weights);
    const double shift = std::max(0.0, std::log(detail::max_density(other))) + rng.uniform(0.0, 1.0);
    LengthAssignment lens = shifted(implied_lengths(other, {.allow_negative = true}), shift);
    lens.description = "random-feasible";
    return lens;
}

/// Every atom encoded and every segment split into 1..max_cells cells.
inline Quantization random_full_partition(const MixedLaw& law, Rng& rng, unsigned max_cells = 4) {
    Quantization q;
    for (const auto& a : law.atoms()) q.encode_atoms.push_back(a.w);
    for (const auto& s : law.segments()) {
        const unsigned n = static_cast<unsigned>(rng.integer(1, max_cells));
        std::vector<double> cuts{s.a(), s.b()};
        for (unsigned i = 1; i < n; ++i) cuts.push_back(rng.uniform(s.a(), s.b()));
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] > cuts[i]) q.cells.push_back({cuts[i], cuts[i + 1]});
        }
    }
    return q;
}

}  // namespace omegalab
