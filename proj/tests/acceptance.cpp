// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance --only N   run criterion N

#include <CLI11.hpp>

#include <omegalab/omegalab.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace omegalab;

namespace {

// Tolerances and sizes.
constexpr std::uint64_t kRoundTripMax = 100000;
constexpr int kRoundTripRandom = 1000;
constexpr unsigned kRandomBits = 256;
constexpr std::uint64_t kLengthMax = 1000000;
constexpr std::uint64_t kKraftCutoff = std::uint64_t{1} << 24;
constexpr unsigned kKraftDigits = 10;
constexpr const char* kKraftExpected = "0.9697265625";
constexpr std::uint64_t kOracleMaxK = 20;
constexpr std::size_t kGridPoints = 200;
constexpr double kFixedPointRelTol = 1e-12;
constexpr double kGapTol = 1e-12;
constexpr int kInstances = 200;
constexpr double kCompletenessTol = 1e-9;
constexpr double kSaturationTol = 1e-8;
constexpr double kIdentityTol = 1e-8;
constexpr double kKlFloor = -1e-10;
constexpr double kShannonSlack = 1e-9;
constexpr double kQuantizedKraftSlack = 1e-9;
constexpr double kHeisenbergTol = 1e-8;
constexpr double kBoltzmannTol = 1e-8;
constexpr std::uint64_t kSeed = 20240611;

// Truncated fixed-point law anchors (independent scipy quadrature).
struct Anchor {
    double X;
    double K;
    double excess;
};
constexpr Anchor kAnchors[] = {
    {1e2, 2.423422652460304, -0.885180860159691},
    {1e4, 2.797654395125455, -1.028781350074380},
    {1e6, 2.965382532251958, -1.087006040064428},
};
constexpr double kAnchorTol = 1e-9;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

PosInt random_below_pow2(Rng& rng, unsigned bits) {
    PosInt v = 0;
    for (unsigned i = 0; i < bits; i += 64) v = (v << 64) | PosInt(rng.bits());
    v >>= static_cast<unsigned>((bits + 63) / 64 * 64 - bits);
    return v == 0 ? PosInt(1) : v;
}

std::vector<double> fixed_point_grid() { return log_grid(std::numbers::e + 0.01, 1e300, kGridPoints); }

Outcome omega_round_trip() {
    for (std::uint64_t n = 1; n <= kRoundTripMax; ++n) {
        const auto d = omega_decode<std::uint64_t>(omega_encode(n));
        if (d.value != n || d.bits_consumed != omega_len(n)) return {false, fmt("mismatch at n=%llu", (unsigned long long)n)};
    }
    Rng rng(kSeed);
    for (int i = 0; i < kRoundTripRandom; ++i) {
        const PosInt n = random_below_pow2(rng, kRandomBits);
        const auto d = omega_decode(omega_encode(n));
        if (d.value != n || d.bits_consumed != omega_len(n)) return {false, "mismatch at random n=" + n.str()};
    }
    return {true, fmt("1..%llu and %d random values < 2^%u", (unsigned long long)kRoundTripMax, kRoundTripRandom,
                      kRandomBits)};
}

Outcome length_agreement() {
    for (std::uint64_t n = 1; n <= kLengthMax; ++n) {
        if (omega_encode(n).size() != omega_len(n)) return {false, fmt("|encode| != len at n=%llu", (unsigned long long)n)};
        if (n >= 2 && omega_len(n) != omega_len(beta(n) - 1) + beta(n)) {
            return {false, fmt("recursion fails at n=%llu", (unsigned long long)n)};
        }
    }
    return {true, fmt("n <= %llu", (unsigned long long)kLengthMax)};
}

Outcome kraft_partial_sum() {
    const auto s = partial_sum_beta_le(kKraftCutoff);
    const auto dec = s.to_decimal(kKraftDigits);
    return {dec == kKraftExpected, "partial_sum_beta_le(2^24) = " + s.to_exact_string() + " = " + dec};
}

Outcome kraft_oracle() {
    Dyadic prev;
    const Dyadic one(PosInt(1), 0);
    for (std::uint64_t K = 1; K <= kOracleMaxK; ++K) {
        const auto s = partial_sum_beta_le(K);
        const auto b = brute_partial_sum((std::uint64_t{1} << K) - 1);
        if (s != b) return {false, fmt("K=%llu: block %s != brute %s", (unsigned long long)K, s.to_exact_string().c_str(),
                                       b.to_exact_string().c_str())};
        if (!(s < one) || !(s > prev)) return {false, fmt("K=%llu not strictly increasing below 1", (unsigned long long)K)};
        prev = s;
    }
    return {true, "K <= 20, last " + prev.to_exact_string()};
}

Outcome fixed_point() {
    const auto star = CodelengthFn::fixed_point();
    double worst = 0;
    for (double x : fixed_point_grid()) {
        const double v = ell_star(x);
        worst = std::max(worst, std::abs(apply_T(star, x) - v) / std::abs(v));
        const double lx = std::log(x);
        if (!(lx <= v && v <= 2 * lx)) return {false, fmt("sandwich fails at x=%.17g", x)};
    }
    return {worst <= kFixedPointRelTol, fmt("max rel residual %.3g, sandwich holds", worst)};
}

Outcome convergence_gap_check() {
    const auto zero = CodelengthFn::zero();
    const auto three = CodelengthFn::constant(3);
    const auto square = CodelengthFn::custom("t^2", [](double t) { return t * t; }, 0.0, 1.0);
    struct Case {
        const CodelengthFn* f;
        double sup;
    };
    double worst = 0;
    for (const Case c : {Case{&zero, 0.0}, Case{&three, 3.0}, Case{&square, 1.0}}) {
        for (double x : fixed_point_grid()) {
            const double gap = convergence_gap(*c.f, x);
            worst = std::max(worst, std::abs(gap - (*c.f)(log_chain(x).tail())));
            if (gap > c.sup + kGapTol) return {false, fmt("gap %.17g above sup %g at x=%.17g", gap, c.sup, x)};
        }
    }
    return {worst <= kGapTol, fmt("max |gap - f0(tail)| %.3g", worst)};
}

Outcome saturation() {
    double worst_k = 0;
    double worst_e = 0;
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(instance_seed(kSeed, i));
        const auto law = random_law(rng, {.allow_grid = true});
        const auto r = shannon_identity_report(law, implied_lengths(law));
        worst_k = std::max(worst_k, std::abs(r.kraft - 1));
        worst_e = std::max(worst_e, std::abs(r.expected_length - r.entropy));
    }
    return {worst_k <= kCompletenessTol && worst_e <= kSaturationTol,
            fmt("max |K-1| %.3g, max |E-H| %.3g", worst_k, worst_e)};
}

Outcome shannon_identity() {
    double worst = 0;
    double min_kl = 0;
    double worst_bound = 0;
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(instance_seed(kSeed + 1, i));
        const auto law = random_law(rng, {.allow_grid = true});
        const auto r = shannon_identity_report(law, random_feasible_lengths(law, rng));
        worst = std::max(worst, std::abs(r.residual()));
        min_kl = std::min(min_kl, r.kl);
        if (r.kraft <= 1) worst_bound = std::max(worst_bound, r.entropy - r.expected_length);
    }
    return {worst <= kIdentityTol && min_kl >= kKlFloor && worst_bound <= kShannonSlack,
            fmt("max residual %.3g, min KL %.3g, max H-E %.3g", worst, min_kl, worst_bound)};
}

MixedLaw uniform_law(double a, double b) { return MixedLaw::make({}, {Segment::constant(a, b, 1.0 / (b - a))}); }

Quantization unit_cells(double a, double b) {
    Quantization q;
    for (double x = a; x < b; x += 1.0) q.cells.push_back({x, x + 1.0});
    return q;
}

Outcome quantizer_identities() {
    double worst_a = 0, worst_b = 0, worst_k = 0, worst_h = 0, worst_eq = 0;
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(instance_seed(kSeed + 2, i));
        const auto law = random_law(rng, {.allow_grid = true});
        const auto lens = random_feasible_lengths(law, rng);
        const auto r = decomposition_report(law, lens, random_full_partition(law, rng));
        worst_a = std::max(worst_a, std::abs(r.identity_a_residual()));
        worst_b = std::max(worst_b, std::abs(r.identity_b_residual()));
        worst_k = std::max(worst_k, r.kraft - 1);
        worst_h = std::max(worst_h, r.heisenberg_rhs - r.heisenberg_lhs);
    }
    // Equality case: density uniform on each cell, implied lengths (K = 1, q = pi).
    for (int i = 0; i < kInstances; ++i) {
        Rng rng(instance_seed(kSeed + 3, i));
        const auto law = random_law(rng, {.uniform_only = true});
        Quantization q;
        for (const auto& a : law.atoms()) q.encode_atoms.push_back(a.w);
        for (const auto& s : law.segments()) q.cells.push_back({s.a(), s.b()});
        const auto r = decomposition_report(law, implied_lengths(law), q);
        worst_eq = std::max(worst_eq, std::abs(r.heisenberg_lhs - r.heisenberg_rhs));
    }
    const auto two = uniform_law(1, 3);
    const auto b1 = boltzmann_check(decomposition_report(two, implied_lengths(two), unit_cells(1, 3)), 2);
    const auto four = uniform_law(1, 5);
    const auto b2 = boltzmann_check(decomposition_report(four, implied_lengths(four), unit_cells(1, 5)), 2);
    const bool boltzmann = std::abs(b1.lbar_star - 1) <= kBoltzmannTol && std::abs(b1.kD_lnW - 1) <= kBoltzmannTol &&
                           std::abs(b2.lbar_star - 2) <= kBoltzmannTol && std::abs(b2.kD_lnW - 2) <= kBoltzmannTol;
    const bool pass = worst_a <= kIdentityTol && worst_b <= kIdentityTol && worst_k <= kQuantizedKraftSlack &&
                      worst_h <= kHeisenbergTol && worst_eq <= kHeisenbergTol && boltzmann;
    return {pass, fmt("A %.3g, B %.3g, K-1 %.3g, Heisenberg violation %.3g, equality gap %.3g, Boltzmann %.17g/%.17g bits",
                      worst_a, worst_b, worst_k, worst_h, worst_eq, b1.lbar_star, b2.lbar_star)};
}

// Integral over [1, X] split where the iterated-log chain gains a level.
double integrate_levels(const std::function<double(double)>& f, double X) {
    std::vector<double> pts{1.0};
    for (double b = std::numbers::e; b < X; b = std::exp(b)) pts.push_back(b);
    pts.push_back(X);
    double total = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += integrate(f, pts[i], pts[i + 1]);
    return total;
}

Outcome truncated_fixed_point_law() {
    std::vector<double> excess;
    double worst_anchor = 0;
    double worst_identity = 0;
    for (const auto& a : kAnchors) {
        const double K = integrate_levels([](double x) { return std::exp(-ell_star(x)); }, a.X);
        const double E = integrate_levels([](double x) { return ell_star(x) * std::exp(-ell_star(x)); }, a.X) / K;
        const double H = integrate_levels(
            [K](double x) {
                const double p = std::exp(-ell_star(x)) / K;
                return -p * std::log(p);
            },
            a.X);
        excess.push_back(E - H);
        worst_identity = std::max(worst_identity, std::abs((E - H) + std::log(K)));
        worst_anchor = std::max({worst_anchor, std::abs(K - a.K), std::abs((E - H) - a.excess)});
    }
    bool nonnegative = true;
    bool monotone = true;
    bool below_one = true;
    for (std::size_t i = 0; i < excess.size(); ++i) {
        nonnegative = nonnegative && excess[i] >= 0;
        below_one = below_one && excess[i] < 1;
        if (i > 0) monotone = monotone && excess[i] <= excess[i - 1];
    }
    const bool pass = nonnegative && monotone && below_one && worst_anchor <= kAnchorTol && worst_identity <= kIdentityTol;
    return {pass, fmt("excess %.12f, %.12f, %.12f nats; nonnegative %s, monotone %s, < 1 %s; anchor dev %.3g",
                      excess[0], excess[1], excess[2], nonnegative ? "yes" : "NO", monotone ? "yes" : "NO",
                      below_one ? "yes" : "NO", worst_anchor)};
}

struct Criterion {
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"omega round trip", omega_round_trip},
    {"codelength formula and recursion", length_agreement},
    {"Kraft partial sum at 2^24", kraft_partial_sum},
    {"Kraft block sums vs brute force", kraft_oracle},
    {"fixed point of T", fixed_point},
    {"flow convergence gap", convergence_gap_check},
    {"implied lengths saturate Kraft and entropy", saturation},
    {"Shannon identity for feasible lengths", shannon_identity},
    {"quantized decomposition identities", quantizer_identities},
    {"truncated fixed-point law excess", truncated_fixed_point_law},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"omegalab acceptance suite"};
    unsigned only = 0;
    app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1U, 10U));
    CLI11_PARSE(app, argc, argv);

    int failures = 0;
    for (unsigned i = 1; i <= std::size(kCriteria); ++i) {
        if (only != 0 && i != only) continue;
        const auto& c = kCriteria[i - 1];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2u  %s  %-44s %s (%.2f s)\n", i, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
