#include <gtest/gtest.h>

#include <omegalab/instances.hpp>
#include <omegalab/quantizer.hpp>

#include <cmath>
#include <numbers>

using namespace omegalab;

namespace {

const double ln2 = std::numbers::ln2;

MixedLaw uniform(double a, double b) { return MixedLaw::make({}, {Segment::constant(a, b, 1.0 / (b - a))}); }

Quantization unit_cells(double a, double b) {
    Quantization q;
    for (double x = a; x < b; x += 1.0) q.cells.push_back({x, x + 1.0});
    return q;
}

std::string error_path(const std::function<void()>& f) {
    try {
        f();
    } catch (const InvalidInput& e) {
        return e.path;
    }
    return "<none>";
}

}  // namespace

TEST(Quantize, Examples) {
    const auto law = uniform(1, 3);
    const auto code = quantize(law, implied_lengths(law), unit_cells(1, 3));
    ASSERT_EQ(code.entries.size(), 2U);
    for (const auto& e : code.entries) {
        EXPECT_NEAR(e.mass, 0.5, 1e-15);
        EXPECT_NEAR(e.length, ln2, 1e-14);
        EXPECT_EQ(e.volume, 1.0);
    }
    EXPECT_NEAR(quantized_kraft(code), 1.0, 1e-14);

    const auto half = quantize(law, implied_lengths(law), {{}, {{1, 2}}});
    EXPECT_NEAR(quantized_kraft(half), 0.5, 1e-14);

    const auto atom = MixedLaw::make({{4, 1.0}}, {});
    const auto one = quantize(atom, implied_lengths(atom), {{4.0}, {}});
    ASSERT_EQ(one.entries.size(), 1U);
    EXPECT_EQ(one.entries[0].kind, CodeEntry::Kind::atom);
    EXPECT_EQ(one.entries[0].mass, 1.0);
    EXPECT_EQ(one.entries[0].length, 0.0);
    EXPECT_EQ(quantized_kraft(one), 1.0);

    const auto ramp = MixedLaw::make({}, {Segment::linear(1, 2, 0, 2)});
    const auto r = quantize(ramp, implied_lengths(ramp, {.allow_negative = true}), {{}, {{1, 2}}});
    EXPECT_NEAR(r.entries[0].mass, 1.0, 1e-15);
    EXPECT_NEAR(r.entries[0].length, 0.0, 1e-12);
}

TEST(Quantize, CellSpanningAdjacentSegments) {
    const auto law = MixedLaw::make({}, {Segment::constant(1, 2, 0.25), Segment::constant(2, 3, 0.75)});
    const auto code = quantize(law, implied_lengths(law), {{}, {{1.5, 2.5}}});
    EXPECT_NEAR(code.entries[0].mass, 0.5, 1e-15);
    EXPECT_NEAR(code.entries[0].length, -std::log(0.5), 1e-13);
}

TEST(Quantize, Errors) {
    const auto law = MixedLaw::make({{5, 0.5}}, {Segment::grid(1, 3, {1.0, 0.0, 0.0})});
    const LengthAssignment zero{{0.0}, [](double) { return 0.0; }, "zero"};
    EXPECT_THROW(quantize(law, zero, {{}, {{2, 3}}}), EmptyCell);
    EXPECT_EQ(error_path([&] { quantize(law, zero, {{}, {{3, 4}}}); }), "cells[0]");
    EXPECT_EQ(error_path([&] { quantize(law, zero, {{}, {{1, 2}, {1.5, 2.5}}}); }), "cells[1]");
    EXPECT_EQ(error_path([&] { quantize(law, zero, {{}, {{2, 2}}}); }), "cells[0]");
    EXPECT_EQ(error_path([&] { quantize(law, zero, {{6.0}, {}}); }), "encode_atoms[0]");
    EXPECT_EQ(error_path([&] { quantize(law, zero, {{5.0, 5.0}, {}}); }), "encode_atoms[1]");
}

TEST(Decomposition, UniformTwoCells) {
    const auto law = uniform(1, 3);
    const auto r = decomposition_report(law, implied_lengths(law), unit_cells(1, 3));
    EXPECT_NEAR(r.avg_len, ln2, 1e-14);
    EXPECT_NEAR(r.H_pi, ln2, 1e-14);
    EXPECT_NEAR(r.KL_pi_q, 0.0, 1e-14);
    EXPECT_NEAR(r.logK_slack, 0.0, 1e-14);
    EXPECT_NEAR(r.H_p, ln2, 1e-14);
    EXPECT_NEAR(r.vol_term, 0.0, 1e-15);
    EXPECT_NEAR(r.V_Q, 1.0, 1e-15);
    EXPECT_NEAR(r.boltzmann_W, 2.0, 1e-13);
    EXPECT_NEAR(r.k_D * std::log(r.boltzmann_W), 1.0, 1e-13);
    EXPECT_TRUE(r.full_coverage);
    const auto b = boltzmann_check(r, 2);
    EXPECT_NEAR(b.lbar_star, 1.0, 1e-13);
    EXPECT_NEAR(b.kD_lnW, 1.0, 1e-13);
    EXPECT_NEAR(b.gap, 0.0, 1e-13);
}

TEST(Decomposition, RampDensity) {
    const auto law = MixedLaw::make({}, {Segment::linear(1, 2, 0, 2)});
    const auto r = decomposition_report(law, implied_lengths(law, {.allow_negative = true}), {{}, {{1, 2}}});
    EXPECT_NEAR(r.avg_len, 0.0, 1e-12);
    EXPECT_NEAR(r.H_p, 0.5 - ln2, 1e-14);
    EXPECT_NEAR(r.KL_rho_rhobar, ln2 - 0.5, 1e-12);
    EXPECT_NEAR(r.identity_a_residual(), 0.0, 1e-12);
    EXPECT_NEAR(r.identity_b_residual(), 0.0, 1e-12);
    EXPECT_GE(r.heisenberg_lhs, r.heisenberg_rhs - 1e-9);
}

TEST(Decomposition, UniformFourCellsIsTwoBits) {
    const auto law = uniform(1, 5);
    const auto r = decomposition_report(law, implied_lengths(law), unit_cells(1, 5));
    const auto b = boltzmann_check(r, 2);
    EXPECT_NEAR(b.lbar_star, 2.0, 1e-13);
    EXPECT_NEAR(b.kD_lnW, 2.0, 1e-13);
    EXPECT_NEAR(boltzmann_check(r, 4).lbar_star, 1.0, 1e-13);
    EXPECT_THROW(boltzmann_check(r, 1), DomainError);
}

TEST(Decomposition, NonUniformCellReportsPositiveGap) {
    const auto law = MixedLaw::make({}, {Segment::linear(1, 3, 0.1, 0.9)});
    const auto r = decomposition_report(law, implied_lengths(law), unit_cells(1, 3));
    EXPECT_GT(r.KL_rho_rhobar, 0.0);
    EXPECT_GT(boltzmann_check(r, 2).gap, 0.0);
}

TEST(Decomposition, PartialCoverage) {
    const auto law = uniform(1, 3);
    const Quantization half{{}, {{1, 2}}};
    EXPECT_THROW(decomposition_report(law, implied_lengths(law), half), CoverageError);
    const auto r = decomposition_report(law, implied_lengths(law), half, {.require_full_coverage = false});
    EXPECT_FALSE(r.full_coverage);
    EXPECT_NEAR(r.coverage, 0.5, 1e-15);
    EXPECT_TRUE(std::isnan(r.identity_b_residual()));
    EXPECT_NEAR(r.identity_a_residual(), 0.0, 1e-14);

    const auto lens = shifted(implied_lengths(law), 0.3);
    const auto s = decomposition_report(law, lens, {{}, {{1.25, 2.75}}}, {.require_full_coverage = false});
    EXPECT_NEAR(s.coverage, 0.75, 1e-15);
    EXPECT_NEAR(s.identity_a_residual(), 0.0, 1e-12);
    EXPECT_THROW(decomposition_report(law, implied_lengths(law), unit_cells(1, 3), {.display_base = 1}), DomainError);
}

TEST(DecompositionProperties, IdentitiesOnRandomInstances) {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng(instance_seed(77, i));
        const auto law = random_law(rng, {.allow_grid = true});
        const auto lens = random_feasible_lengths(law, rng);
        const auto q = random_full_partition(law, rng);
        const auto r = decomposition_report(law, lens, q);
        ASSERT_LE(std::abs(r.identity_a_residual()), 1e-8) << i;
        ASSERT_LE(std::abs(r.identity_b_residual()), 1e-8) << i;
        ASSERT_LE(r.kraft, 1.0 + 1e-9) << i;
        ASSERT_GE(r.KL_pi_q, -1e-10) << i;
        ASSERT_GE(r.KL_rho_rhobar, -1e-10) << i;
        ASSERT_GE(r.heisenberg_lhs, r.heisenberg_rhs - 1e-8) << i;
    }
}

TEST(DecompositionProperties, HeisenbergEqualityForCellwiseUniformLaw) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng(instance_seed(78, i));
        const auto law = random_law(rng, {.uniform_only = true});
        Quantization q;
        for (const auto& a : law.atoms()) q.encode_atoms.push_back(a.w);
        for (const auto& s : law.segments()) q.cells.push_back({s.a(), s.b()});
        const auto r = decomposition_report(law, implied_lengths(law), q);
        ASSERT_NEAR(r.heisenberg_lhs, r.heisenberg_rhs, 1e-8) << i;
    }
}

TEST(DecompositionProperties, RefinementShrinksWithinCellDivergence) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng(instance_seed(79, i));
        const auto law = random_law(rng, {.allow_grid = true});
        const auto lens = implied_lengths(law);
        const auto coarse = random_full_partition(law, rng);
        Quantization fine{coarse.encode_atoms, {}};
        for (const auto& c : coarse.cells) {
            const double mid = 0.5 * (c.a + c.b);
            fine.cells.push_back({c.a, mid});
            fine.cells.push_back({mid, c.b});
        }
        const auto rc = decomposition_report(law, lens, coarse);
        const auto rf = decomposition_report(law, lens, fine);
        ASSERT_LE(rf.KL_rho_rhobar, rc.KL_rho_rhobar + 1e-10) << i;
        ASSERT_GE(rf.H_pi, rc.H_pi - 1e-12) << i;
    }
}
