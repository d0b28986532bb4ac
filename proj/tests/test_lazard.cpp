#include "doctest.h"

#include "grext/lazard.hpp"
#include "grext/minres.hpp"

using namespace grext;

TEST_CASE("residue ring arithmetic") {
    ResidueRing z(3, 4);
    CHECK(z.modulus() == 81);
    CHECK(z.val(0) == 4);
    CHECK(z.val(27) == 3);
    CHECK(z.val(-9) == 2);
    CHECK(z.mul(z.inv(5), 5) == 1);
    CHECK_THROWS_AS(z.inv(6), InvalidInput);
    CHECK(z.p_power(4) == 0);
    CHECK(z.divide_p_power(54, 3) == 2);
    CHECK_THROWS_AS(ResidueRing(4, 2), InvalidInput);

    auto g = PMatrix::from_rows(z, {{4, 3}, {3, 1}});
    auto gi = inverse(z, g);
    CHECK(multiply(z, g, gi) == PMatrix::identity(2));
    CHECK(power(z, g, 5) == multiply(z, power(z, g, 2), power(z, g, 3)));
    auto f = triangular_factors(z, g);
    CHECK(multiply(z, multiply(z, f.lower, f.diag), f.upper) == g);
    CHECK_THROWS_AS(inverse(z, PMatrix::from_rows(z, {{3, 0}, {0, 1}})), NotInSubgroup);
}

TEST_CASE("valuation of elements and precision") {
    auto a = additive_group(3, 1, 4);
    auto x = PMatrix::identity(2);
    CHECK(a.omega(x).identity);
    x.at(0, 1) = 9;
    CHECK(a.omega(x).value == 3);
    CHECK(a.omega(x).exact);
    auto k1 = congruence_group(3, 2, 1, 4);
    auto g = PMatrix::from_rows(k1.ring, {{1 + 27, 0}, {0, 1}});
    CHECK(k1.omega(g).value == 3);
    CHECK(k1.contains(g));
    CHECK_FALSE(k1.contains(PMatrix::from_rows(k1.ring, {{2, 0}, {0, 1}})));
    CHECK_THROWS_AS(additive_group(2, 1, 4), InvalidInput);
}

TEST_CASE("valuation axioms on samples") {
    for (const auto& g : {additive_group(3, 1, 4), additive_group(5, 2, 4), congruence_group(3, 2, 1, 4),
                          congruence_group(3, 3, 1, 5), heisenberg_group(3, 1, 5), congruence_group(5, 2, 1, 3)}) {
        auto rep = pvaluation_check(g, 150, 7);
        CAPTURE(g.family);
        CHECK(rep.pass());
        CHECK(rep.violations.empty());
        CHECK(rep.tested_commutator > 0);
        CHECK(rep.tested_power > 0);
        CHECK(rep.tested_min + rep.tested_commutator + rep.tested_power > rep.skipped);
    }
    // The entry valuation on K_2 is not saturated: ω = 2 elements are not p-th powers.
    auto k2 = congruence_group(3, 2, 2, 5);
    CHECK_FALSE(k2.saturated);
    // The chart valuation shifts it down by r - 1 and restores saturation.
    auto k2c = congruence_group(3, 2, 2, 5, OmegaKind::Chart);
    CHECK(k2c.saturated);
    CHECK(pvaluation_check(k2c, 150, 3).pass());
    CHECK(pvaluation_check(k2c, 150, 3).tested_saturation > 0);
    auto cmp = chart_comparison(k2, k2c, 100, 5);
    CHECK(cmp.compared > 50);
    CHECK(cmp.discrepancies == 0);
    CHECK(cmp.constant == -1);
}

TEST_CASE("graded group modules") {
    auto z = graded_group(additive_group(3, 1, 4));
    CHECK(z.rank() == 1);
    CHECK(z.degrees == std::vector<int>{1});
    CHECK(graded_group(additive_group(3, 2, 4)).rank() == 2);
    auto k1 = graded_group(congruence_group(3, 2, 1, 4));
    CHECK(k1.rank() == 4);
    CHECK(k1.degrees == std::vector<int>(4, 1));
    CHECK(k1.bracket_known);
    // [1 + pE12, 1 + pE21] is nonzero in gr_2: the bracket only disappears after perturbation.
    CHECK_FALSE(k1.bracket_vanishes());
    CHECK(k1.abelian());
    CHECK(k1.scaled_degrees == std::vector<int>(4, 3));
    auto h = graded_group(heisenberg_group(3, 1, 5));
    CHECK_FALSE(h.bracket_vanishes());

    auto bad = additive_group(3, 2, 4);
    bad.basis[1] = bad.basis[0];
    CHECK_THROWS_AS(graded_group(bad), InvalidInput);

    auto g = additive_group(3, 1, 4);
    CHECK_THROWS_AS(set_perturbation(g, 1, 2), InvalidInput);  // ω_C would reach 1/2
    set_perturbation(g, 1, 3);
    CHECK(g.scaled_degree(0) == 2);
}

TEST_CASE("p^m-power subgroups") {
    auto z = additive_group(3, 1, 5);
    auto z1 = pm_power_subgroup(z, 1);
    CHECK(z1.degree(0) == 2);
    CHECK_FALSE(z1.saturated);
    for (const auto& g : {z, congruence_group(3, 2, 1, 6), heisenberg_group(3, 1, 6)}) {
        auto twice = pm_power_subgroup(pm_power_subgroup(g, 1), 2);
        auto once = pm_power_subgroup(g, 3);
        CHECK(twice.same_group(once));
        for (std::size_t k = 0; k < g.rank(); ++k) CHECK(once.degree(k) == g.degree(k) + 3);
        CHECK(graded_group(once).rank() == g.rank());
    }
    CHECK_THROWS_AS(pm_power_subgroup(z, 5), PrecisionExhausted);
    CHECK_THROWS_AS(pm_power_subgroup(congruence_group(3, 2, 2, 5), 1), InvalidInput);
}

TEST_CASE("pi-cokernel of H^p in H is zero") {
    for (int d = 1; d <= 4; ++d) {
        auto h = additive_group(3, d, 4);
        auto m = pi_cokernel_restriction(h);
        CHECK(m.rows() == static_cast<std::size_t>(d));
        CHECK(m.is_zero());
        // Before the π-quotient the map is injective.
        auto inc = graded_inclusion(pm_power_subgroup(h, 1), h);
        CHECK(rank(inc.full) == static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) CHECK(inc.pi_power[i][i] == 1);
    }
    auto k = congruence_group(3, 2, 1, 4);
    CHECK(pi_cokernel_restriction(k).is_zero());
    CHECK(rank(graded_inclusion(pm_power_subgroup(k, 1), k).full) == 4);
    // The identity inclusion is the identity on E ⊗ gr H.
    CHECK(graded_inclusion(k, k).quotient == FpMatrix::identity(3, 4));
}

TEST_CASE("graded Ext restriction along H^p in H vanishes") {
    for (int d = 1; d <= 3; ++d) {
        auto h = additive_group(3, d, 4);
        auto maps = graded_ext_restrictions(pm_power_subgroup(h, 1), h, 3);
        REQUIRE(maps.size() == 3);
        for (int n = 1; n <= 3; ++n) {
            CHECK(maps[n - 1].rows() == (n <= d ? binomial(d, n) : 0u));
            CHECK(maps[n - 1].is_zero());
        }
    }
    // Control: the identity is not zero.
    auto h = additive_group(3, 2, 4);
    auto id = graded_ext_restrictions(h, h, 2);
    CHECK(rank(id[0]) == 2);
    CHECK(rank(id[1]) == 1);
}
