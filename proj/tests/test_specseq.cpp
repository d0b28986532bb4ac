#include "doctest.h"

#include "grext/bar.hpp"
#include "grext/minres.hpp"
#include "grext/specseq.hpp"

using namespace grext;

namespace {

std::vector<FilteredAlgebra> battery() {
    std::vector<GradedAlgebra> base{truncated_polynomial(3, 3), truncated_polynomial(2, 4), exterior_algebra(3, 2),
                                    truncated_polynomial(5, 5), polynomial_model(2, {1, 1}, 1)};
    std::vector<FilteredAlgebra> out;
    std::uint64_t seed = 11;
    for (const auto& g : base) {
        out.push_back(g.algebra());
        out.push_back(random_filtered(g.algebra(), seed++, 2));
    }
    return out;
}

}  // namespace

TEST_CASE("filtered hom complex") {
    auto fp = truncated_polynomial(3, 1).algebra();
    auto c = build_filtered_hom_complex(fp, trivial_module(fp), 2);
    CHECK(c.valid());
    CHECK(c.fil_dim(0, 1) == 0);
    CHECK(c.fil_dim(0, 0) == 1);

    auto z3 = group_algebra(3, FiniteGroup::cyclic(3)).algebra;
    auto k = trivial_module(z3);
    auto cz = build_filtered_hom_complex(z3, k, 2);
    CHECK(cz.valid());
    for (int n = 0; n <= 2; ++n) {
        auto [lo, hi] = cz.degree_range();
        for (int s = lo; s <= hi + 1; ++s) {
            // dim gr^s K^n from the filtration against the graded-side count.
            std::size_t gr_dim = cz.fil_dim(n, s) - cz.fil_dim(n, s + 1);
            CHECK(gr_dim == gr_hom_compare(z3, k, n, s).rhs);
        }
    }
    auto shifted = build_filtered_hom_complex(z3, shift(z3, k, 4), 2);
    for (int n = 0; n <= 2; ++n)
        for (int s = -6; s <= 2; ++s) CHECK(shifted.fil_dim(n, s + 4) == cz.fil_dim(n, s));
}

TEST_CASE("pages of simple complexes") {
    // Zero differential: every page is gr K.
    FilteredCochainComplex c;
    c.p = 3;
    c.degrees = {{0, 1}, {0, 0, 2}, {1}};
    c.differentials = {FpMatrix(3, 3, 2), FpMatrix(3, 1, 3)};
    auto e1 = page(c, 1);
    CHECK(e1.dim(0, 0) == 1);
    CHECK(e1.dim(1, -1) == 1);
    CHECK(e1.dim(0, 1) == 2);
    CHECK(e1.dim(2, -1) == 1);
    CHECK(e_infinity(c).dims == e1.dims);

    // One filtration step: E_1 is the cohomology, nothing moves after.
    FilteredCochainComplex t;
    t.p = 3;
    t.degrees = {{0}, {0, 0}, {0}};
    t.differentials = {FpMatrix::from_rows(3, {{1}, {0}}), FpMatrix::from_rows(3, {{0, 1}})};
    REQUIRE(t.valid());
    CHECK(page(t, 0).dims.at({0, 0}) == 1);
    CHECK(page(t, 1).total(0) == 0);
    CHECK(page(t, 1).total(1) == 0);
    CHECK(page(t, 2).dims == page(t, 1).dims);

    // A differential that jumps two filtration steps appears on E_2.
    FilteredCochainComplex j;
    j.p = 5;
    j.degrees = {{0}, {2}};
    j.differentials = {FpMatrix::from_rows(5, {{1}})};
    CHECK(page(j, 1).dim(0, 0) == 1);
    CHECK(page(j, 2).dim(0, 0) == 1);
    CHECK(page(j, 2).differentials.empty());  // target lies in the top degree
    CHECK(page(j, 3).dim(0, 0) == 0);
}

TEST_CASE("E_1 is the graded Ext") {
    for (int order : {3, 9}) {
        auto a = group_algebra(3, FiniteGroup::cyclic(order)).algebra;
        auto c = build_filtered_hom_complex(a, trivial_module(a), 3);
        auto e1 = page(c, 1);
        auto gr = truncated_polynomial(3, order);
        auto ext = graded_ext(minimal_resolution(gr, 3, 40), trivial_module(gr.algebra()), 2);
        for (int n = 0; n <= 2; ++n) {
            CHECK(e1.total(n) == ext.degrees[n].dim);
            for (const auto& [i, d] : ext.degrees[n].dims_by_degree) CHECK(e1.dim(i, n - i) == d);
        }
    }
}

TEST_CASE("page differentials and convergence") {
    for (const auto& a : battery()) {
        for (const auto& m : {trivial_module(a), quotient_module(a, 2)}) {
            auto c = build_filtered_hom_complex(a, m, 3);
            REQUIRE(c.valid());
            for (int r = 0; r <= 3; ++r) CHECK(page_identity_holds(page(c, r), page(c, r + 1)));
            const int s = stable_page(c);
            CHECK(page(c, s).dims == page(c, s + 1).dims);
            CHECK(e_infinity_bookkeeping(a, m, 3).pass());
        }
    }
    auto z3 = group_algebra(3, FiniteGroup::cyclic(3)).algebra;
    auto rep = e_infinity_bookkeeping(z3, trivial_module(z3), 3);
    CHECK(rep.e_infinity_totals == std::vector<std::size_t>{1, 1, 1});
    CHECK(rep.pass());
}

TEST_CASE("koszul band") {
    std::vector<GradedAlgebra> koszul{exterior_algebra(3, 2), truncated_polynomial(2, 2), polynomial_model(3, {1, 1}, 1)};
    for (const auto& g : koszul) {
        REQUIRE(is_koszul(minimal_resolution(g, 3, 10)).verdict == Verdict::Yes);
        const auto& a = g.algebra();
        for (const auto& m : {trivial_module(a), regular_module(a), direct_sum(a, trivial_module(a, 1), quotient_module(a, 2))}) {
            auto e1 = page(build_filtered_hom_complex(a, m, 3), 1);
            CHECK(koszul_band_violations(e1, m.nu(), m.mu()).empty());
        }
    }
    // F_3[x]/x^3 is not Koszul and leaves the band.
    auto cube = truncated_polynomial(3, 3).algebra();
    auto e1 = page(build_filtered_hom_complex(cube, trivial_module(cube), 3), 1);
    CHECK_FALSE(koszul_band_violations(e1, 0, 1).empty());
}

TEST_CASE("functoriality at E_1") {
    auto g9 = group_algebra(3, FiniteGroup::cyclic(9));
    auto sub = group_subalgebra(g9, {0, 3, 6});
    for (const auto& m : {trivial_module(g9.algebra), quotient_module(g9.algebra, 2)}) {
        auto ct = build_filtered_hom_complex(g9.algebra, m, 3);
        auto cs = build_filtered_hom_complex(sub.algebra, restrict_module(sub.algebra, g9.algebra, sub.inclusion, m), 3);
        for (int r = 0; r <= 2; ++r) CHECK(page_morphism(sub.inclusion, ct, cs, m.dim(), r).commutes);
    }
    auto id = identity_morphism(g9.algebra);
    auto c = build_filtered_hom_complex(g9.algebra, trivial_module(g9.algebra), 3);
    for (const auto& [ij, mat] : page_morphism(id, c, c, 1, 1).maps) CHECK(mat == FpMatrix::identity(3, mat.rows()));
}

TEST_CASE("filtration shift") {
    auto g9 = group_algebra(3, FiniteGroup::cyclic(9));
    auto k = trivial_module(g9.algebra);
    auto id = graded_shift_check(g9.algebra, g9.algebra, identity_morphism(g9.algebra), k, 1);
    CHECK(id.verdict == ShiftVerdict::HypothesisFailed);
    CHECK(id.graded_restriction_rank == 1);

    auto sub = group_subalgebra(g9, {0, 3, 6});
    auto rep = graded_shift_check(sub.algebra, g9.algebra, sub.inclusion, k, 1);
    CHECK(rep.verdict == ShiftVerdict::Verified);
    CHECK(rep.pass());
    CHECK(rep.source_ext_dim == 1);
    CHECK(rep.target_ext_dim == 1);

    auto triv = group_subalgebra(g9, {0});
    auto zero = graded_shift_check(triv.algebra, g9.algebra, triv.inclusion, k, 1);
    CHECK(zero.source_ext_dim == 0);
    CHECK(zero.pass());
}

TEST_CASE("vanishing certificate on a cyclic chain") {
    auto g27 = group_algebra(3, FiniteGroup::cyclic(27));
    std::vector<std::uint32_t> h3, h9;
    for (std::uint32_t x = 0; x < 27; x += 3) h3.push_back(x);
    for (std::uint32_t x = 0; x < 27; x += 9) h9.push_back(x);
    auto chain = subgroup_chain(g27, {h3, h9, {0}});
    auto k = trivial_module(g27.algebra);

    auto c1 = koz_certificate(chain, k, 1);
    CHECK(c1.m_star == 3);
    CHECK(c1.links == std::vector<bool>{true, true, true});
    CHECK(c1.shift_verified == std::vector<bool>{true, true, true});
    CHECK(c1.first_zero == std::optional<std::size_t>(1));
    CHECK(c1.verdict == KozVerdict::Vanishes);
    REQUIRE(c1.restriction_at_m_star);
    CHECK(c1.restriction_at_m_star->is_zero());
    CHECK(c1.regime == "eventually-zero");  // gr F_3[Z/27] = F_3[x]/x^27 is not Koszul
    CHECK_FALSE(c1.asserted);

    auto c2 = koz_certificate(chain, k, 2);
    CHECK(c2.verdict == KozVerdict::HypothesisFailed);
    CHECK(c2.failed_link == std::optional<std::size_t>(0));

    auto short_chain = subgroup_chain(g27, {h3});
    CHECK(koz_certificate(short_chain, k, 1).verdict == KozVerdict::ChainTooShort);
}

TEST_CASE("graded restriction control by brute force") {
    // Ext^2 over gr F_3[Z/27] -> gr F_3[3Z/27] through the bar complex.
    auto g27 = group_algebra(3, FiniteGroup::cyclic(27));
    std::vector<std::uint32_t> h3;
    for (std::uint32_t x = 0; x < 27; x += 3) h3.push_back(x);
    auto sub = group_subalgebra(g27, h3);
    auto gs = associated_graded(sub.algebra), gt = associated_graded(g27.algebra);
    auto gf = sub.inclusion.graded(gs.algebra(), gt.algebra());
    auto k = trivial_module(gt.algebra());
    auto bar2 = restriction_map(gs.algebra(), gt.algebra(), gf, k, 2);
    CHECK(rank(bar2.matrix) == 1);
    CHECK(graded_restriction_rank(sub.algebra, g27.algebra, sub.inclusion, trivial_module(g27.algebra), 2) == 1);
    auto bar1 = restriction_map(gs.algebra(), gt.algebra(), gf, k, 1);
    CHECK(bar1.matrix.is_zero());
}

TEST_CASE("uniform regime on a Koszul chain") {
    // Λ(e), deg e = 2, mapped to e_1 e_2 in Λ(e_1, e_2); then down to k.
    auto ext2 = exterior_algebra(3, 2).algebra();
    auto data = exterior_algebra(3, 1).algebra().data();
    data.weights = {0, 2};
    auto deep = FilteredAlgebra::make(data);
    auto k1 = truncated_polynomial(3, 1).algebra();
    FpMatrix inc(3, ext2.dim(), deep.dim());
    inc.set(0, 0, 1);
    for (std::size_t t = 0; t < ext2.dim(); ++t)
        if (ext2.weight(t) == 2) inc.set(t, 1, 1);
    AlgebraMorphism f(deep, ext2, inc);
    FpMatrix unit(3, 2, 1);
    unit.set(0, 0, 1);
    AlgebraMorphism g(k1, deep, unit);
    AlgebraChain chain{{ext2, deep, k1, k1}, {f, g, identity_morphism(k1)}};
    auto cert = koz_certificate(chain, trivial_module(ext2), 1);
    CHECK(cert.regime == "uniform");
    CHECK(cert.m_star == 3);
    CHECK(cert.links == std::vector<bool>{true, true, true});
    CHECK(cert.verdict == KozVerdict::Vanishes);
    CHECK(cert.asserted);
    CHECK(cert.first_zero == std::optional<std::size_t>(1));

    // Ext^0 restriction is the identity on k: the hypothesis fails at once.
    CHECK(koz_certificate(chain, trivial_module(ext2), 0).verdict == KozVerdict::HypothesisFailed);
}
