#include "doctest.h"

#include <algorithm>

#include "grext/algebra.hpp"
#include "grext/io.hpp"

using namespace grext;

namespace {

// F_3[x]/(x^3) presented by hand on 1, x, x^2.
AlgebraData cubic_data(Residue aug_x = 0) {
    AlgebraData d;
    d.p = 3;
    d.names = {"1", "x", "x2"};
    d.table.resize(9);
    auto set = [&](int i, int j, std::uint32_t k) { d.table[i * 3 + j] = {{k, 1}}; };
    set(0, 0, 0);
    set(0, 1, 1);
    set(1, 0, 1);
    set(0, 2, 2);
    set(2, 0, 2);
    set(1, 1, 2);
    d.aug = {1, aug_x, 0};
    d.weights = {0, 1, 2};
    return d;
}

std::int64_t binom(int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

bool same_constants(const FilteredAlgebra& a, const FilteredAlgebra& b) {
    if (a.dim() != b.dim() || a.weights() != b.weights() || a.augmentation() != b.augmentation()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (a.product(i, j) != b.product(i, j)) return false;
    return true;
}

}  // namespace

TEST_CASE("filtered algebra validation") {
    auto a = FilteredAlgebra::make(cubic_data());
    CHECK(a.dim() == 3);
    CHECK(a.is_graded());
    CHECK(a.fil_dim(1) == 2);

    try {
        FilteredAlgebra::make(cubic_data(1));
        FAIL("expected augmentation violation");
    } catch (const AxiomViolation& e) {
        CHECK(e.which() == Axiom::Augmentation);
        CHECK(std::string(e.what()).find("augmentation axiom") != std::string::npos);
    }

    auto bad_filt = cubic_data();
    bad_filt.weights = {0, 2, 3};  // x*x = x2 would need weight 4
    CHECK_THROWS_WITH_AS(FilteredAlgebra::make(bad_filt), doctest::Contains("filtration-multiplicativity"),
                         AxiomViolation);

    auto ok_filt = cubic_data();
    ok_filt.weights = {0, 1, 3};  // x*x = x2 lands deeper than needed: still a filtration
    auto b = FilteredAlgebra::make(ok_filt);
    CHECK_FALSE(b.is_graded());
    auto grb = associated_graded(b);
    CHECK(grb.algebra().product(1, 1).empty());

    auto bad_assoc = cubic_data();
    bad_assoc.table[1 * 3 + 2] = {{2, 1}};  // x * x2 = x2 breaks (x x) x = x (x x)
    CHECK_THROWS_WITH_AS(FilteredAlgebra::make(bad_assoc), doctest::Contains("associativity"), AxiomViolation);

    auto bad_unit = cubic_data();
    bad_unit.table[0 * 3 + 1] = {{2, 1}};
    CHECK_THROWS_WITH_AS(FilteredAlgebra::make(bad_unit), doctest::Contains("unit"), AxiomViolation);
}

TEST_CASE("group algebra of Z/3 and Z/9") {
    auto ga = group_algebra(3, FiniteGroup::cyclic(3));
    CHECK(ga.algebra.weights() == std::vector<int>{0, 1, 2});
    auto gr = associated_graded(ga.algebra);
    CHECK(same_constants(gr.algebra(), truncated_polynomial(3, 3).algebra()));

    auto g9 = group_algebra(3, FiniteGroup::cyclic(9));
    std::vector<int> w(9);
    for (int i = 0; i < 9; ++i) w[i] = i;
    CHECK(g9.algebra.weights() == w);
    CHECK(same_constants(associated_graded(g9.algebra).algebra(), truncated_polynomial(3, 9).algebra()));

    // Basis element i is (g - 1)^i expanded binomially in the group basis.
    PrimeField f(3);
    for (int i = 0; i < 9; ++i) {
        FpVector group_vec(9, 0);
        for (int k = 0; k <= i; ++k) group_vec[k] = f.from_int(binom(i, k) * ((i - k) % 2 ? -1 : 1));
        FpVector expect(9, 0);
        expect[i] = 1;
        CHECK(g9.element_coords.apply(group_vec) == expect);
    }

    auto triv = group_algebra(5, FiniteGroup::cyclic(1));
    CHECK(triv.algebra.dim() == 1);
    CHECK(triv.algebra.weight(0) == 0);

    CHECK_THROWS_AS(group_algebra(3, FiniteGroup::cyclic(6)), NotAPGroup);
}

TEST_CASE("non-adapted filtration is re-based") {
    // F_3[Z/3] on the group basis 1, g, g^2 with Fil^i = I^i given as spans.
    AlgebraData d;
    d.p = 3;
    d.names = {"1", "g", "g2"};
    d.table.resize(9);
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t j = 0; j < 3; ++j) d.table[i * 3 + j] = {{(i + j) % 3, 1}};
    d.aug = {1, 1, 1};
    d.filtration = std::vector<std::vector<FpVector>>{{{2, 1, 0}, {2, 0, 1}}, {{1, 1, 1}}};
    auto a = FilteredAlgebra::make(d);
    auto w = a.weights();
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<int>{0, 1, 2});
    CHECK(same_constants(associated_graded(a).algebra(), truncated_polynomial(3, 3).algebra()));

    // Fil^1 not killed by the augmentation.
    d.filtration = std::vector<std::vector<FpVector>>{{{0, 1, 0}}};
    CHECK_THROWS_AS(FilteredAlgebra::make(d), AxiomViolation);
}

TEST_CASE("associated graded is idempotent and preserves weights") {
    std::vector<GradedAlgebra> graded{truncated_polynomial(3, 4), exterior_algebra(3, 2),
                                      polynomial_model(3, {1, 1}, 3), word_algebra(3, {1, 1}, {{0, 0}, {1, 1}, {0, 1}}, 9),
                                      truncated_polynomial(2, 2)};
    for (const auto& g : graded) {
        CHECK(same_constants(associated_graded(g.algebra()).algebra(), g.algebra()));
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            // Base change alone keeps the associated graded.
            auto f0 = random_filtered(g.algebra(), seed, 0);
            CHECK(same_constants(associated_graded(f0).algebra(), g.algebra()));
            auto f = random_filtered(g.algebra(), seed, 4);
            auto gr = associated_graded(f);
            CHECK(gr.dim() == f.dim());
            auto w1 = f.weights(), w2 = gr.algebra().weights();
            std::sort(w1.begin(), w1.end());
            std::sort(w2.begin(), w2.end());
            CHECK(w1 == w2);
        }
    }
}

TEST_CASE("tensor products") {
    auto x2 = truncated_polynomial(5, 2);
    auto k = truncated_polynomial(5, 1);
    CHECK(same_constants(tensor_graded(x2, k).algebra(), x2.algebra()));
    auto t = tensor_graded(x2, truncated_polynomial(5, 2));
    CHECK(t.dim() == 4);
    auto w = t.algebra().weights();
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<int>{0, 1, 1, 2});

    // (F_3[x]/x^3)^{⊗2} ≅ gr F_3[Z/3 × Z/3] via x -> (a - 1), y -> (b - 1).
    auto cube = truncated_polynomial(3, 3);
    auto sq = tensor_graded(cube, cube);
    auto ga = group_algebra(3, FiniteGroup::product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)));
    auto gr = associated_graded(ga.algebra).algebra();
    FpVector ua(9, 0), ub(9, 0);
    PrimeField f(3);
    // Leading parts of a-1 (element 3) and b-1 (element 1) in the adapted basis.
    for (std::size_t k2 = 0; k2 < 9; ++k2) {
        auto ca = ga.element_coords.at(k2, 3), cb = ga.element_coords.at(k2, 1);
        if (gr.weight(k2) == 1) {
            ua[k2] = ca;
            ub[k2] = cb;
        }
    }
    auto power = [&](const FpVector& u, int e) {
        FpVector r(9, 0);
        r[0] = 1;
        for (int i = 0; i < e; ++i) r = gr.multiply(r, u);
        return r;
    };
    std::vector<FpVector> cols;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) cols.push_back(gr.multiply(power(ua, i), power(ub, j)));
    auto m = FpMatrix::from_columns(3, 9, cols);
    CHECK(rank(m) == 9);
    CHECK_NOTHROW(AlgebraMorphism(sq.algebra(), gr, m));
}

TEST_CASE("amplitude of modules") {
    auto a = FilteredAlgebra::make(cubic_data());
    CHECK(amplitude(trivial_module(a)) == 1);
    CHECK(amplitude(trivial_module(a, 3)) == 1);
    auto reg = regular_module(a);
    CHECK(amplitude(reg) == 3);
    CHECK(reg.mu() == 3);
    CHECK(reg.nu() == 0);
    CHECK(amplitude(shift(a, reg, -4)) == 3);
    CHECK(amplitude(quotient_module(a, 2)) == 2);
    CHECK(amplitude(direct_sum(a, trivial_module(a, 5), quotient_module(a, 2))) == 6);

    ModuleData bad = trivial_module(a).data();
    bad.table[1] = {{0, 1}};  // x acts as 1: breaks x*x acting as zero
    CHECK_THROWS_AS(FilteredModule::make(a, bad), AxiomViolation);
    ModuleData bad_w = quotient_module(a, 2).data();
    bad_w.weights = {0, 2};
    CHECK_NOTHROW(FilteredModule::make(a, bad_w));
    bad_w.weights = {1, 0};
    CHECK_THROWS_WITH_AS(FilteredModule::make(a, bad_w), doctest::Contains("filtration"), AxiomViolation);
}

TEST_CASE("subalgebras carry the induced filtration") {
    auto ga = group_algebra(3, FiniteGroup::cyclic(9));
    auto sub = group_subalgebra(ga, {0, 3, 6});
    CHECK(sub.algebra.weights() == std::vector<int>{0, 3, 6});
    auto id = identity_morphism(ga.algebra);
    CHECK(id.is_identity());
    auto r = restrict_module(sub.algebra, ga.algebra, sub.inclusion, trivial_module(ga.algebra));
    CHECK(r.dim() == 1);

    auto outer = group_subalgebra(ga, {0, 3, 6});
    auto inner = group_subalgebra(ga, {0});
    auto link = factor_inclusion(outer, inner);
    CHECK(link.source_dim() == 1);

    FpMatrix not_mult = FpMatrix::identity(3, 9);
    not_mult.set(1, 2, 1);
    CHECK_THROWS_AS(AlgebraMorphism(ga.algebra, ga.algebra, not_mult), MorphismInvalid);
}

TEST_CASE("json round trip is bit exact") {
    std::vector<FilteredAlgebra> algs{FilteredAlgebra::make(cubic_data()), group_algebra(3, FiniteGroup::cyclic(9)).algebra,
                                      random_filtered(exterior_algebra(5, 2).algebra(), 3, 3)};
    for (const auto& a : algs) {
        auto text = to_json(a).dump();
        auto back = algebra_from_json(Json::parse(text));
        CHECK(to_json(back).dump() == text);
        auto m = direct_sum(a, trivial_module(a, 1), quotient_module(a, 2));
        auto mt = to_json(m).dump();
        CHECK(to_json(module_from_json(a, Json::parse(mt))).dump() == mt);
    }
    CHECK_THROWS_WITH_AS(algebra_from_json(Json::parse(R"({"p":3,"basis":["1"],"aug":[1],"weights":[0]})")),
                         doctest::Contains("mul"), InvalidInput);
}
