#include "doctest.h"

#include <random>
#include <set>

#include "grext/linalg.hpp"

using namespace grext;

namespace {

FpMatrix random_matrix(std::mt19937_64& rng, std::uint32_t p, std::size_t r, std::size_t c, int zero_bias = 0) {
    FpMatrix m(p, r, c);
    std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
    std::uniform_int_distribution<int> z(0, 3);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (z(rng) >= zero_bias) m.set(i, j, d(rng));
    return m;
}

// Rank by counting the image: |{m x}| = p^rank.
std::size_t brute_rank(const FpMatrix& m) {
    std::set<FpVector> image;
    std::size_t total = 1;
    for (std::size_t i = 0; i < m.cols(); ++i) total *= m.p();
    FpVector x(m.cols(), 0);
    for (std::size_t n = 0; n < total; ++n) {
        std::size_t t = n;
        for (auto& xi : x) { xi = t % m.p(); t /= m.p(); }
        image.insert(m.apply(x));
    }
    std::size_t r = 0;
    for (std::size_t s = 1; s < image.size(); s *= m.p()) ++r;
    return r;
}

}  // namespace

TEST_CASE("rank profiles of small matrices") {
    auto id = FpMatrix::identity(5, 3);
    auto rp = rank_profile(id);
    CHECK(rp.rank == 3);
    CHECK(rp.pivot_columns == std::vector<std::size_t>{0, 1, 2});

    FpMatrix zero(3, 2, 4);
    CHECK(rank_profile(zero).rank == 0);
    CHECK(kernel_basis(zero).size() == 4);

    auto m = FpMatrix::from_rows(3, {{1, 2}, {2, 1}});
    CHECK(rank(m) == 1);
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0] == FpVector{1, 1});
}

TEST_CASE("solve reports consistency") {
    auto m = FpMatrix::from_rows(3, {{1, 2}, {2, 1}});
    auto x = solve(m, FpVector{1, 2});
    REQUIRE(x);
    CHECK(m.apply(*x) == FpVector{1, 2});
    CHECK_FALSE(solve(m, FpVector{1, 0}));
    CHECK_THROWS_AS(solve(m, FpVector{1, 0, 0}), DimensionMismatch);
}

TEST_CASE("constructor rejects non-prime moduli") {
    CHECK_THROWS_AS(FpMatrix(4, 1, 1), InvalidInput);
    CHECK_THROWS_AS(PrimeField(1), InvalidInput);
}

TEST_CASE("rank agrees with image counting") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::uint32_t p = trial % 2 ? 2 : 3;
        auto m = random_matrix(rng, p, 1 + trial % 4, 1 + (trial / 3) % 5, trial % 3);
        CHECK(rank(m) == brute_rank(m));
    }
}

TEST_CASE("rank, kernel and solve properties") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::uint32_t p = std::vector<std::uint32_t>{2, 3, 5, 7, 2147483647u}[trial % 5];
        std::size_t r = 1 + trial % 7, c = 1 + (trial * 3) % 8;
        auto m = random_matrix(rng, p, r, c, trial % 4);
        auto rk = rank(m);
        CHECK(rk == rank(m.transpose()));
        auto ker = kernel_basis(m);
        CHECK(ker.size() == c - rk);
        for (auto& v : ker) CHECK(m.apply(v) == FpVector(r, 0));
        CHECK(span_rank(p, c, ker) == ker.size());

        auto rhs = random_matrix(rng, p, r, 1);
        auto sol = solve(m, rhs.column(0));
        CHECK(sol.has_value() == (rank(hstack(m, rhs)) == rk));
        if (sol) CHECK(m.apply(*sol) == rhs.column(0));
    }
}

TEST_CASE("matrix product is associative") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto a = random_matrix(rng, 7, 3, 4), b = random_matrix(rng, 7, 4, 2), c = random_matrix(rng, 7, 2, 5);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).transpose() == b.transpose() * a.transpose());
    }
}

TEST_CASE("subspace builder tracks coordinates") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        SubspaceBuilder sb(5, 6);
        std::vector<FpVector> inserted;
        for (int k = 0; k < 8; ++k) {
            auto v = random_matrix(rng, 5, 6, 1, k % 4).column(0);
            if (sb.insert(v)) inserted.push_back(v);
        }
        CHECK(sb.dim() == inserted.size());
        CHECK(span_rank(5, 6, inserted) == inserted.size());
        // Random combination recovers its coefficients.
        FpVector coeffs(inserted.size());
        FpVector combo(6, 0);
        PrimeField f(5);
        for (std::size_t i = 0; i < inserted.size(); ++i) {
            coeffs[i] = rng() % 5;
            for (std::size_t j = 0; j < 6; ++j) combo[j] = f.add(combo[j], f.mul(coeffs[i], inserted[i][j]));
        }
        auto c = sb.coordinates(combo);
        REQUIRE(c);
        CHECK(*c == coeffs);
    }
}

TEST_CASE("subquotient coordinates ignore the denominator") {
    // Z = span(e0, e1, e2), B = span(e0 + e1)
    std::vector<FpVector> z{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
    std::vector<FpVector> b{{1, 1, 0, 0}};
    Subquotient q(3, 4, z, b);
    CHECK(q.dim() == 2);
    auto c1 = q.coordinates(FpVector{1, 0, 0, 0});
    auto c2 = q.coordinates(FpVector{0, 2, 0, 0});  // 2 e1 = -e1, congruent to e0 mod B
    CHECK(c1 == c2);
    CHECK(q.coordinates(FpVector{1, 1, 0, 0}) == FpVector{0, 0});
    CHECK_FALSE(q.in_numerator(FpVector{0, 0, 0, 1}));
    CHECK_THROWS_AS(q.coordinates(FpVector{0, 0, 0, 1}), Error);
}
