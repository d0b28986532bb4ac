#include <benchmark/benchmark.h>

#include <random>

#include "grext/bar.hpp"
#include "grext/iwahori.hpp"
#include "grext/minres.hpp"
#include "grext/specseq.hpp"

using namespace grext;

static FpMatrix random_matrix(std::uint32_t p, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, static_cast<Residue>(rng() % p));
    return m;
}

static void BM_Rank(benchmark::State& state) {
    auto m = random_matrix(3, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

static void BM_KernelBasis(benchmark::State& state) {
    auto m = random_matrix(5, static_cast<std::size_t>(state.range(0)), 11);
    for (std::size_t j = 0; j < m.cols(); j += 3) m.set(0, j, 0);
    for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m * m));
}
BENCHMARK(BM_KernelBasis)->Arg(64)->Arg(128);

// Ext^0..2 of the trivial module over F_3[Z/p^k] via the bar complex.
static void BM_BarExtCyclic(benchmark::State& state) {
    auto a = group_algebra(3, FiniteGroup::cyclic(static_cast<std::uint32_t>(state.range(0)))).algebra;
    auto k = trivial_module(a);
    for (auto _ : state) benchmark::DoNotOptimize(ext_via_bar(a, k, 3).dims());
}
BENCHMARK(BM_BarExtCyclic)->Arg(3)->Arg(9)->Arg(27)->Unit(benchmark::kMillisecond);

static void BM_MinresTruncated(benchmark::State& state) {
    auto g = truncated_polynomial(3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(minimal_resolution(g, 6, 40).betti(6));
}
BENCHMARK(BM_MinresTruncated)->Arg(3)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_KoszulComplex(benchmark::State& state) {
    std::vector<int> degrees(static_cast<std::size_t>(state.range(0)), 1);
    auto g = polynomial_model(3, degrees, 2);
    for (auto _ : state) benchmark::DoNotOptimize(graded_ext(minimal_resolution(g, 4, 8), trivial_module(g.algebra()), 3));
}
BENCHMARK(BM_KoszulComplex)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_SpectralPages(benchmark::State& state) {
    auto a = group_algebra(3, FiniteGroup::cyclic(9)).algebra;
    auto c = build_filtered_hom_complex(a, trivial_module(a), 3);
    for (auto _ : state) benchmark::DoNotOptimize(e_infinity(c).dims.size());
}
BENCHMARK(BM_SpectralPages)->Unit(benchmark::kMillisecond);

static void BM_Factorization(benchmark::State& state) {
    auto c = congruence_instance(3, static_cast<int>(state.range(0)), 1, 4);
    for (auto _ : state) benchmark::DoNotOptimize(factorization_check(c, 100, 3).checked);
}
BENCHMARK(BM_Factorization)->Arg(2)->Arg(3)->Arg(4);

static void BM_AchkGL3(benchmark::State& state) {
    auto c = congruence_instance(3, 3, 1, 3);
    for (auto _ : state) benchmark::DoNotOptimize(achk_certificate(c, {2, 1, 0}, 4).holds);
}
BENCHMARK(BM_AchkGL3)->Unit(benchmark::kMillisecond);

static void BM_DimuGL2(benchmark::State& state) {
    auto c = congruence_instance(3, 2, 1, 4);
    for (auto _ : state) benchmark::DoNotOptimize(dimu_certificate(c, {1, 0}, 2).verdict);
}
BENCHMARK(BM_DimuGL2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
