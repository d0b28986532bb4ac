#include "grext/iwahori.hpp"

#include <algorithm>
#include <climits>

#include "grext/minres.hpp"

namespace grext {

namespace {

void require_cocharacter(const CongruenceInstance& c, const DominantCocharacter& s) {
    if (static_cast<int>(s.size()) != c.n) throw InvalidInput("cocharacter: expected " + std::to_string(c.n) + " exponents");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0) throw InvalidInput("cocharacter: exponents must be non-negative");
        if (i + 1 < s.size() && s[i] < s[i + 1]) throw InvalidInput("cocharacter: exponents must be non-increasing");
    }
}

int spread(const DominantCocharacter& s) { return s.empty() ? 0 : s.front() - s.back(); }

std::vector<Coordinate> select(const std::vector<Coordinate>& cs, int sign) {
    std::vector<Coordinate> out;
    for (const auto& c : cs) {
        int d = c.i < c.j ? 1 : c.i > c.j ? -1 : 0;
        if (d == sign) out.push_back(c);
    }
    return out;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

CongruenceInstance congruence_instance(std::uint32_t p, int n, int r, int precision) {
    CongruenceInstance c;
    c.p = p;
    c.n = n;
    c.r = r;
    c.precision = precision;
    c.group = congruence_group(p, n, r, precision);
    auto nn = static_cast<std::size_t>(n);
    c.lower = profile_group("lower", p, precision, nn, select(c.group.coords, -1), 0);
    c.torus = profile_group("torus", p, precision, nn, select(c.group.coords, 0), 0);
    c.upper = profile_group("upper", p, precision, nn, select(c.group.coords, 1), 0);
    return c;
}

std::vector<DominantCocharacter> dominant_cocharacters(int n, int bound, bool modulo_center) {
    if (n < 1 || bound < 0) throw InvalidInput("dominant_cocharacters: need n >= 1 and bound >= 0");
    std::vector<DominantCocharacter> out;
    DominantCocharacter a(static_cast<std::size_t>(n), 0);
    // Odometer over a_1 in [0, bound], a_{i+1} in [0, a_i].
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == a.size()) {
            if (!modulo_center || a.back() == 0) out.push_back(a);
            return;
        }
        int hi = i == 0 ? bound : a[i - 1];
        for (int v = 0; v <= hi; ++v) {
            a[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::string to_string(const DominantCocharacter& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

PMatrix conjugate(const ResidueRing& ring, const DominantCocharacter& s, const PMatrix& g) {
    PMatrix out(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            int d = s[i] - s[j];
            if (d >= 0) {
                out.at(i, j) = ring.mul(g.at(i, j), ring.p_power(d));
            } else {
                if (ring.val(g.at(i, j)) < -d) throw NotInSubgroup("conjugate: entry not divisible by p^" + std::to_string(-d));
                out.at(i, j) = ring.divide_p_power(g.at(i, j), -d);
            }
        }
    return out;
}

PMatrix conjugate_inverse(const ResidueRing& ring, const DominantCocharacter& s, const PMatrix& g) {
    DominantCocharacter neg(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) neg[i] = -s[i];
    return conjugate(ring, neg, g);
}

TriangularFactors iwahori_factorize(const PMatrix& g, const CongruenceInstance& c) {
    if (!c.group.contains(g)) throw NotInSubgroup("iwahori_factorize: element is not congruent to 1 mod p^" + std::to_string(c.r));
    auto f = triangular_factors(c.group.ring, g);
    if (!c.lower.contains(f.lower) || !c.torus.contains(f.diag) || !c.upper.contains(f.upper))
        throw Error("iwahori_factorize: factor outside its subgroup");
    return f;
}

FactorizationReport factorization_check(const CongruenceInstance& c, std::size_t samples, std::uint64_t seed,
                                        bool exhaustive) {
    FactorizationReport rep;
    const auto& ring = c.group.ring;
    auto check = [&](const PMatrix& g) {
        ++rep.checked;
        auto f = iwahori_factorize(g, c);
        if (multiply(ring, multiply(ring, f.lower, f.diag), f.upper) != g) rep.failures.push_back(to_string(g));
    };
    if (exhaustive) {
        const std::size_t cells = static_cast<std::size_t>(c.n) * c.n;
        const std::int64_t step = ring.p_power(c.r), values = ring.modulus() / step;
        double total = 1;
        for (std::size_t k = 0; k < cells; ++k) total *= static_cast<double>(values);
        if (total > 2e6) throw ResourceCapExceeded("factorization_check: too many elements to enumerate");
        std::vector<std::int64_t> digit(cells, 0);
        for (;;) {
            PMatrix g = PMatrix::identity(static_cast<std::size_t>(c.n));
            for (std::size_t k = 0; k < cells; ++k) g.a[k] = ring.add(g.a[k], digit[k] * step);
            check(g);
            std::size_t k = 0;
            while (k < cells && ++digit[k] == values) digit[k++] = 0;
            if (k == cells) break;
        }
        return rep;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) check(c.group.sample(rng));
    return rep;
}

ConjugationReport s_conjugation_check(const CongruenceInstance& c, const DominantCocharacter& s, std::size_t samples,
                                      std::uint64_t seed) {
    require_cocharacter(c, s);
    if (spread(s) > c.precision - c.r) throw PrecisionExhausted("s_conjugation_check: precision too small for " + to_string(s));
    ConjugationReport rep;
    rep.s = s;
    const auto& ring = c.group.ring;
    std::mt19937_64 rng(seed);
    auto run = [&](const PMatrix& u, const PMatrix& ubar) {
        ++rep.checked;
        if (!c.upper.contains(conjugate(ring, s, u))) {
            rep.upper_contained = false;
            rep.failures.push_back("s u s^-1 leaves N∩U for u = " + to_string(u));
        }
        // s(N∩Ū)s^-1 ⊇ N∩Ū  <=>  s^-1 ū s ∈ N∩Ū.
        if (!c.lower.contains(conjugate_inverse(ring, s, ubar))) {
            rep.lower_contains = false;
            rep.failures.push_back("s^-1 ū s leaves N∩Ū for ū = " + to_string(ubar));
        }
    };
    const auto one = PMatrix::identity(static_cast<std::size_t>(c.n));
    for (const auto& u : c.upper.basis) run(u, one);
    for (const auto& u : c.lower.basis) run(one, u);
    for (std::size_t i = 0; i < samples; ++i) {
        auto u = c.upper.sample(rng);
        run(u, c.lower.sample(rng));
    }
    return rep;
}

OmegaMinReport omega_min_formula_check(const PValuedGroupInstance& g, std::size_t samples, std::uint64_t seed) {
    OmegaMinReport rep;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        auto x = g.sample(rng);
        auto w = g.omega(x);
        auto f = triangular_factors(g.ring, x);
        bool usable = !w.identity && w.exact;
        int m = INT_MAX;
        for (const auto* y : {&f.lower, &f.diag, &f.upper}) {
            auto wy = g.omega(*y);
            if (wy.identity) continue;
            usable = usable && wy.exact;
            m = std::min(m, wy.value);
        }
        if (!usable) {
            ++rep.skipped;
            continue;
        }
        ++rep.tested;
        if (w.value != m)
            rep.failures.push_back("ω = " + std::to_string(w.value) + ", factor minimum " + std::to_string(m) + " at " +
                                   to_string(x));
    }
    return rep;
}

CongruenceInstance with_headroom(const CongruenceInstance& c, const DominantCocharacter& s, int m) {
    // Levels up to r + m + spread, one more step for p-th powers, one digit to read leading terms.
    int need = c.r + m + spread(s) + 2;
    return need <= c.precision ? c : congruence_instance(c.p, c.n, c.r, need);
}

SConjugate s_conjugate(const CongruenceInstance& c, const DominantCocharacter& s, int m) {
    require_cocharacter(c, s);
    if (m < 0) throw InvalidInput("s_conjugate: m must be non-negative");
    if (c.r + m + spread(s) > c.precision - 1)
        throw PrecisionExhausted("s_conjugate: levels reach p^" + std::to_string(c.r + m + spread(s)) + " at precision " +
                                 std::to_string(c.precision));
    std::vector<Coordinate> cs;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            int d = s[i] - s[j];
            // (s n s^-1)_ij = p^{a_i - a_j} n_ij; intersecting with K clamps negative levels at 0.
            cs.push_back({i, j, std::max(0, c.r + m + d), d});
        }
    SConjugate out;
    out.s = s;
    out.m = m;
    const auto nn = static_cast<std::size_t>(c.n);
    out.group = profile_group("s_conjugate", c.p, c.precision, nn, cs, 0);
    out.lower = profile_group("s_conjugate_lower", c.p, c.precision, nn, select(cs, -1), 0);
    out.torus = profile_group("s_conjugate_torus", c.p, c.precision, nn, select(cs, 0), 0);
    out.upper = profile_group("s_conjugate_upper", c.p, c.precision, nn, select(cs, 1), 0);
    std::mt19937_64 rng(static_cast<std::uint64_t>(m) * 1000003u + static_cast<std::uint64_t>(spread(s)));
    for (int k = 0; k < 16; ++k) {
        auto g = out.group.sample(rng);
        auto f = triangular_factors(out.group.ring, g);
        if (!out.lower.contains(f.lower) || !out.torus.contains(f.diag) || !out.upper.contains(f.upper))
            throw Error("s_conjugate: factorization leaves the displayed factors");
    }
    return out;
}

PValuedGroupInstance s_conjugate_group(const CongruenceInstance& c, const DominantCocharacter& s, int m) {
    return s_conjugate(c, s, m).group;
}

GriwaReport griwa_check(const CongruenceInstance& c, const DominantCocharacter& s) {
    auto sc = s_conjugate(with_headroom(c, s, 0), s, 0);
    GriwaReport rep;
    rep.s = s;
    auto total = graded_group(sc.group), lo = graded_group(sc.lower), t = graded_group(sc.torus), up = graded_group(sc.upper);
    rep.rank_total = total.rank();
    rep.rank_lower = lo.rank();
    rep.rank_torus = t.rank();
    rep.rank_upper = up.rank();
    rep.degrees_total = sorted(total.degrees);
    rep.degrees_lower = sorted(lo.degrees);
    rep.degrees_torus = sorted(t.degrees);
    rep.degrees_upper = sorted(up.degrees);
    std::vector<int> cat = rep.degrees_lower;
    cat.insert(cat.end(), rep.degrees_torus.begin(), rep.degrees_torus.end());
    cat.insert(cat.end(), rep.degrees_upper.begin(), rep.degrees_upper.end());
    rep.multiset_match = sorted(cat) == rep.degrees_total;
    return rep;
}

// ---- graded chains --------------------------------------------------------

namespace {

std::vector<int> scaled(const PValuedGroupInstance& g) {
    std::vector<int> out;
    for (std::size_t k = 0; k < g.rank(); ++k) out.push_back(g.scaled_degree(k));
    return out;
}

// One factor of A^(m), m = 0..levels: polynomial models on a common
// truncation, their resolutions, and the links A^(m+1) -> A^(m).
struct FactorChain {
    std::vector<PValuedGroupInstance> groups;
    std::vector<GradedAlgebra> models;
    std::vector<MinimalResolution> res;
    std::vector<AlgebraMorphism> links;      // links[m] : A^(m+1) -> A^(m)
    std::vector<AlgebraMorphism> composed;   // composed[m] : A^(m) -> A^(0)
    std::vector<FilteredModule> modules;     // the module restricted to A^(m)
    std::vector<FpMatrix> pi_cokernels;      // E ⊗ gr of level m+1 -> level m
};

FactorChain factor_chain(const std::vector<PValuedGroupInstance>& groups, int n, const LowerModuleBuilder& module) {
    FactorChain fc;
    fc.groups = groups;
    int t = 1;
    for (const auto& g : groups)
        for (int d : scaled(g)) t = std::max(t, d);
    int d_max = 0;
    for (const auto& g : groups) {
        fc.models.push_back(polynomial_model(g.p(), scaled(g), t));
        for (int d : scaled(g)) d_max += d;
    }
    for (const auto& a : fc.models) fc.res.push_back(minimal_resolution(a, n + 1, d_max));
    fc.composed.push_back(identity_morphism(fc.models[0].algebra()));
    fc.modules.push_back(module ? module(fc.models[0]) : trivial_module(fc.models[0].algebra()));
    for (std::size_t m = 0; m + 1 < groups.size(); ++m) {
        auto inc = graded_inclusion(groups[m + 1], groups[m]);
        fc.pi_cokernels.push_back(inc.quotient);
        fc.links.push_back(polynomial_morphism(fc.models[m + 1], fc.models[m], inc.quotient));
        fc.composed.push_back(compose(fc.composed[m], fc.links[m]));
        fc.modules.push_back(restrict_module(fc.models[m + 1].algebra(), fc.models[0].algebra(), fc.composed[m + 1],
                                             fc.modules[0]));
    }
    return fc;
}

// Ext^j restriction along links[m] (level m -> m+1), j = 0..n.
std::vector<FpMatrix> link_restrictions(const FactorChain& fc, std::size_t m, int n) {
    std::vector<FpMatrix> out;
    for (int j = 0; j <= n; ++j)
        out.push_back(ext_restriction_via_minres(fc.res[m + 1], fc.res[m], fc.links[m], fc.modules[m], j));
    return out;
}

// Ext^j restriction from level 0 to level m.
std::vector<FpMatrix> composed_restrictions(const FactorChain& fc, std::size_t m, int n) {
    std::vector<FpMatrix> out;
    for (int j = 0; j <= n; ++j)
        out.push_back(ext_restriction_via_minres(fc.res[m], fc.res[0], fc.composed[m], fc.modules[0], j));
    return out;
}

struct Assembled {
    std::vector<AchkSummand> summands;
    FpMatrix matrix;  // block diagonal over the summands
    std::size_t rank = 0;
};

// Künneth assembly of the restriction in total degree n from factor restrictions.
Assembled assemble(std::uint32_t p, const std::vector<FpMatrix>& lo, const std::vector<FpMatrix>& to,
                   const std::vector<FpMatrix>& up, int n) {
    Assembled out;
    std::vector<FpMatrix> blocks;
    std::size_t rows = 0, cols = 0;
    for (int a = n; a >= 0; --a)
        for (int b = n - a; b >= 0; --b) {
            int c = n - a - b;
            auto k = kronecker(kronecker(lo[a], to[b]), up[c]);
            AchkSummand s{a, b, c, k.cols(), rank(k)};
            out.rank += s.restriction_rank;
            rows += k.rows();
            cols += k.cols();
            if (s.dim || k.rows()) out.summands.push_back(s);
            blocks.push_back(std::move(k));
        }
    out.matrix = FpMatrix(p, rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out.matrix.set(r0 + i, c0 + j, b.at(i, j));
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

struct Chains {
    FactorChain lower, torus, upper;
};

Chains build_chains(const CongruenceInstance& c, const DominantCocharacter& s, int levels, int n,
                    const LowerModuleBuilder& module) {
    auto cc = with_headroom(c, s, levels);
    std::vector<PValuedGroupInstance> lo, to, up;
    for (int m = 0; m <= levels; ++m) {
        auto sc = s_conjugate(cc, s, m);
        lo.push_back(sc.lower);
        to.push_back(sc.torus);
        up.push_back(sc.upper);
    }
    return {factor_chain(lo, n, module), factor_chain(to, n, {}), factor_chain(up, n, {})};
}

// Ext over the product model against the convolution of the factors. The
// product of the three polynomial models is the polynomial model on the union
// of their variables, resolved by its Koszul complex; the module M ⊠ k ⊠ k is
// M pulled back along the projection to the Ū-variables. Small products are
// also resolved as tensor products with the generic algorithm.
struct KunnethCross {
    KunnethReport product;
    std::optional<bool> generic;
};

KunnethCross kunneth_cross_check(std::uint32_t p, const Chains& ch, int n, const LowerModuleBuilder& module) {
    constexpr std::size_t kGenericTensorCap = 400;
    const FactorChain* fs[] = {&ch.lower, &ch.torus, &ch.upper};
    std::vector<int> all;
    int t = 1, d_max = 0;
    for (const auto* f : fs)
        for (int d : scaled(f->groups[0])) {
            all.push_back(d);
            t = std::max(t, d);
            d_max += d;
        }
    auto lower_degrees = scaled(ch.lower.groups[0]);
    auto lower = polynomial_model(p, lower_degrees, t);
    auto union_model = polynomial_model(p, all, t);
    FpMatrix proj(p, lower_degrees.size(), all.size());
    for (std::size_t i = 0; i < lower_degrees.size(); ++i) proj.set(i, i, 1);
    auto to_lower = polynomial_morphism(union_model, lower, proj);
    auto m_lower = module ? module(lower) : trivial_module(lower.algebra());
    auto m_union = restrict_module(union_model.algebra(), lower.algebra(), to_lower, m_lower);

    auto e_union = graded_ext(minimal_resolution(union_model, n + 1, d_max), m_union, n);
    auto e_lower = graded_ext(minimal_resolution(lower, n + 1, d_max), m_lower, n);
    auto e_torus = graded_ext(ch.torus.res[0], trivial_module(ch.torus.models[0].algebra()), n);
    auto e_upper = graded_ext(ch.upper.res[0], trivial_module(ch.upper.models[0].algebra()), n);
    KunnethCross out;
    auto& rep = out.product;
    for (int j = 0; j <= n; ++j) {
        rep.lhs.push_back(e_union.degrees[j].dim);
        std::size_t sum = 0;
        for (int a = 0; a <= j; ++a)
            for (int b = 0; a + b <= j; ++b)
                sum += e_lower.degrees[a].dim * e_torus.degrees[b].dim * e_upper.degrees[j - a - b].dim;
        rep.rhs.push_back(sum);
        rep.reliable.push_back(e_union.degrees[j].reliable);
    }
    const auto& ml = ch.lower.models[0];
    const auto& mt = ch.torus.models[0];
    const auto& mu = ch.upper.models[0];
    if (ml.dim() * mt.dim() * mu.dim() <= kGenericTensorCap) {
        auto tu = tensor_graded(mt, mu);
        auto generic = kunneth_check(ml, tu, ch.lower.modules[0], trivial_module(tu.algebra()), n, d_max);
        out.generic = generic.pass() && generic.lhs == rep.lhs;
    }
    return out;
}

}  // namespace

AchkReport achk_certificate(const CongruenceInstance& c, const DominantCocharacter& s, int n,
                            const LowerModuleBuilder& module) {
    require_cocharacter(c, s);
    AchkReport rep;
    rep.s = s;
    rep.n = n;
    rep.dim_u = c.n * (c.n - 1) / 2;
    rep.applicable = n > rep.dim_u;
    if (!rep.applicable) {
        rep.failed_ingredient = "inapplicable: n <= dim U";
        return rep;
    }
    auto ch = build_chains(c, s, 1, n, module);
    rep.lower_rank = ch.lower.groups[0].rank();

    auto lower_ext = graded_ext(ch.lower.res[0], ch.lower.modules[0], n);
    rep.lower_vanishes = true;
    for (int j = 0; j <= n; ++j) {
        rep.lower_ext_dims.push_back(lower_ext.degrees[j].dim);
        if (j > static_cast<int>(rep.lower_rank) && lower_ext.degrees[j].dim != 0) rep.lower_vanishes = false;
    }

    rep.torus_pi_cokernel_zero = ch.torus.pi_cokernels[0].is_zero();
    rep.upper_pi_cokernel_zero = ch.upper.pi_cokernels[0].is_zero();
    auto lo = link_restrictions(ch.lower, 0, n), to = link_restrictions(ch.torus, 0, n),
         up = link_restrictions(ch.upper, 0, n);
    rep.torus_restrictions_zero = rep.upper_restrictions_zero = true;
    for (int j = 1; j <= n; ++j) {
        rep.torus_restrictions_zero = rep.torus_restrictions_zero && to[j].is_zero();
        rep.upper_restrictions_zero = rep.upper_restrictions_zero && up[j].is_zero();
    }

    auto kun = kunneth_cross_check(c.p, ch, n, module);
    rep.kunneth_lhs = kun.product.lhs;
    rep.kunneth_rhs = kun.product.rhs;
    rep.kunneth_generic = kun.generic;
    rep.kunneth_match = kun.product.pass() && kun.generic.value_or(true);

    auto as = assemble(c.p, lo, to, up, n);
    rep.summands = as.summands;
    rep.restriction_zero = as.rank == 0;

    const std::pair<bool, const char*> ingredients[] = {
        {rep.lower_vanishes, "lower-factor cohomological dimension"},
        {rep.torus_pi_cokernel_zero, "torus pi-cokernel"},
        {rep.upper_pi_cokernel_zero, "upper pi-cokernel"},
        {rep.torus_restrictions_zero, "torus Ext restriction"},
        {rep.upper_restrictions_zero, "upper Ext restriction"},
        {rep.kunneth_match, "kunneth decomposition"},
        {rep.restriction_zero, "assembled restriction"},
    };
    rep.holds = true;
    for (const auto& [ok, name] : ingredients)
        if (!ok) {
            rep.holds = false;
            rep.failed_ingredient = name;
            break;
        }
    return rep;
}

UnifReport unif_check(const CongruenceInstance& c, const std::vector<DominantCocharacter>& list, int weight_dim) {
    if (weight_dim < 1) throw InvalidInput("unif_check: weight dimension must be positive");
    int height = 0;
    for (const auto& s : list) {
        require_cocharacter(c, s);
        height = std::max(height, spread(s));
    }
    const int precision = std::max(c.precision, std::max(c.r, height) + 2);
    auto n_group = congruence_group(c.p, c.n, c.r, precision);
    std::vector<PValuedGroupInstance> subs;
    for (const auto& s : list) {
        // N ∩ s^-1 K s: (s g s^-1)_ij = p^{a_i - a_j} g_ij must be integral.
        auto cs = n_group.coords;
        for (auto& co : cs) co.level = std::max(c.r, s[co.j] - s[co.i]);
        subs.push_back(profile_group("N_cap_K_s", c.p, precision, n_group.n, cs, 0));
    }
    int t = 1;
    for (int d : scaled(n_group)) t = std::max(t, d);
    for (const auto& g : subs)
        for (int d : scaled(g)) t = std::max(t, d);
    auto big = polynomial_model(c.p, scaled(n_group), t);
    auto module = trivial_module(big.algebra());
    for (int k = 1; k < weight_dim; ++k) module = direct_sum(big.algebra(), module, trivial_module(big.algebra()));
    UnifReport rep;
    rep.s = list;
    rep.bound = amplitude(module);
    rep.uniform = true;
    for (const auto& sub : subs) {
        auto model = polynomial_model(c.p, scaled(sub), t);
        auto f = polynomial_morphism(model, big, graded_inclusion(sub, n_group).quotient);
        int amp = amplitude(restrict_module(model.algebra(), big.algebra(), f, module));
        rep.amplitudes.push_back(amp);
        rep.uniform = rep.uniform && amp == rep.amplitudes.front();
    }
    return rep;
}

KozCertificate dimu_certificate(const CongruenceInstance& c, const DominantCocharacter& s, int n,
                                const LowerModuleBuilder& module) {
    require_cocharacter(c, s);
    KozCertificate cert;
    cert.n = n;
    // The module over the product model is M ⊠ k ⊠ k, which has the weights of M.
    {
        auto probe = build_chains(c, s, 0, n, module);
        cert.amplitude = amplitude(probe.lower.modules[0]);
        auto k = is_koszul(probe.lower.res[0]);
        cert.koszul_reason = std::string(verdict_name(k.verdict)) + ": " + k.reason;
    }
    cert.m_star = cert.amplitude + n + 1;
    cert.regime = "uniform";
    auto ch = build_chains(c, s, cert.m_star, n, module);
    for (int m = 0; m < cert.m_star; ++m) {
        auto as = assemble(c.p, link_restrictions(ch.lower, m, n), link_restrictions(ch.torus, m, n),
                           link_restrictions(ch.upper, m, n), n);
        cert.link_graded_ranks.push_back(as.rank);
        cert.links.push_back(as.rank == 0);
        // The models are graded, so the filtration shift holds exactly when the graded restriction vanishes.
        cert.shift_verified.push_back(as.rank == 0);
        if (as.rank != 0 && !cert.failed_link) cert.failed_link = m;
    }
    if (cert.failed_link) {
        cert.verdict = KozVerdict::HypothesisFailed;
        return cert;
    }
    for (int m = 1; m <= cert.m_star; ++m) {
        auto as = assemble(c.p, composed_restrictions(ch.lower, m, n), composed_restrictions(ch.torus, m, n),
                           composed_restrictions(ch.upper, m, n), n);
        cert.composed_ranks.push_back(as.rank);
        if (!cert.first_zero && as.rank == 0) cert.first_zero = m;
        if (m == cert.m_star) cert.restriction_at_m_star = as.matrix;
    }
    cert.verdict = cert.restriction_at_m_star->is_zero() ? KozVerdict::Vanishes : KozVerdict::NonVanishing;
    cert.asserted = cert.verdict == KozVerdict::Vanishes && cert.regime == "uniform";
    return cert;
}

}  // namespace grext
