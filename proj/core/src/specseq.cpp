#include "grext/specseq.hpp"

#include <algorithm>
#include <climits>

#include "grext/bar.hpp"
#include "grext/errors.hpp"
#include "grext/minres.hpp"

namespace grext {

std::size_t FilteredCochainComplex::fil_dim(int n, int s) const {
    const auto& d = degrees[static_cast<std::size_t>(n)];
    return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [s](int x) { return x >= s; }));
}

std::pair<int, int> FilteredCochainComplex::degree_range() const {
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& d : degrees)
        for (int x : d) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    if (lo > hi) return {0, 0};
    return {lo, hi};
}

bool FilteredCochainComplex::valid() const {
    for (int n = 0; n < n_max(); ++n) {
        const auto& d = differentials[static_cast<std::size_t>(n)];
        if (d.rows() != dim(n + 1) || d.cols() != dim(n)) return false;
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c)
                if (d.at(r, c) && degrees[n + 1][r] < degrees[n][c]) return false;
        if (n + 1 < n_max() && !(differentials[n + 1] * d).is_zero()) return false;
    }
    return true;
}

FilteredCochainComplex build_filtered_hom_complex(const FilteredAlgebra& a, const FilteredModule& m, int n_max) {
    HomComplex h(a, m, n_max);
    FilteredCochainComplex c;
    c.p = a.p();
    for (int n = 0; n <= n_max; ++n) {
        std::vector<int> deg(h.dim(n));
        for (std::size_t i = 0; i < deg.size(); ++i) deg[i] = h.degree(n, i);
        c.degrees.push_back(std::move(deg));
    }
    for (int n = 0; n < n_max; ++n) c.differentials.push_back(h.coboundary(n));
    return c;
}

std::size_t SpectralPage::dim(int i, int j) const {
    auto it = dims.find({i, j});
    return it == dims.end() ? 0 : it->second;
}

std::size_t SpectralPage::total(int n) const {
    std::size_t s = 0;
    for (const auto& [ij, d] : dims)
        if (ij.first + ij.second == n) s += d;
    return s;
}

namespace {

FpVector unit_vector(std::size_t len, std::size_t k) {
    FpVector v(len, 0);
    v[k] = 1;
    return v;
}

FpVector scatter(const FpVector& v, const std::vector<std::size_t>& idx, std::size_t length) {
    FpVector out(length, 0);
    for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = v[k];
    return out;
}

// Z_r^i in K^n; r < 0 gives Fil^i K^n.
std::vector<FpVector> z_space(const FilteredCochainComplex& c, int n, int i, int r) {
    const std::size_t len = c.dim(n);
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < len; ++k)
        if (c.degrees[n][k] >= i) cols.push_back(k);
    std::vector<FpVector> out;
    if (r < 0) {
        for (auto k : cols) out.push_back(unit_vector(len, k));
        return out;
    }
    if (n >= c.n_max()) throw TruncationExceeded("Z_r in the top degree needs the next differential");
    const FpMatrix& d = c.differentials[static_cast<std::size_t>(n)];
    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < c.dim(n + 1); ++k)
        if (r == INT_MAX || c.degrees[n + 1][k] < i + r) rows.push_back(k);
    for (const auto& v : kernel_basis(d.select_rows(rows).select_columns(cols))) out.push_back(scatter(v, cols, len));
    return out;
}

std::vector<FpVector> apply_all(const FpMatrix& d, const std::vector<FpVector>& vs) {
    std::vector<FpVector> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(d.apply(v));
    return out;
}

std::shared_ptr<const Subquotient> e_term(const FilteredCochainComplex& c, int n, int i, int r) {
    auto z = z_space(c, n, i, r);
    auto b = z_space(c, n, i + 1, r - 1);
    if (n > 0) {
        auto lower = z_space(c, n - 1, i - r + 1, r - 1);
        auto img = apply_all(c.differentials[static_cast<std::size_t>(n - 1)], lower);
        b.insert(b.end(), img.begin(), img.end());
    }
    return std::make_shared<Subquotient>(c.p, c.dim(n), z, b);
}

std::pair<int, int> range_of(const FilteredCochainComplex& c, int n) {
    const auto& d = c.degrees[static_cast<std::size_t>(n)];
    if (d.empty()) return {0, -1};
    auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    return {*lo, *hi};
}

FpMatrix map_into(const Subquotient* target, const std::vector<FpVector>& images, std::uint32_t p) {
    const std::size_t rows = target ? target->dim() : 0;
    FpMatrix out(p, rows, images.size());
    if (!target) return out;
    for (std::size_t k = 0; k < images.size(); ++k) {
        auto coords = target->coordinates(images[k]);
        for (std::size_t r = 0; r < rows; ++r) out.set(r, k, coords[r]);
    }
    return out;
}

const Subquotient* find_term(const SpectralPage& pg, Bidegree ij) {
    auto it = pg.terms.find(ij);
    return it == pg.terms.end() ? nullptr : it->second.get();
}

}  // namespace

SpectralPage page(const FilteredCochainComplex& c, int r) {
    if (r < 0) throw InvalidInput("page index must be non-negative");
    SpectralPage pg;
    pg.r = r;
    for (int n = 0; n < c.n_max(); ++n) {
        auto [lo, hi] = range_of(c, n);
        for (int i = lo; i <= hi; ++i) {
            auto q = e_term(c, n, i, r);
            if (q->dim() == 0) continue;
            pg.dims[{i, n - i}] = q->dim();
            pg.terms[{i, n - i}] = std::move(q);
        }
    }
    for (const auto& [ij, q] : pg.terms) {
        const int n = ij.first + ij.second;
        if (n + 1 >= c.n_max()) continue;
        Bidegree tgt{ij.first + r, ij.second - r + 1};
        auto images = apply_all(c.differentials[static_cast<std::size_t>(n)], q->representatives());
        pg.differentials[ij] = map_into(find_term(pg, tgt), images, c.p);
    }
    return pg;
}

int stable_page(const FilteredCochainComplex& c) {
    auto [lo, hi] = c.degree_range();
    return hi - lo + 2;
}

SpectralPage e_infinity(const FilteredCochainComplex& c) { return page(c, stable_page(c)); }

bool page_identity_holds(const SpectralPage& er, const SpectralPage& next) {
    const int r = er.r;
    // Bidegrees whose outgoing differential is known; the top degree has none.
    for (const auto& [ij, out] : er.differentials) {
        std::size_t incoming = 0;
        Bidegree src{ij.first - r, ij.second + r - 1};
        if (auto it = er.differentials.find(src); it != er.differentials.end()) incoming = rank(it->second);
        std::size_t kernel = er.dim(ij.first, ij.second) - rank(out);
        if (next.dim(ij.first, ij.second) != kernel - incoming) return false;
    }
    return true;
}

std::size_t cohomology_fil_dim(const FilteredCochainComplex& c, int n, int s) {
    auto z = z_space(c, n, s, INT_MAX);
    std::vector<FpVector> b;
    if (n > 0) {
        const auto& d = c.differentials[static_cast<std::size_t>(n - 1)];
        for (std::size_t k = 0; k < d.cols(); ++k) b.push_back(d.column(k));
    }
    const std::size_t bdim = span_rank(c.p, c.dim(n), b);
    b.insert(b.end(), z.begin(), z.end());
    return span_rank(c.p, c.dim(n), b) - bdim;
}

BookkeepingReport e_infinity_bookkeeping(const FilteredAlgebra& a, const FilteredModule& m, int n_max) {
    auto c = build_filtered_hom_complex(a, m, n_max);
    auto einf = e_infinity(c);
    BookkeepingReport rep;
    rep.ext_dims = ext_via_bar(a, m, n_max).dims();
    for (int n = 0; n < n_max; ++n) {
        rep.e_infinity_totals.push_back(einf.total(n));
        auto [lo, hi] = range_of(c, n);
        for (int i = lo; i <= hi; ++i) {
            std::size_t piece = cohomology_fil_dim(c, n, i) - cohomology_fil_dim(c, n, i + 1);
            if (piece != einf.dim(i, n - i)) rep.graded_pieces_match = false;
        }
    }
    return rep;
}

std::vector<Bidegree> koszul_band_violations(const SpectralPage& e1, int nu, int mu) {
    std::vector<Bidegree> out;
    for (const auto& [ij, d] : e1.dims) {
        const int v = 2 * ij.first + ij.second;
        if (d && (v < nu || v >= mu)) out.push_back(ij);
    }
    return out;
}

PageMorphism page_morphism(const AlgebraMorphism& f, const FilteredCochainComplex& target_complex,
                           const FilteredCochainComplex& source_complex, std::size_t module_dim, int r) {
    if (target_complex.n_max() != source_complex.n_max())
        throw DimensionMismatch("page_morphism: complexes of different length");
    auto pt = page(target_complex, r), ps = page(source_complex, r);
    const std::uint32_t p = target_complex.p;
    PageMorphism out;
    for (const auto& [ij, q] : pt.terms) {
        const int n = ij.first + ij.second;
        std::vector<FpVector> pulled;
        for (const auto& v : q->representatives()) pulled.push_back(pullback_cochain(f, v, n, module_dim));
        out.maps[ij] = map_into(find_term(ps, ij), pulled, p);
    }
    auto map_or_zero = [&](Bidegree ij, std::size_t cols) {
        if (auto it = out.maps.find(ij); it != out.maps.end()) return it->second;
        return FpMatrix(p, ps.dim(ij.first, ij.second), cols);
    };
    for (const auto& [ij, d] : pt.differentials) {
        Bidegree tgt{ij.first + r, ij.second - r + 1};
        FpMatrix top = map_or_zero(tgt, d.rows()) * d;
        FpMatrix left = out.maps.at(ij);
        FpMatrix ds = ps.differentials.count(ij) ? ps.differentials.at(ij) : FpMatrix(p, ps.dim(tgt.first, tgt.second), left.rows());
        if (!(top == ds * left)) out.commutes = false;
    }
    return out;
}

const char* shift_verdict_name(ShiftVerdict v) {
    return v == ShiftVerdict::Verified ? "verified" : "hypothesis-failed";
}

std::size_t graded_restriction_rank(const FilteredAlgebra& source, const FilteredAlgebra& target,
                                    const AlgebraMorphism& f, const FilteredModule& m, int n) {
    auto gs = associated_graded(source), gt = associated_graded(target);
    auto gf = f.graded(gs.algebra(), gt.algebra());
    auto gm = associated_graded(target, m);
    if (gs.connected() && gt.connected()) {
        constexpr int unbounded = INT_MAX / 2;
        auto rs = minimal_resolution(gs, n + 1, unbounded);
        auto rt = minimal_resolution(gt, n + 1, unbounded);
        return rank(ext_restriction_via_minres(rs, rt, gf, gm, n));
    }
    return rank(restriction_map(gs.algebra(), gt.algebra(), gf, gm, n).matrix);
}

ShiftReport graded_shift_check(const FilteredAlgebra& source, const FilteredAlgebra& target,
                               const AlgebraMorphism& f, const FilteredModule& m, int n) {
    ShiftReport rep;
    rep.graded_restriction_rank = graded_restriction_rank(source, target, f, m, n);
    if (rep.graded_restriction_rank != 0) {
        rep.verdict = ShiftVerdict::HypothesisFailed;
        return rep;
    }
    auto ms = restrict_module(source, target, f, m);
    auto ct = build_filtered_hom_complex(target, m, n + 1);
    auto cs = build_filtered_hom_complex(source, ms, n + 1);
    std::vector<FpVector> bs;
    if (n > 0) {
        const auto& d = cs.differentials[static_cast<std::size_t>(n - 1)];
        for (std::size_t k = 0; k < d.cols(); ++k) bs.push_back(d.column(k));
    }
    rep.target_ext_dim = cohomology_fil_dim(ct, n, INT_MIN);
    rep.source_ext_dim = cohomology_fil_dim(cs, n, INT_MIN);
    auto [lo, hi] = range_of(ct, n);
    for (int i = lo; i <= hi; ++i) {
        SubspaceBuilder allowed(cs.p, cs.dim(n));
        for (const auto& v : bs) allowed.insert(v);
        for (const auto& v : z_space(cs, n, i + 1, INT_MAX)) allowed.insert(v);
        for (const auto& z : z_space(ct, n, i, INT_MAX)) {
            if (!allowed.contains(pullback_cochain(f, z, n, m.dim()))) {
                rep.failures.push_back(i);
                break;
            }
        }
    }
    return rep;
}

AlgebraChain subgroup_chain(const GroupAlgebra& ga, const std::vector<std::vector<std::uint32_t>>& subgroups) {
    AlgebraChain chain;
    chain.algebras.push_back(ga.algebra);
    std::vector<Subalgebra> subs;
    for (const auto& h : subgroups) subs.push_back(group_subalgebra(ga, h));
    for (std::size_t k = 0; k < subs.size(); ++k) {
        chain.algebras.push_back(subs[k].algebra);
        chain.links.push_back(k == 0 ? subs[0].inclusion : factor_inclusion(subs[k - 1], subs[k]));
    }
    return chain;
}

const char* koz_verdict_name(KozVerdict v) {
    switch (v) {
        case KozVerdict::Vanishes: return "vanishes";
        case KozVerdict::HypothesisFailed: return "hypothesis-failed";
        case KozVerdict::ChainTooShort: return "chain-too-short";
        case KozVerdict::NonVanishing: return "non-vanishing";
    }
    return "?";
}

KozCertificate koz_certificate(const AlgebraChain& chain, const FilteredModule& m, int n) {
    if (chain.algebras.size() != chain.links.size() + 1) throw InvalidInput("chain: algebras and links do not match");
    const auto& a = chain.algebras.front();
    KozCertificate cert;
    cert.n = n;
    cert.amplitude = amplitude(m);
    cert.m_star = cert.amplitude + n + 1;

    auto gr = associated_graded(a);
    cert.regime = "eventually-zero";
    if (!gr.connected()) {
        cert.koszul_reason = "gr A is not connected";
    } else {
        auto k = is_koszul(minimal_resolution(gr, n + 2, INT_MAX / 2));
        cert.koszul_reason = std::string(verdict_name(k.verdict)) + ": " + k.reason;
        if (k.verdict == Verdict::Yes) cert.regime = "uniform";
    }

    const std::size_t checked = std::min(chain.length(), static_cast<std::size_t>(cert.m_star));
    std::vector<FilteredModule> mods{m};
    for (std::size_t k = 0; k < checked; ++k) {
        mods.push_back(restrict_module(chain.algebras[k + 1], chain.algebras[k], chain.links[k], mods[k]));
        auto r = graded_restriction_rank(chain.algebras[k + 1], chain.algebras[k], chain.links[k], mods[k], n);
        cert.link_graded_ranks.push_back(r);
        cert.links.push_back(r == 0);
        if (r != 0 && !cert.failed_link) cert.failed_link = k;
    }
    if (cert.failed_link) {
        cert.verdict = KozVerdict::HypothesisFailed;
        return cert;
    }
    for (std::size_t k = 0; k < checked; ++k)
        cert.shift_verified.push_back(
            graded_shift_check(chain.algebras[k + 1], chain.algebras[k], chain.links[k], mods[k], n).pass());

    AlgebraMorphism composed = chain.links[0];
    for (std::size_t k = 1; k <= checked; ++k) {
        if (k > 1) composed = compose(composed, chain.links[k - 1]);
        auto res = restriction_map(chain.algebras[k], a, composed, m, n);
        cert.composed_ranks.push_back(rank(res.matrix));
        if (!cert.first_zero && res.matrix.is_zero()) cert.first_zero = k;
        if (static_cast<int>(k) == cert.m_star) cert.restriction_at_m_star = res.matrix;
    }
    if (chain.length() < static_cast<std::size_t>(cert.m_star)) {
        cert.verdict = KozVerdict::ChainTooShort;
        return cert;
    }
    cert.verdict = cert.restriction_at_m_star->is_zero() ? KozVerdict::Vanishes : KozVerdict::NonVanishing;
    cert.asserted = cert.verdict == KozVerdict::Vanishes && cert.regime == "uniform";
    return cert;
}

}  // namespace grext
