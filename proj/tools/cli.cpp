#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "grext/bar.hpp"
#include "grext/io.hpp"
#include "grext/iwahori.hpp"
#include "grext/lazard.hpp"
#include "grext/minres.hpp"
#include "grext/specseq.hpp"

namespace grext::cli {

namespace {

// ---- input fields -----------------------------------------------------------

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidInput(std::string("field '") + key + "': wrong type");
    }
}

template <class T>
T get_req(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
    return get_or<T>(j, key, T{});
}

int positive(const Json& j, const char* key, int fallback) {
    int v = get_or<int>(j, key, fallback);
    if (v < 1) throw InvalidInput(std::string("field '") + key + "': must be positive");
    return v;
}

std::string s(std::size_t v) { return std::to_string(v); }
std::string s(int v) { return std::to_string(v); }
std::string yes(bool b) { return b ? "yes" : "no"; }

// ---- algebras ---------------------------------------------------------------

struct LoadedAlgebra {
    FilteredAlgebra algebra;
    std::optional<GradedAlgebra> graded;  // kept when the builder produces a graded model
    std::optional<GroupAlgebra> group;
    std::vector<std::uint32_t> factors;   // cyclic factors of the group
    std::string description;

    GradedAlgebra gr() const { return graded ? *graded : associated_graded(algebra); }
};

LoadedAlgebra from_graded(GradedAlgebra g, std::string what) {
    LoadedAlgebra l{g.algebra(), g, std::nullopt, {}, std::move(what)};
    return l;
}

LoadedAlgebra load_algebra(const Json& in) {
    if (!in.contains("algebra")) throw InvalidInput("missing field 'algebra'");
    const Json& j = in["algebra"];
    if (!j.is_object()) throw InvalidInput("field 'algebra': expected an object");
    if (!j.contains("builder")) {
        auto a = algebra_from_json(j);
        return LoadedAlgebra{a, std::nullopt, std::nullopt, {}, "explicit, dim " + s(a.dim())};
    }
    auto builder = get_req<std::string>(j, "builder");
    auto p = get_req<std::uint32_t>(j, "p");
    if (builder == "group") {
        auto factors = get_req<std::vector<std::uint32_t>>(j, "cyclic");
        if (factors.empty()) throw InvalidInput("field 'cyclic': need at least one factor");
        FiniteGroup g = FiniteGroup::cyclic(factors[0]);
        std::string what = "F_" + std::to_string(p) + "[Z/" + std::to_string(factors[0]);
        for (std::size_t i = 1; i < factors.size(); ++i) {
            g = FiniteGroup::product(g, FiniteGroup::cyclic(factors[i]));
            what += " x Z/" + std::to_string(factors[i]);
        }
        auto ga = group_algebra(p, g);
        return LoadedAlgebra{ga.algebra, std::nullopt, ga, factors, what + "]"};
    }
    if (builder == "polynomial") {
        auto degrees = get_req<std::vector<int>>(j, "degrees");
        int t = get_req<int>(j, "truncation");
        return from_graded(polynomial_model(p, degrees, t), "polynomial model, " + s(degrees.size()) + " variables");
    }
    if (builder == "truncated") {
        int n = get_req<int>(j, "n");
        return from_graded(truncated_polynomial(p, n, get_or<int>(j, "degree", 1)), "F_p[x]/x^" + s(n));
    }
    if (builder == "exterior") {
        int d = get_req<int>(j, "d");
        return from_graded(exterior_algebra(p, d), "exterior algebra on " + s(d) + " generators");
    }
    throw InvalidInput("field 'builder': unknown builder '" + builder + "'");
}

FilteredModule load_module(const FilteredAlgebra& a, const Json& in) {
    if (!in.contains("module")) return trivial_module(a);
    const Json& j = in["module"];
    if (j.is_string()) {
        auto kind = j.get<std::string>();
        if (kind == "trivial") return trivial_module(a);
        if (kind == "regular") return regular_module(a);
        throw InvalidInput("field 'module': unknown module '" + kind + "'");
    }
    if (j.is_object() && j.contains("quotient")) return quotient_module(a, get_req<int>(j, "quotient"));
    return module_from_json(a, j);
}

/// Subgroup generated by tuples (one coordinate per cyclic factor).
std::vector<std::uint32_t> generated_subgroup(const LoadedAlgebra& l, const Json& gens) {
    std::vector<std::uint32_t> seeds;
    if (!gens.is_array()) throw InvalidInput("field 'chain': each subgroup is a list of generators");
    for (const auto& g : gens) {
        if (!g.is_array() || g.size() != l.factors.size())
            throw InvalidInput("field 'chain': a generator needs one coordinate per cyclic factor");
        std::uint32_t idx = 0;
        for (std::size_t i = 0; i < l.factors.size(); ++i) {
            auto x = g[i].get<std::int64_t>() % static_cast<std::int64_t>(l.factors[i]);
            if (x < 0) x += l.factors[i];
            idx = idx * l.factors[i] + static_cast<std::uint32_t>(x);
        }
        seeds.push_back(idx);
    }
    // Closure under addition, coordinatewise.
    auto add = [&](std::uint32_t a, std::uint32_t b) {
        std::uint32_t out = 0, scale = 1;
        for (std::size_t i = l.factors.size(); i-- > 0;) {
            auto f = l.factors[i];
            out += ((a % f + b % f) % f) * scale;
            a /= f;
            b /= f;
            scale *= f;
        }
        return out;
    };
    std::set<std::uint32_t> elems{0};
    std::vector<std::uint32_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<std::uint32_t> next;
        for (auto e : frontier)
            for (auto g : seeds) {
                auto x = add(e, g);
                if (elems.insert(x).second) next.push_back(x);
            }
        frontier = std::move(next);
    }
    return {elems.begin(), elems.end()};
}

AlgebraChain load_chain(const LoadedAlgebra& l, const Json& in) {
    if (!l.group) throw InvalidInput("field 'algebra': chains need a group algebra (builder 'group')");
    if (!in.contains("chain") || !in["chain"].is_array() || in["chain"].empty())
        throw InvalidInput("missing field 'chain'");
    std::vector<std::vector<std::uint32_t>> subgroups;
    for (const auto& gens : in["chain"]) subgroups.push_back(generated_subgroup(l, gens));
    return subgroup_chain(*l.group, subgroups);
}

// ---- p-adic instances --------------------------------------------------------

struct Instance {
    std::string family;
    std::uint32_t p = 3;
    int n = 2, r = 1, precision = 4;
    OmegaKind kind = OmegaKind::Entry;
    int pert_num = 1, pert_den = 4;
};

Instance load_instance(const Json& in) {
    Json j = in.contains("instance") ? in["instance"] : Json::object();
    if (!j.is_object()) throw InvalidInput("field 'instance': expected an object");
    Instance x;
    x.family = get_or<std::string>(j, "family", "gl_n");
    x.p = get_or<std::uint32_t>(j, "p", 3);
    x.n = get_or<int>(j, "n", 2);
    x.r = get_or<int>(j, "r", 1);
    x.precision = get_or<int>(j, "R", 4);
    auto omega = get_or<std::string>(j, "omega", "entry");
    if (omega == "chart")
        x.kind = OmegaKind::Chart;
    else if (omega != "entry")
        throw InvalidInput("field 'omega': expected 'entry' or 'chart'");
    if (j.contains("perturbation")) {
        auto c = get_req<std::vector<int>>(j, "perturbation");
        if (c.size() != 2 || c[1] <= 0) throw InvalidInput("field 'perturbation': expected [numerator, denominator]");
        x.pert_num = c[0];
        x.pert_den = c[1];
    }
    if (x.n < 1 || x.r < 1 || x.precision < 1) throw InvalidInput("field 'instance': n, r and R must be positive");
    return x;
}

PValuedGroupInstance make_group(const Instance& x) {
    PValuedGroupInstance g;
    if (x.family == "gl_n")
        g = congruence_group(x.p, x.n, x.r, x.precision, x.kind);
    else if (x.family == "additive")
        g = additive_group(x.p, x.n, x.precision);
    else if (x.family == "heisenberg")
        g = heisenberg_group(x.p, x.r, x.precision);
    else
        throw InvalidInput("field 'family': expected gl_n, additive or heisenberg");
    set_perturbation(g, x.pert_num, x.pert_den);
    return g;
}

CongruenceInstance make_congruence(const Instance& x) {
    if (x.family != "gl_n") throw InvalidInput("field 'family': this command needs gl_n");
    return congruence_instance(x.p, x.n, x.r, x.precision);
}

std::vector<DominantCocharacter> load_cocharacters(const Json& in, int n) {
    if (in.contains("cocharacters")) {
        auto list = get_req<std::vector<DominantCocharacter>>(in, "cocharacters");
        for (const auto& a : list)
            if (static_cast<int>(a.size()) != n) throw InvalidInput("field 'cocharacters': wrong length");
        return list;
    }
    int height = get_or<int>(in, "height", 2);
    return dominant_cocharacters(n, height, get_or<bool>(in, "modulo_center", false));
}

LowerModuleBuilder load_lower_module(const Json& in) {
    auto kind = get_or<std::string>(in, "module", "trivial");
    if (kind == "trivial") return {};
    if (kind == "regular") return [](const GradedAlgebra& g) { return regular_module(g.algebra()); };
    throw InvalidInput("field 'module': expected 'trivial' or 'regular'");
}

// ---- serialization -----------------------------------------------------------

Json page_json(const SpectralPage& pg) {
    Json out = Json::array();
    for (const auto& [ij, d] : pg.dims) out.push_back({ij.first, ij.second, d});
    return out;
}

Json koz_json(const KozCertificate& c) {
    Json j;
    j["n"] = c.n;
    j["amplitude"] = c.amplitude;
    j["m_star"] = c.m_star;
    j["regime"] = c.regime;
    j["koszul_reason"] = c.koszul_reason;
    j["links"] = c.links;
    j["link_graded_ranks"] = c.link_graded_ranks;
    j["shift_verified"] = c.shift_verified;
    j["failed_link"] = c.failed_link ? Json(*c.failed_link) : Json(nullptr);
    j["composed_ranks"] = c.composed_ranks;
    j["first_zero"] = c.first_zero ? Json(*c.first_zero) : Json(nullptr);
    j["restriction_at_m_star"] = c.restriction_at_m_star ? to_json(*c.restriction_at_m_star) : Json(nullptr);
    j["verdict"] = koz_verdict_name(c.verdict);
    j["asserted"] = c.asserted;
    return j;
}

void koz_status(Report& rep, const KozCertificate& c, const std::string& label) {
    switch (c.verdict) {
        case KozVerdict::Vanishes: break;
        case KozVerdict::HypothesisFailed:
            rep.hypothesis_failed(label + "hypothesis fails at link " + s(c.failed_link.value_or(0)));
            break;
        case KozVerdict::ChainTooShort: rep.hypothesis_failed(label + "chain shorter than m* = " + s(c.m_star)); break;
        case KozVerdict::NonVanishing: rep.fail(label + "composed restriction is nonzero at m*"); break;
    }
}

Table koz_table(const std::string& title, const KozCertificate& c) {
    Table t{title, {"link", "hypothesis", "graded rank", "shift", "composed rank"}, {}};
    for (std::size_t k = 0; k < c.links.size(); ++k)
        t.add({s(k), yes(c.links[k]), s(c.link_graded_ranks[k]), k < c.shift_verified.size() ? yes(c.shift_verified[k]) : "-",
               k < c.composed_ranks.size() ? s(c.composed_ranks[k]) : "-"});
    return t;
}

// ---- commands -----------------------------------------------------------------

struct Context {
    const JobConfig& job;
    const Json& in;

    int bar_degree(const char* key, int fallback) const {
        int n = positive(in, key, fallback);
        if (n > job.max_bar_degree)
            throw ResourceCapExceeded(std::string("field '") + key + "' = " + std::to_string(n) +
                                      " exceeds max-bar-degree " + std::to_string(job.max_bar_degree));
        return n;
    }
    void check_dim(std::size_t dim) const {
        if (dim > job.max_dim)
            throw ResourceCapExceeded("algebra dimension " + std::to_string(dim) + " exceeds max-dim " +
                                      std::to_string(job.max_dim));
    }
    std::size_t samples(std::size_t fallback) const {
        return static_cast<std::size_t>(positive(in, "samples", static_cast<int>(fallback)));
    }
};

Report cmd_validate(const Context& ctx) {
    Report rep{"validate", {"App-filtered-rings"}};
    auto l = load_algebra(ctx.in);
    auto m = load_module(l.algebra, ctx.in);
    rep.result["algebra"] = {{"description", l.description},
                             {"dim", l.algebra.dim()},
                             {"p", l.algebra.p()},
                             {"weights", l.algebra.weights()},
                             {"graded", l.algebra.is_graded()}};
    rep.result["module"] = {{"dim", m.dim()}, {"weights", m.weights()}, {"nu", m.nu()}, {"mu", m.mu()}};
    rep.result["axioms"] = {"associativity", "unit", "filtration multiplicativity", "augmentation", "module action"};
    Table t{"axioms", {"object", "dim", "max weight", "verdict"}, {}};
    t.add({"algebra", s(l.algebra.dim()), s(l.algebra.max_weight()), "ok"});
    t.add({"module", s(m.dim()), s(m.mu() - 1), "ok"});
    rep.tables.push_back(t);
    return rep;
}

Report cmd_gr(const Context& ctx) {
    Report rep{"gr", {"Lem-bgr", "Lem-grhom"}};
    auto l = load_algebra(ctx.in);
    ctx.check_dim(l.algebra.dim());
    auto m = load_module(l.algebra, ctx.in);
    int n_max = ctx.bar_degree("n_max", 2);
    auto g = associated_graded(l.algebra);
    std::map<int, std::size_t> pieces;
    for (std::size_t i = 0; i < g.dim(); ++i) ++pieces[g.degree(i)];
    Json jp = Json::array();
    Table tp{"gr A", {"degree", "dim"}, {}};
    for (auto [d, k] : pieces) {
        jp.push_back({d, k});
        tp.add({s(d), s(k)});
    }
    rep.result["gr_dims"] = jp;
    rep.result["connected"] = g.connected();

    Json bars = Json::array(), homs = Json::array();
    Table tb{"gr of the bar resolution", {"n", "i", "dim gr^i B_n", "product formula", "pass"}, {}};
    Table th{"gr of Hom", {"n", "s", "gr^s Hom_A", "Hom^s_grA", "pass"}, {}};
    const int w = l.algebra.max_weight();
    for (int n = 0; n <= n_max; ++n) {
        for (int i = 0; i <= n * w; ++i) {
            auto b = gr_bar_compare(l.algebra, n, i);
            bars.push_back({{"n", n}, {"i", i}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"pass", b.pass()}});
            tb.add({s(n), s(i), s(b.lhs), s(b.rhs), yes(b.pass())});
            rep.require(b.pass(), "gr B_" + s(n) + " in degree " + s(i));
        }
        for (int sd = m.nu() - n * w; sd < m.mu(); ++sd) {
            auto h = gr_hom_compare(l.algebra, m, n, sd);
            homs.push_back({{"n", n}, {"s", sd}, {"lhs", h.lhs}, {"rhs", h.rhs}, {"pass", h.pass()}});
            th.add({s(n), s(sd), s(h.lhs), s(h.rhs), yes(h.pass())});
            rep.require(h.pass(), "gr Hom in degree (" + s(n) + ", " + s(sd) + ")");
        }
    }
    rep.result["bar"] = bars;
    rep.result["hom"] = homs;
    rep.tables = {tp, tb, th};
    return rep;
}

Report cmd_ext(const Context& ctx) {
    Report rep{"ext", {"App-bar"}};
    auto l = load_algebra(ctx.in);
    auto m = load_module(l.algebra, ctx.in);
    int n_max = ctx.bar_degree("n_max", 3);
    auto ext = ext_via_bar(l.algebra, m, n_max, ctx.job.max_dim);
    Table t{"Ext^n_A(k, M) via the bar complex", {"n", "dim", "cochains", "cocycles", "coboundaries"}, {}};
    Json dims = Json::array(), detail = Json::array();
    for (const auto& d : ext.degrees) {
        dims.push_back(d.dim);
        detail.push_back({{"n", d.n},
                          {"dim", d.dim},
                          {"cochain_dim", d.cochain_dim},
                          {"cocycle_dim", d.cocycle_dim},
                          {"coboundary_dim", d.coboundary_dim}});
        t.add({s(d.n), s(d.dim), s(d.cochain_dim), s(d.cocycle_dim), s(d.coboundary_dim)});
    }
    rep.result["algebra"] = l.description;
    rep.result["n_max"] = n_max;
    rep.result["dims"] = dims;
    rep.result["degrees"] = detail;
    rep.tables.push_back(t);
    return rep;
}

int default_d_max(const GradedAlgebra& g, int n_max) {
    int top = 1;
    for (std::size_t i = 0; i < g.dim(); ++i) top = std::max(top, g.degree(i));
    return (n_max + 1) * (top + 1);
}

struct Resolved {
    GradedAlgebra g;
    MinimalResolution r;
    int n_max = 0;
};

Resolved resolve(const Context& ctx, const LoadedAlgebra& l, int extra) {
    ctx.check_dim(l.algebra.dim());
    int n_max = positive(ctx.in, "n_max", 3);
    auto g = l.gr();
    int d_max = positive(ctx.in, "d_max", default_d_max(g, n_max + extra));
    auto r = minimal_resolution(g, n_max + extra, d_max);
    return {g, std::move(r), n_max};
}

Json resolution_json(const MinimalResolution& r) {
    Json steps = Json::array();
    for (int n = 0; n <= r.n_max(); ++n)
        steps.push_back({{"n", n}, {"degrees", r.step(n).degrees}, {"complete", r.step(n).complete}});
    return steps;
}

Report cmd_minres(const Context& ctx) {
    Report rep{"minres", {"Lem-degbas"}};
    auto l = load_algebra(ctx.in);
    auto [g, r, n_max] = resolve(ctx, l, 0);
    bool minimal = is_minimal(r), complex = is_complex(r);
    rep.require(minimal, "differential entries outside the augmentation ideal");
    rep.require(complex, "T_{n-1} T_n != 0");
    rep.result["steps"] = resolution_json(r);
    rep.result["minimal"] = minimal;
    rep.result["complex"] = complex;
    rep.result["koszul_complex"] = r.koszul_complex();
    rep.result["proven_zero_beyond"] = r.proven_zero_beyond();
    rep.result["d_max"] = r.d_max();
    Table t{"minimal resolution of k", {"n", "rank", "generator degrees", "complete"}, {}};
    for (int n = 0; n <= r.n_max(); ++n) t.add({s(n), s(r.betti(n)), join(r.step(n).degrees), yes(r.step(n).complete)});
    rep.tables.push_back(t);
    return rep;
}

Report cmd_betti(const Context& ctx) {
    Report rep{"betti", {"Lem-degbas", "Thm-koz"}};
    auto l = load_algebra(ctx.in);
    auto [g, r, n_max] = resolve(ctx, l, 1);
    auto m = associated_graded(l.algebra, load_module(l.algebra, ctx.in));
    auto ext = graded_ext(r, m, n_max);
    Json betti = Json::array(), table = Json::array();
    Table tb{"Betti numbers", {"n", "b_n"}, {}};
    for (int n = 0; n <= n_max; ++n) {
        betti.push_back(r.betti(n));
        tb.add({s(n), s(r.betti(n))});
    }
    Table te{"bigraded Ext^{i,j}, i internal, n = i + j", {"n", "internal degree", "dim", "reliable"}, {}};
    for (const auto& d : ext.degrees)
        for (const auto& [i, k] : d.dims_by_degree) {
            bool ok = d.reliable || i >= d.reliable_from;
            table.push_back({{"n", d.n}, {"internal", i}, {"dim", k}, {"reliable", ok}});
            te.add({s(d.n), s(i), s(k), yes(ok)});
        }
    rep.result["betti"] = betti;
    rep.result["ext_totals"] = ext.totals();
    rep.result["ext"] = table;
    rep.result["proven_zero_beyond"] = r.proven_zero_beyond();
    rep.tables = {tb, te};
    return rep;
}

Report cmd_koszul(const Context& ctx) {
    Report rep{"koszul", {"Thm-koz", "Lem-degbas"}};
    auto l = load_algebra(ctx.in);
    auto [g, r, n_max] = resolve(ctx, l, 0);
    auto k = is_koszul(r);
    Json verdict = k.verdict == Verdict::Yes ? Json(true) : k.verdict == Verdict::No ? Json(false) : Json("inconclusive");
    rep.result["koszul"] = verdict;
    rep.result["verdict"] = verdict_name(k.verdict);
    rep.result["reason"] = k.reason;
    std::vector<std::size_t> betti;
    for (int n = 0; n <= r.n_max(); ++n) betti.push_back(r.betti(n));
    rep.result["betti"] = betti;
    rep.result["proven_zero_beyond"] = r.proven_zero_beyond();
    Table t{"Koszul test", {"algebra", "verdict", "betti", "reason"}, {}};
    t.add({l.description, verdict_name(k.verdict), join(betti), k.reason});
    rep.tables.push_back(t);
    return rep;
}

Report cmd_ss_pages(const Context& ctx) {
    Report rep{"ss-pages", {"Cor-spec", "Thm-koz"}};
    auto l = load_algebra(ctx.in);
    auto m = load_module(l.algebra, ctx.in);
    int n_max = ctx.bar_degree("n_max", 2);
    auto c = build_filtered_hom_complex(l.algebra, m, n_max);
    rep.require(c.valid(), "filtered complex: d^2 = 0 and filtration");
    int last = stable_page(c);
    Json pages = Json::array();
    // Runs of pages with equal dimensions share one table row.
    Table t{"pages E_r^{i,j} (nonzero entries)", {"r", "entries (i,j):dim", "identities hold"}, {}};
    std::optional<SpectralPage> prev;
    std::optional<SpectralPage> e1;
    int run_start = 0;
    bool run_ok = true;
    for (int r = 0; r <= last + 1; ++r) {
        auto pg = page(c, r);
        if (r == 1) e1 = pg;
        bool ok = true;
        if (prev) {
            ok = page_identity_holds(*prev, pg);
            rep.require(ok, "dim E_" + s(r) + " = H(E_" + s(r - 1) + ", d)");
            pages.back()["identity_with_next"] = ok;
        }
        std::string cells;
        for (const auto& [ij, d] : pg.dims)
            cells += (cells.empty() ? "" : " ") + ("(" + s(ij.first) + "," + s(ij.second) + "):" + s(d));
        pages.push_back({{"r", r}, {"dims", page_json(pg)}, {"identity_with_next", nullptr}});
        if (prev && prev->dims == pg.dims) {
            run_ok = run_ok && ok;
            t.rows.back()[0] = s(run_start) + ".." + s(r);
            t.rows.back()[2] = yes(run_ok);
        } else {
            if (!t.rows.empty() && !ok) t.rows.back()[2] = "no";
            run_start = r;
            run_ok = true;
            t.add({s(r), cells, "yes"});
        }
        prev = pg;
    }
    rep.result["pages"] = pages;
    rep.result["stable_page"] = last;
    rep.result["n_max"] = n_max;
    // Koszul band at E_1 when gr A is Koszul.
    auto g = l.gr();
    bool koszul = false;
    if (g.connected()) koszul = is_koszul(minimal_resolution(g, n_max, default_d_max(g, n_max))).verdict == Verdict::Yes;
    rep.result["gr_koszul"] = koszul;
    if (koszul && e1) {
        auto bad = koszul_band_violations(*e1, m.nu(), m.mu());
        Json jb = Json::array();
        for (auto [i, j] : bad) jb.push_back({i, j});
        rep.result["band"] = {{"nu", m.nu()}, {"mu", m.mu()}, {"violations", jb}};
        rep.require(bad.empty(), "E_1 leaves the band nu <= 2i+j < mu");
    }
    rep.tables.push_back(t);
    return rep;
}

Report cmd_ss_bookkeeping(const Context& ctx) {
    Report rep{"ss-bookkeeping", {"Cor-spec"}};
    auto l = load_algebra(ctx.in);
    auto m = load_module(l.algebra, ctx.in);
    int n_max = ctx.bar_degree("n_max", 2);
    auto b = e_infinity_bookkeeping(l.algebra, m, n_max);
    rep.require(b.pass(), "sum of E_infinity differs from dim Ext");
    rep.result["e_infinity_totals"] = b.e_infinity_totals;
    rep.result["ext_dims"] = b.ext_dims;
    rep.result["graded_pieces_match"] = b.graded_pieces_match;
    Table t{"E_infinity bookkeeping", {"n", "sum E_inf", "dim Ext^n"}, {}};
    for (std::size_t n = 0; n < b.ext_dims.size(); ++n)
        t.add({s(n), n < b.e_infinity_totals.size() ? s(b.e_infinity_totals[n]) : "-", s(b.ext_dims[n])});
    rep.tables.push_back(t);
    return rep;
}

Report cmd_restrict(const Context& ctx) {
    Report rep{"restrict", {"Cor-fil"}};
    auto l = load_algebra(ctx.in);
    auto chain = load_chain(l, ctx.in);
    auto m = load_module(l.algebra, ctx.in);
    int n = ctx.bar_degree("n", 1);
    Json links = Json::array();
    Table t{"restriction Ext^n_A(k, M) -> Ext^n_A'(k, M)", {"link", "dim A", "dim A'", "dim Ext A", "dim Ext A'", "rank"}, {}};
    const FilteredAlgebra* target = &chain.algebras[0];
    auto mt = m;
    for (std::size_t k = 0; k < chain.length(); ++k) {
        const auto& source = chain.algebras[k + 1];
        auto res = restriction_map(source, *target, chain.links[k], mt, n, ctx.job.max_dim);
        auto rk = rank(res.matrix);
        links.push_back({{"link", k},
                         {"rank", rk},
                         {"matrix", to_json(res.matrix)},
                         {"source_dim", res.source_ext.degrees.back().dim},
                         {"target_dim", res.target_ext.degrees.back().dim}});
        t.add({s(k), s(target->dim()), s(source.dim()), s(res.target_ext.degrees.back().dim),
               s(res.source_ext.degrees.back().dim), s(rk)});
        mt = restrict_module(source, *target, chain.links[k], mt);
        target = &source;
    }
    rep.result["n"] = n;
    rep.result["links"] = links;
    rep.tables.push_back(t);
    return rep;
}

Report cmd_fil_shift(const Context& ctx) {
    Report rep{"fil-shift", {"Cor-fil", "Eq-van"}};
    auto l = load_algebra(ctx.in);
    auto chain = load_chain(l, ctx.in);
    auto m = load_module(l.algebra, ctx.in);
    int n = ctx.bar_degree("n", 1);
    Json links = Json::array();
    Table t{"filtration shift per link", {"link", "verdict", "graded rank", "failures", "dim Ext A", "dim Ext A'"}, {}};
    auto mt = m;
    for (std::size_t k = 0; k < chain.length(); ++k) {
        const auto& target = chain.algebras[k];
        const auto& source = chain.algebras[k + 1];
        auto sh = graded_shift_check(source, target, chain.links[k], mt, n);
        links.push_back({{"link", k},
                         {"verdict", shift_verdict_name(sh.verdict)},
                         {"graded_restriction_rank", sh.graded_restriction_rank},
                         {"failures", sh.failures},
                         {"source_ext_dim", sh.source_ext_dim},
                         {"target_ext_dim", sh.target_ext_dim}});
        t.add({s(k), shift_verdict_name(sh.verdict), s(sh.graded_restriction_rank), join(sh.failures),
               s(sh.target_ext_dim), s(sh.source_ext_dim)});
        if (sh.verdict == ShiftVerdict::HypothesisFailed)
            rep.hypothesis_failed("link " + s(k) + ": graded restriction has rank " + s(sh.graded_restriction_rank));
        else
            rep.require(sh.failures.empty(), "link " + s(k) + ": filtration not shifted");
        mt = restrict_module(source, target, chain.links[k], mt);
    }
    rep.result["n"] = n;
    rep.result["links"] = links;
    rep.tables.push_back(t);
    return rep;
}

Report cmd_koz_cert(const Context& ctx) {
    Report rep{"koz-cert", {"Thm-koz", "Cor-fil", "Eq-van"}};
    auto l = load_algebra(ctx.in);
    auto chain = load_chain(l, ctx.in);
    auto m = load_module(l.algebra, ctx.in);
    int n = ctx.bar_degree("n", 1);
    auto c = koz_certificate(chain, m, n);
    rep.result["certificate"] = koz_json(c);
    koz_status(rep, c, "");
    rep.tables.push_back(koz_table("vanishing certificate, n = " + s(n) + ", m* = " + s(c.m_star) + ", verdict " +
                                       koz_verdict_name(c.verdict),
                                   c));
    return rep;
}

Report cmd_pval_check(const Context& ctx) {
    Report rep{"pval-check", {"Lem-val", "Lem-ext", "Sec-laz"}};
    auto x = load_instance(ctx.in);
    auto g = make_group(x);
    auto v = pvaluation_check(g, ctx.samples(200), ctx.job.seed);
    rep.require(v.pass(), "valuation axioms");
    for (const auto& w : v.violations) rep.notes.push_back(w);
    rep.result["axioms"] = {{"samples", v.samples},
                            {"tested_min", v.tested_min},
                            {"tested_commutator", v.tested_commutator},
                            {"tested_power", v.tested_power},
                            {"tested_saturation", v.tested_saturation},
                            {"skipped", v.skipped},
                            {"violations", v.violations}};
    auto gr = graded_group(g);
    rep.result["graded"] = {{"rank", gr.rank()},
                            {"degrees", gr.degrees},
                            {"scaled_degrees", gr.scaled_degrees},
                            {"bracket_vanishes", gr.bracket_vanishes()},
                            {"abelian", gr.abelian()}};
    rep.result["saturated"] = g.saturated;
    Table t{"p-valuation", {"family", "rank", "saturated", "min", "commutator", "power", "saturation", "skipped", "violations"}, {}};
    t.add({g.family, s(g.rank()), yes(g.saturated), s(v.tested_min), s(v.tested_commutator), s(v.tested_power),
           s(v.tested_saturation), s(v.skipped), s(v.violations.size())});
    rep.tables.push_back(t);

    int n_ext = get_or<int>(ctx.in, "n_max", std::min<int>(3, static_cast<int>(g.rank())));
    if (g.saturated) {
        auto pc = pi_cokernel_restriction(g);
        rep.require(pc.is_zero(), "E (x) gr H^p -> E (x) gr H is nonzero");
        Json ext = Json::array();
        Table te{"restriction along H^p in H", {"n", "rows", "cols", "rank"}, {}};
        if (n_ext > 0) {
            auto maps = graded_ext_restrictions(pm_power_subgroup(g, 1), g, n_ext);
            for (int n = 1; n <= n_ext; ++n) {
                const auto& mtx = maps[static_cast<std::size_t>(n - 1)];
                auto rk = rank(mtx);
                ext.push_back({{"n", n}, {"rows", mtx.rows()}, {"cols", mtx.cols()}, {"rank", rk}});
                te.add({s(n), s(mtx.rows()), s(mtx.cols()), s(rk)});
                rep.require(rk == 0, "graded Ext^" + s(n) + " restriction is nonzero");
            }
        }
        rep.result["pi_cokernel_zero"] = pc.is_zero();
        rep.result["ext_restrictions"] = ext;
        rep.tables.push_back(te);
    } else {
        rep.result["pi_cokernel_zero"] = nullptr;
        rep.result["ext_restrictions"] = nullptr;
        rep.notes.push_back("not saturated: p-power restriction skipped");
    }
    return rep;
}

Report cmd_iwahori_verify(const Context& ctx) {
    Report rep{"iwahori-verify", {"Sec-iwahori", "Lem-val"}};
    auto c = make_congruence(load_instance(ctx.in));
    auto samples = ctx.samples(200);
    bool exhaustive = get_or<bool>(ctx.in, "exhaustive", false);
    auto f = factorization_check(c, samples, ctx.job.seed, exhaustive);
    rep.require(f.pass(), "factorization round trip");
    rep.result["factorization"] = {{"checked", f.checked}, {"exhaustive", exhaustive}, {"failures", f.failures}};

    auto list = load_cocharacters(ctx.in, c.n);
    std::vector<std::optional<ConjugationReport>> conj(list.size());
    std::vector<std::string> refused(list.size());
    parallel_for(list.size(), [&](std::size_t i) {
        try {
            conj[i] = s_conjugation_check(c, list[i], samples, ctx.job.seed + i);
        } catch (const PrecisionExhausted& e) {
            refused[i] = e.what();
        }
    });
    Json jc = Json::array();
    Table t{"conjugation by s", {"s", "checked", "s(N^U)s^-1 in N^U", "s(N^Ubar)s^-1 contains N^Ubar"}, {}};
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (!conj[i]) {
            rep.fail("s = " + to_string(list[i]) + ": " + refused[i]);
            jc.push_back({{"s", list[i]}, {"refused", refused[i]}});
            t.add({to_string(list[i]), "refused", "-", "-"});
            continue;
        }
        const auto& r = *conj[i];
        rep.require(r.pass(), "conjugation conditions for s = " + to_string(list[i]));
        jc.push_back({{"s", list[i]},
                      {"checked", r.checked},
                      {"upper_contained", r.upper_contained},
                      {"lower_contains", r.lower_contains},
                      {"failures", r.failures}});
        t.add({to_string(list[i]), s(r.checked), yes(r.upper_contained), yes(r.lower_contains)});
    }
    rep.result["conjugation"] = jc;

    auto om = omega_min_formula_check(c.group, samples, ctx.job.seed);
    rep.require(om.pass(), "min formula for the valuation");
    rep.result["min_formula"] = {{"tested", om.tested}, {"skipped", om.skipped}, {"failures", om.failures}};

    Table tf{"factorization and valuation", {"check", "tested", "failures"}, {}};
    tf.add({exhaustive ? "round trip (exhaustive)" : "round trip", s(f.checked), s(f.failures.size())});
    tf.add({"min formula", s(om.tested), s(om.failures.size())});
    rep.tables = {tf, t};
    return rep;
}

Report cmd_griwa(const Context& ctx) {
    Report rep{"griwa", {"Eq-griwa"}};
    auto c = make_congruence(load_instance(ctx.in));
    auto list = load_cocharacters(ctx.in, c.n);
    std::vector<GriwaReport> out(list.size());
    parallel_for(list.size(), [&](std::size_t i) { out[i] = griwa_check(c, list[i]); });
    Json js = Json::array();
    Table t{"graded decomposition", {"s", "lower", "torus", "upper", "total", "degrees match"}, {}};
    for (const auto& g : out) {
        rep.require(g.pass(), "rank/degree decomposition for s = " + to_string(g.s));
        rep.require(g.rank_total == static_cast<std::size_t>(c.n * c.n), "total rank n^2 for s = " + to_string(g.s));
        js.push_back({{"s", g.s},
                      {"rank_lower", g.rank_lower},
                      {"rank_torus", g.rank_torus},
                      {"rank_upper", g.rank_upper},
                      {"rank_total", g.rank_total},
                      {"degrees_lower", g.degrees_lower},
                      {"degrees_torus", g.degrees_torus},
                      {"degrees_upper", g.degrees_upper},
                      {"degrees_total", g.degrees_total},
                      {"multiset_match", g.multiset_match}});
        t.add({to_string(g.s), s(g.rank_lower), s(g.rank_torus), s(g.rank_upper), s(g.rank_total), yes(g.multiset_match)});
    }
    rep.result["cocharacters"] = js;
    rep.tables.push_back(t);
    return rep;
}

Report cmd_achk_cert(const Context& ctx) {
    Report rep{"achk-cert", {"Lem-achk", "Lem-unif", "Eq-kun", "Lem-ext"}};
    auto c = make_congruence(load_instance(ctx.in));
    int n = positive(ctx.in, "n", 2);
    auto list = load_cocharacters(ctx.in, c.n);
    auto module = load_lower_module(ctx.in);
    std::vector<AchkReport> out(list.size());
    parallel_for(list.size(), [&](std::size_t i) { out[i] = achk_certificate(c, list[i], n, module); });
    Json js = Json::array();
    Table t{"restriction certificate, n = " + s(n),
            {"s", "dim U", "lower Ext dims", "torus", "upper", "kunneth", "summands", "holds"},
            {}};
    for (const auto& a : out) {
        Json sm = Json::array();
        for (const auto& x : a.summands)
            sm.push_back({{"a", x.a}, {"b", x.b}, {"c", x.c}, {"dim", x.dim}, {"restriction_rank", x.restriction_rank}});
        js.push_back({{"s", a.s},
                      {"n", a.n},
                      {"dim_u", a.dim_u},
                      {"applicable", a.applicable},
                      {"lower_rank", a.lower_rank},
                      {"lower_ext_dims", a.lower_ext_dims},
                      {"lower_vanishes", a.lower_vanishes},
                      {"torus_pi_cokernel_zero", a.torus_pi_cokernel_zero},
                      {"upper_pi_cokernel_zero", a.upper_pi_cokernel_zero},
                      {"torus_restrictions_zero", a.torus_restrictions_zero},
                      {"upper_restrictions_zero", a.upper_restrictions_zero},
                      {"kunneth_lhs", a.kunneth_lhs},
                      {"kunneth_rhs", a.kunneth_rhs},
                      {"kunneth_match", a.kunneth_match},
                      {"kunneth_generic", a.kunneth_generic ? Json(*a.kunneth_generic) : Json(nullptr)},
                      {"summands", sm},
                      {"restriction_zero", a.restriction_zero},
                      {"holds", a.holds},
                      {"failed_ingredient", a.failed_ingredient}});
        t.add({to_string(a.s), s(a.dim_u), join(a.lower_ext_dims), yes(a.torus_restrictions_zero),
               yes(a.upper_restrictions_zero), yes(a.kunneth_match), s(a.summands.size()),
               a.holds ? "yes" : a.failed_ingredient});
        if (!a.applicable)
            rep.hypothesis_failed("s = " + to_string(a.s) + ": " + a.failed_ingredient);
        else
            rep.require(a.holds, "s = " + to_string(a.s) + ": " + a.failed_ingredient);
    }
    rep.result["certificates"] = js;

    auto u = unif_check(c, list, positive(ctx.in, "weight_dim", 1));
    rep.require(u.uniform, "amplitude differs across s");
    rep.result["unif"] = {{"amplitudes", u.amplitudes}, {"bound", u.bound}, {"uniform", u.uniform}};
    Table tu{"amplitude of the restricted module", {"s", "amplitude"}, {}};
    for (std::size_t i = 0; i < u.s.size(); ++i) tu.add({to_string(u.s[i]), s(u.amplitudes[i])});
    rep.tables = {t, tu};
    return rep;
}

Report cmd_dimu_pipeline(const Context& ctx) {
    Report rep{"dimu-pipeline", {"Prop-dimu", "Thm-koz", "Lem-unif"}};
    auto c = make_congruence(load_instance(ctx.in));
    int n = positive(ctx.in, "n", 2);
    auto list = load_cocharacters(ctx.in, c.n);
    auto module = load_lower_module(ctx.in);
    std::vector<KozCertificate> out(list.size());
    parallel_for(list.size(), [&](std::size_t i) { out[i] = dimu_certificate(c, list[i], n, module); });
    Json js = Json::array();
    Table t{"chain certificates, n = " + s(n), {"s", "amplitude", "m*", "links", "first zero", "verdict"}, {}};
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& k = out[i];
        Json j = koz_json(k);
        j["s"] = list[i];
        js.push_back(j);
        std::string links;
        for (bool b : k.links) links += b ? '+' : '-';
        t.add({to_string(list[i]), s(k.amplitude), s(k.m_star), links, k.first_zero ? s(*k.first_zero) : "-",
               koz_verdict_name(k.verdict)});
        koz_status(rep, k, "s = " + to_string(list[i]) + ": ");
    }
    rep.result["certificates"] = js;
    rep.tables.push_back(t);
    return rep;
}

using Handler = Report (*)(const Context&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h{
        {"validate", cmd_validate},       {"gr", cmd_gr},
        {"ext", cmd_ext},                 {"minres", cmd_minres},
        {"betti", cmd_betti},             {"koszul", cmd_koszul},
        {"ss-pages", cmd_ss_pages},       {"ss-bookkeeping", cmd_ss_bookkeeping},
        {"restrict", cmd_restrict},       {"fil-shift", cmd_fil_shift},
        {"koz-cert", cmd_koz_cert},       {"pval-check", cmd_pval_check},
        {"iwahori-verify", cmd_iwahori_verify}, {"griwa", cmd_griwa},
        {"achk-cert", cmd_achk_cert},     {"dimu-pipeline", cmd_dimu_pipeline},
    };
    return h;
}

Json read_inputs(const std::vector<std::string>& paths) {
    Json merged = Json::object();
    for (const auto& path : paths) {
        std::ifstream f(path);
        if (!f) throw InvalidInput("input: cannot open " + path);
        Json j;
        try {
            j = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput("input " + path + ": " + e.what());
        }
        if (!j.is_object()) throw InvalidInput("input " + path + ": expected a JSON object");
        for (auto it = j.begin(); it != j.end(); ++it) merged[it.key()] = it.value();
    }
    return merged;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, h] : handlers()) v.push_back(n);
        return v;
    }();
    return names;
}

Report execute(const JobConfig& job, const Json& input) {
    if (job.max_bar_degree < 1) throw InvalidInput("max-bar-degree must be positive");
    if (job.max_dim < 1) throw InvalidInput("max-dim must be positive");
    for (const auto& [name, h] : handlers())
        if (name == job.command) return h(Context{job, input});
    throw InvalidInput("command: unknown command '" + job.command + "'");
}

int exit_code(const Report& r) {
    switch (r.status) {
        case Status::Ok: return 0;
        case Status::HypothesisFailed: return 2;
        case Status::PropertyFailed: return 1;
    }
    return 1;
}

std::string report_text(const Report& r, std::uint64_t seed) { return r.to_json(seed).dump(2) + "\n"; }

int run(const JobConfig& job, std::ostream& out, std::ostream& err) {
    Report rep;
    try {
        rep = execute(job, read_inputs(job.inputs));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    const auto json = report_text(rep, job.seed);
    const auto table = rep.render_tables();
    if (job.output.empty()) {
        out << json;
        err << table;
    } else {
        std::ofstream f(job.output, std::ios::binary);
        if (!f) {
            err << "error: output: cannot write " << job.output << '\n';
            return 1;
        }
        f << json;
        auto txt = job.output;
        auto dot = txt.rfind('.');
        auto slash = txt.find_last_of('/');
        if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) txt.erase(dot);
        std::ofstream(txt + ".txt", std::ios::binary) << table;
        out << table;
    }
    if (rep.status == Status::PropertyFailed)
        for (const auto& n : rep.notes) err << "property failed: " << n << '\n';
    return exit_code(rep);
}

}  // namespace grext::cli
