#include "grext/lazard.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "grext/algebra.hpp"
#include "grext/minres.hpp"

namespace grext {

// ---- Z/p^R ----------------------------------------------------------------

ResidueRing::ResidueRing(std::uint32_t p, int precision) : p_(p), r_(precision), mod_(1) {
    if (!is_prime(p)) throw InvalidInput("ResidueRing: p must be prime");
    if (precision < 1) throw InvalidInput("ResidueRing: precision must be positive");
    for (int i = 0; i < precision; ++i) {
        mod_ *= p;
        if (mod_ >= (std::int64_t{1} << 31)) throw InvalidInput("ResidueRing: p^R must stay below 2^31");
    }
}

int ResidueRing::val(std::int64_t x) const {
    x = reduce(x);
    if (x == 0) return r_;
    int v = 0;
    while (x % p_ == 0) {
        x /= p_;
        ++v;
    }
    return v;
}

std::int64_t ResidueRing::inv(std::int64_t unit) const {
    unit = reduce(unit);
    if (!is_unit(unit)) throw InvalidInput("ResidueRing: not a unit");
    // Extended Euclid on (unit, p^R).
    std::int64_t a = unit, b = mod_, x = 1, y = 0;
    while (b) {
        std::int64_t q = a / b;
        a -= q * b;
        std::swap(a, b);
        x -= q * y;
        std::swap(x, y);
    }
    return reduce(x);
}

std::int64_t ResidueRing::p_power(int e) const {
    if (e >= r_) return 0;
    std::int64_t x = 1;
    for (int i = 0; i < e; ++i) x *= p_;
    return x;
}

std::int64_t ResidueRing::divide_p_power(std::int64_t x, int e) const {
    x = reduce(x);
    for (int i = 0; i < e; ++i) x /= p_;
    return x;
}

// ---- matrices -------------------------------------------------------------

PMatrix PMatrix::identity(std::size_t size) {
    PMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m.at(i, i) = 1;
    return m;
}

PMatrix PMatrix::from_rows(const ResidueRing& ring, const std::vector<std::vector<std::int64_t>>& rows) {
    PMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw DimensionMismatch("PMatrix: not square");
        for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = ring.reduce(rows[i][j]);
    }
    return m;
}

PMatrix multiply(const ResidueRing& ring, const PMatrix& x, const PMatrix& y) {
    if (x.n != y.n) throw DimensionMismatch("PMatrix multiply");
    PMatrix z(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            std::int64_t a = x.at(i, k);
            if (!a) continue;
            for (std::size_t j = 0; j < x.n; ++j) z.at(i, j) = ring.add(z.at(i, j), ring.mul(a, y.at(k, j)));
        }
    return z;
}

PMatrix inverse(const ResidueRing& ring, const PMatrix& x) {
    const std::size_t n = x.n;
    PMatrix a = x, b = PMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && !ring.is_unit(a.at(piv, c))) ++piv;
        if (piv == n) throw NotInSubgroup("matrix is not invertible mod p");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a.at(c, j), a.at(piv, j));
            std::swap(b.at(c, j), b.at(piv, j));
        }
        std::int64_t s = ring.inv(a.at(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            a.at(c, j) = ring.mul(a.at(c, j), s);
            b.at(c, j) = ring.mul(b.at(c, j), s);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || !a.at(i, c)) continue;
            std::int64_t f = a.at(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) = ring.sub(a.at(i, j), ring.mul(f, a.at(c, j)));
                b.at(i, j) = ring.sub(b.at(i, j), ring.mul(f, b.at(c, j)));
            }
        }
    }
    return b;
}

PMatrix power(const ResidueRing& ring, const PMatrix& x, std::uint64_t k) {
    PMatrix result = PMatrix::identity(x.n), base = x;
    while (k) {
        if (k & 1) result = multiply(ring, result, base);
        k >>= 1;
        if (k) base = multiply(ring, base, base);
    }
    return result;
}

PMatrix commutator(const ResidueRing& ring, const PMatrix& x, const PMatrix& y) {
    return multiply(ring, multiply(ring, inverse(ring, x), inverse(ring, y)), multiply(ring, x, y));
}

std::string to_string(const PMatrix& x) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < x.n; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < x.n; ++j) os << (j ? "," : "") << x.at(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

TriangularFactors triangular_factors(const ResidueRing& ring, const PMatrix& g) {
    const std::size_t n = g.n;
    PMatrix a = g;
    TriangularFactors f{PMatrix::identity(n), PMatrix(n), PMatrix::identity(n)};
    for (std::size_t k = 0; k < n; ++k) {
        std::int64_t d = a.at(k, k);
        if (!ring.is_unit(d)) throw NotInSubgroup("triangular factorization: pivot " + std::to_string(k) + " is not a unit");
        f.diag.at(k, k) = d;
        std::int64_t di = ring.inv(d);
        for (std::size_t i = k + 1; i < n; ++i) f.lower.at(i, k) = ring.mul(a.at(i, k), di);
        for (std::size_t j = k + 1; j < n; ++j) f.upper.at(k, j) = ring.mul(di, a.at(k, j));
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = ring.sub(a.at(i, j), ring.mul(f.lower.at(i, k), a.at(k, j)));
    }
    return f;
}

// ---- instances ------------------------------------------------------------

namespace {

// The matrix whose entries carry the valuation: g - 1, or the factor coordinates.
PMatrix valuation_entries(const PValuedGroupInstance& g, const PMatrix& x) {
    const auto& ring = g.ring;
    PMatrix e(x.n);
    if (g.kind == OmegaKind::Chart) {
        auto f = triangular_factors(ring, x);
        for (std::size_t i = 0; i < x.n; ++i)
            for (std::size_t j = 0; j < x.n; ++j)
                e.at(i, j) = i > j ? f.lower.at(i, j) : i < j ? f.upper.at(i, j) : ring.sub(f.diag.at(i, i), 1);
    } else {
        for (std::size_t i = 0; i < x.n; ++i)
            for (std::size_t j = 0; j < x.n; ++j) e.at(i, j) = ring.sub(x.at(i, j), i == j ? 1 : 0);
    }
    return e;
}

bool saturated_degrees(const PValuedGroupInstance& g) {
    const auto p = static_cast<int>(g.p());
    for (std::size_t k = 0; k < g.coords.size(); ++k)
        if (g.degree(k) * (p - 1) > p) return false;
    return true;
}

void require_odd(std::uint32_t p) {
    if (p == 2) throw InvalidInput("group instances require p > 2");
}

}  // namespace

bool PValuedGroupInstance::contains(const PMatrix& g) const {
    if (g.n != n) return false;
    std::vector<char> free(n * n, 0);
    for (const auto& c : coords) {
        free[c.i * n + c.j] = 1;
        std::int64_t x = ring.sub(g.at(c.i, c.j), c.i == c.j ? 1 : 0);
        if (ring.val(x) < c.level) return false;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!free[i * n + j] && g.at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

OmegaValue PValuedGroupInstance::omega(const PMatrix& g) const {
    auto e = valuation_entries(*this, g);
    const int big = std::numeric_limits<int>::max();
    int exact_min = big, inexact_min = big;
    for (const auto& c : coords) {
        int v = ring.val(e.at(c.i, c.j));
        int lb = v - c.shift;
        if (v < ring.precision())
            exact_min = std::min(exact_min, lb);
        else
            inexact_min = std::min(inexact_min, lb);
    }
    OmegaValue out;
    out.identity = exact_min == big;
    int m = std::min(exact_min, inexact_min);
    out.value = m == big ? big : offset + m;
    out.exact = !out.identity && exact_min <= inexact_min;
    return out;
}

FpVector PValuedGroupInstance::leading(const PMatrix& g, int v) const {
    FpVector out(coords.size(), 0);
    for (std::size_t k = 0; k < coords.size(); ++k) {
        const auto& c = coords[k];
        int t = v - offset + c.shift;
        if (t > ring.precision() - 1) throw PrecisionExhausted("leading term at level " + std::to_string(v) + " needs p^" +
                                                               std::to_string(t + 1));
        std::int64_t x = ring.sub(g.at(c.i, c.j), c.i == c.j ? 1 : 0);
        if (ring.val(x) < t) throw InvalidInput("leading: element has valuation below " + std::to_string(v));
        out[k] = static_cast<Residue>(ring.divide_p_power(x, t) % ring.p());
    }
    return out;
}

PMatrix PValuedGroupInstance::sample(std::mt19937_64& rng) const {
    PMatrix g = PMatrix::identity(n);
    for (const auto& c : coords) {
        std::uniform_int_distribution<int> extra(0, std::max(0, ring.precision() - c.level));
        std::uniform_int_distribution<std::int64_t> unit(0, ring.modulus() - 1);
        std::int64_t x = ring.mul(ring.p_power(c.level + extra(rng)), unit(rng));
        g.at(c.i, c.j) = ring.add(g.at(c.i, c.j), x);
    }
    return g;
}

bool PValuedGroupInstance::same_group(const PValuedGroupInstance& o) const {
    if (n != o.n || ring.p() != o.ring.p() || ring.precision() != o.ring.precision()) return false;
    auto key = [](std::vector<Coordinate> v) {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
        for (auto& c : v) c.shift = 0;
        return v;
    };
    return key(coords) == key(o.coords);
}

void set_perturbation(PValuedGroupInstance& g, int num, int den) {
    if (den < 1 || num < 0) throw InvalidInput("perturbation must be a non-negative fraction");
    const int p = static_cast<int>(g.p());
    for (std::size_t k = 0; k < g.coords.size(); ++k)
        if ((den * g.degree(k) - num) * (p - 1) <= den)
            throw InvalidInput("perturbation too large: ω_C must stay above 1/(p-1)");
    g.denominator = den;
    g.perturbation = num;
}

PValuedGroupInstance profile_group(std::string family, std::uint32_t p, int precision, std::size_t n,
                                   std::vector<Coordinate> coords, int offset) {
    require_odd(p);
    PValuedGroupInstance g;
    g.family = std::move(family);
    g.ring = ResidueRing(p, precision);
    g.n = n;
    g.coords = std::move(coords);
    g.offset = offset;
    for (const auto& c : g.coords) {
        if (c.i >= n || c.j >= n) throw InvalidInput("profile_group: coordinate out of range");
        if (c.level < 0 || c.level > precision - 1) throw PrecisionExhausted("profile_group: level beyond precision");
        PMatrix b = PMatrix::identity(n);
        b.at(c.i, c.j) = g.ring.add(b.at(c.i, c.j), g.ring.p_power(c.level));
        g.basis.push_back(std::move(b));
    }
    g.saturated = saturated_degrees(g);
    return g;
}

PValuedGroupInstance additive_group(std::uint32_t p, int d, int precision) {
    if (d < 1) throw InvalidInput("additive_group: rank must be positive");
    std::vector<Coordinate> cs;
    for (int j = 1; j <= d; ++j) cs.push_back({0, static_cast<std::size_t>(j), 0, 0});
    return profile_group("additive", p, precision, static_cast<std::size_t>(d) + 1, std::move(cs), 1);
}

PValuedGroupInstance congruence_group(std::uint32_t p, int n, int r, int precision, OmegaKind kind) {
    if (n < 1 || r < 1) throw InvalidInput("congruence_group: need n >= 1 and r >= 1");
    if (precision <= r) throw PrecisionExhausted("congruence_group: precision must exceed the level");
    std::vector<Coordinate> cs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cs.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), r, 0});
    // The chart valuation 1 + min v(x) on coordinates x = (factor - 1) / p^r.
    auto g = profile_group("gl_n", p, precision, static_cast<std::size_t>(n), std::move(cs),
                           kind == OmegaKind::Chart ? 1 - r : 0);
    g.kind = kind;
    return g;
}

PValuedGroupInstance heisenberg_group(std::uint32_t p, int r, int precision) {
    if (r < 1) throw InvalidInput("heisenberg_group: level must be positive");
    return profile_group("heisenberg", p, precision, 3, {{0, 1, r, 0}, {1, 2, r, 0}, {0, 2, r, 0}}, 0);
}

// ---- axioms ---------------------------------------------------------------

PValuationReport pvaluation_check(const PValuedGroupInstance& g, std::size_t sample_count, std::uint64_t seed) {
    PValuationReport rep;
    std::mt19937_64 rng(seed);
    const auto& ring = g.ring;
    const int p = static_cast<int>(g.p());
    std::optional<PValuedGroupInstance> pth;
    if (g.saturated) {
        try {
            pth = pm_power_subgroup(g, 1);
        } catch (const PrecisionExhausted&) {
        }
    }
    auto witness = [](const char* what, const PMatrix& x, const PMatrix& y) {
        return std::string(what) + " at x = " + to_string(x) + ", y = " + to_string(y);
    };
    // At least bound, or refused.
    enum class Outcome { Holds, Fails, Refused };
    auto at_least = [](const OmegaValue& w, int bound) {
        if (w.identity || w.value >= bound) return Outcome::Holds;
        return w.exact ? Outcome::Fails : Outcome::Refused;
    };
    for (std::size_t s = 0; s < sample_count; ++s) {
        auto x = g.sample(rng), y = g.sample(rng);
        ++rep.samples;
        auto wx = g.omega(x), wy = g.omega(y);
        if (wx.identity || wy.identity || !wx.exact || !wy.exact) {
            ++rep.skipped;
            continue;
        }
        switch (at_least(g.omega(multiply(ring, inverse(ring, x), y)), std::min(wx.value, wy.value))) {
            case Outcome::Holds: ++rep.tested_min; break;
            case Outcome::Fails: rep.violations.push_back(witness("ω(x^-1 y) < min", x, y)); break;
            case Outcome::Refused: ++rep.skipped; break;
        }
        switch (at_least(g.omega(commutator(ring, x, y)), wx.value + wy.value)) {
            case Outcome::Holds: ++rep.tested_commutator; break;
            case Outcome::Fails: rep.violations.push_back(witness("ω([x,y]) < ω(x)+ω(y)", x, y)); break;
            case Outcome::Refused: ++rep.skipped; break;
        }
        auto wp = g.omega(power(ring, x, g.p()));
        if (wp.identity || !wp.exact) {
            ++rep.skipped;
        } else if (wp.value != wx.value + 1) {
            rep.violations.push_back(witness("ω(x^p) != ω(x)+1", x, y));
        } else {
            ++rep.tested_power;
        }
        if (g.saturated && wx.value * (p - 1) > p) {
            if (!pth) {
                ++rep.skipped;
            } else if (pth->contains(x)) {
                ++rep.tested_saturation;
            } else {
                rep.violations.push_back(witness("ω(x) > p/(p-1) but x is not a p-th power", x, y));
            }
        }
    }
    return rep;
}

ChartComparison chart_comparison(const PValuedGroupInstance& entry, const PValuedGroupInstance& chart,
                                 std::size_t sample_count, std::uint64_t seed) {
    if (!entry.same_group(chart)) throw InvalidInput("chart_comparison: different groups");
    ChartComparison out;
    out.constant = chart.offset - entry.offset;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < sample_count; ++s) {
        auto x = entry.sample(rng);
        auto a = entry.omega(x), b = chart.omega(x);
        if (a.identity || b.identity || !a.exact || !b.exact) continue;
        ++out.compared;
        if (b.value - a.value != out.constant) ++out.discrepancies;
    }
    return out;
}

// ---- gr N -----------------------------------------------------------------

namespace {

// F_p-basis of gr_v: the elements π^k n_l = n_l^{p^k} with d_l + k = v.
struct LevelBasis {
    std::vector<std::size_t> index;
    std::vector<int> pi_power;
    FpMatrix leading;  // columns
};

LevelBasis level_basis(const PValuedGroupInstance& g, int v) {
    LevelBasis b;
    std::vector<FpVector> cols;
    for (std::size_t l = 0; l < g.rank(); ++l) {
        int k = v - g.degree(l);
        if (k < 0) continue;
        std::uint64_t e = 1;
        for (int i = 0; i < k; ++i) e *= g.p();
        cols.push_back(g.leading(power(g.ring, g.basis[l], e), v));
        b.index.push_back(l);
        b.pi_power.push_back(k);
    }
    b.leading = FpMatrix::from_columns(g.p(), g.coords.size(), cols);
    return b;
}

std::string coordinate_label(const Coordinate& c) { return "n" + std::to_string(c.i + 1) + std::to_string(c.j + 1); }

}  // namespace

bool GradedGroupModule::bracket_vanishes() const {
    for (const auto& [ij, v] : bracket)
        for (auto x : v)
            if (x) return false;
    return true;
}

bool GradedGroupModule::abelian() const { return perturbation > 0 || (bracket_known && bracket_vanishes()); }

GradedGroupModule graded_group(const PValuedGroupInstance& g) {
    GradedGroupModule m;
    m.p = g.p();
    m.denominator = g.denominator;
    m.perturbation = g.perturbation;
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (std::size_t k = 0; k < g.rank(); ++k) {
        auto w = g.omega(g.basis[k]);
        if (!w.exact || w.value != g.degree(k))
            throw InvalidInput("graded_group: basis element " + std::to_string(k) + " does not have its declared valuation");
        m.labels.push_back(coordinate_label(g.coords[k]));
        m.degrees.push_back(g.degree(k));
        m.scaled_degrees.push_back(g.scaled_degree(k));
        lo = std::min(lo, g.degree(k));
        hi = std::max(hi, g.degree(k));
    }
    for (int v = lo; v <= hi; ++v) {
        auto b = level_basis(g, v);
        if (rank(b.leading) != b.index.size())
            throw InvalidInput("graded_group: basis not independent at precision in degree " + std::to_string(v));
    }
    for (std::size_t i = 0; i < g.rank(); ++i)
        for (std::size_t j = i + 1; j < g.rank(); ++j) {
            int v = g.degree(i) + g.degree(j);
            auto c = commutator(g.ring, g.basis[i], g.basis[j]);
            FpVector coeff(g.rank(), 0);
            try {
                auto w = g.omega(c);
                if (!w.identity) {
                    auto b = level_basis(g, v);
                    auto x = solve(b.leading, g.leading(c, v));
                    if (!x) throw InvalidInput("graded_group: commutator outside the span of the basis");
                    for (std::size_t t = 0; t < b.index.size(); ++t) coeff[b.index[t]] = (*x)[t];
                }
            } catch (const PrecisionExhausted&) {
                m.bracket_known = false;
                continue;
            }
            m.bracket[{i, j}] = std::move(coeff);
        }
    return m;
}

PValuedGroupInstance pm_power_subgroup(const PValuedGroupInstance& g, int m) {
    if (m < 0) throw InvalidInput("pm_power_subgroup: m must be non-negative");
    if (!g.saturated && g.power == 0) throw InvalidInput("pm_power_subgroup: group is not saturated");
    PValuedGroupInstance h = g;
    std::uint64_t e = 1;
    for (int i = 0; i < m; ++i) e *= g.p();
    for (std::size_t k = 0; k < h.coords.size(); ++k) {
        auto& c = h.coords[k];
        c.level += m;
        if (c.level > g.ring.precision() - 1)
            throw PrecisionExhausted("pm_power_subgroup: level " + std::to_string(c.level) + " at precision " +
                                     std::to_string(g.ring.precision()));
        h.basis[k] = power(g.ring, g.basis[k], e);
        auto w = h.omega(h.basis[k]);
        if (!h.contains(h.basis[k]) || !w.exact || w.value != h.degree(k))
            throw InvalidInput("pm_power_subgroup: p^m-th power of a basis element leaves the expected subgroup");
    }
    h.power = g.power + m;
    h.saturated = m == 0 && g.saturated;
    return h;
}

GradedInclusion graded_inclusion(const PValuedGroupInstance& sub, const PValuedGroupInstance& ambient) {
    if (sub.n != ambient.n || sub.offset != ambient.offset || sub.kind != ambient.kind)
        throw InvalidInput("graded_inclusion: valuations are not compatible");
    for (const auto& c : sub.coords) {
        auto it = std::find_if(ambient.coords.begin(), ambient.coords.end(),
                               [&](const auto& a) { return a.i == c.i && a.j == c.j; });
        if (it == ambient.coords.end() || it->shift != c.shift || it->level > c.level)
            throw NotInSubgroup("graded_inclusion: not a subgroup with the restricted valuation");
    }
    const std::uint32_t p = ambient.p();
    GradedInclusion out{FpMatrix(p, ambient.rank(), sub.rank()),
                        std::vector<std::vector<int>>(ambient.rank(), std::vector<int>(sub.rank(), -1)),
                        FpMatrix(p, ambient.rank(), sub.rank())};
    for (std::size_t i = 0; i < sub.rank(); ++i) {
        int v = sub.degree(i);
        auto w = ambient.omega(sub.basis[i]);
        if (!w.exact || w.value != v) throw InvalidInput("graded_inclusion: valuation is not the restriction");
        auto b = level_basis(ambient, v);
        auto x = solve(b.leading, ambient.leading(sub.basis[i], v));
        if (!x) throw InvalidInput("graded_inclusion: image outside gr of the ambient group");
        for (std::size_t t = 0; t < b.index.size(); ++t) {
            std::size_t l = b.index[t];
            out.full.set(l, i, (*x)[t]);
            out.pi_power[l][i] = b.pi_power[t];
            if (b.pi_power[t] == 0) out.quotient.set(l, i, (*x)[t]);
        }
    }
    return out;
}

FpMatrix pi_cokernel_restriction(const PValuedGroupInstance& h) {
    return graded_inclusion(pm_power_subgroup(h, 1), h).quotient;
}

std::vector<FpMatrix> graded_ext_restrictions(const PValuedGroupInstance& sub, const PValuedGroupInstance& ambient,
                                              int n_max) {
    auto inc = graded_inclusion(sub, ambient);
    std::vector<int> ds, da;
    for (std::size_t k = 0; k < sub.rank(); ++k) ds.push_back(sub.scaled_degree(k));
    for (std::size_t k = 0; k < ambient.rank(); ++k) da.push_back(ambient.scaled_degree(k));
    int t = std::max(*std::max_element(ds.begin(), ds.end()), *std::max_element(da.begin(), da.end()));
    auto src = polynomial_model(sub.p(), ds, t);
    auto tgt = polynomial_model(ambient.p(), da, t);
    auto f = polynomial_morphism(src, tgt, inc.quotient);
    int d_max = 0;
    for (int d : ds) d_max += d;
    for (int d : da) d_max += d;
    auto rs = minimal_resolution(src, n_max + 1, d_max);
    auto rt = minimal_resolution(tgt, n_max + 1, d_max);
    auto k = trivial_module(tgt.algebra());
    std::vector<FpMatrix> out;
    for (int n = 1; n <= n_max; ++n) out.push_back(ext_restriction_via_minres(rs, rt, f, k, n));
    return out;
}

}  // namespace grext
