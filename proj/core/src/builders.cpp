#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "grext/algebra.hpp"

namespace grext {

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
    if (n == 0) throw InvalidInput("cyclic group of order 0");
    FiniteGroup g;
    g.table.assign(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
    return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
    const auto ng = static_cast<std::uint32_t>(g.order()), nh = static_cast<std::uint32_t>(h.order());
    FiniteGroup out;
    out.identity = g.identity * nh + h.identity;
    out.table.assign(ng * nh, std::vector<std::uint32_t>(ng * nh));
    for (std::uint32_t a = 0; a < ng; ++a)
        for (std::uint32_t b = 0; b < nh; ++b)
            for (std::uint32_t c = 0; c < ng; ++c)
                for (std::uint32_t d = 0; d < nh; ++d) out.table[a * nh + b][c * nh + d] = g.table[a][c] * nh + h.table[b][d];
    return out;
}

void FiniteGroup::validate() const {
    const std::size_t n = order();
    if (n == 0) throw InvalidInput("group: empty table");
    if (identity != 0) throw InvalidInput("group: element 0 must be the identity");
    for (const auto& row : table) {
        if (row.size() != n) throw InvalidInput("group: table is not square");
        for (auto x : row)
            if (x >= n) throw InvalidInput("group: entry out of range");
    }
    for (std::size_t g = 0; g < n; ++g) {
        if (table[0][g] != g || table[g][0] != g) throw InvalidInput("group: element 0 is not an identity");
        if (std::none_of(table[g].begin(), table[g].end(), [](std::uint32_t x) { return x == 0; }))
            throw InvalidInput("group: element " + std::to_string(g) + " has no inverse");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]]) throw InvalidInput("group: table is not associative");
}

namespace {

FpVector group_multiply(const PrimeField& f, const FiniteGroup& g, const FpVector& x, const FpVector& y) {
    FpVector out(g.order(), 0);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (!x[a]) continue;
        for (std::size_t b = 0; b < y.size(); ++b)
            if (y[b]) {
                auto& o = out[g.table[a][b]];
                o = f.add(o, f.mul(x[a], y[b]));
            }
    }
    return out;
}

std::string power_word(const std::vector<std::uint32_t>& letters) {
    if (letters.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters.size();) {
        std::size_t j = i;
        while (j < letters.size() && letters[j] == letters[i]) ++j;
        s += "u" + std::to_string(letters[i]);
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

FilteredAlgebra algebra_from_data(std::uint32_t p, std::size_t d, std::vector<std::string> names,
                                  std::vector<Combo> table, std::vector<Residue> aug, std::vector<int> weights) {
    AlgebraData data;
    data.p = p;
    data.names = std::move(names);
    data.table = std::move(table);
    data.aug = std::move(aug);
    data.weights = std::move(weights);
    (void)d;
    return FilteredAlgebra::make(data);
}

}  // namespace

GroupAlgebra group_algebra(std::uint32_t p, const FiniteGroup& g) {
    g.validate();
    PrimeField f(p);
    const std::size_t n = g.order();
    std::size_t q = 1;
    while (q < n) q *= p;
    if (q != n) throw NotAPGroup("group of order " + std::to_string(n) + " is not a " + std::to_string(p) + "-group");

    auto unit_vec = [&](std::size_t k) {
        FpVector v(n, 0);
        v[k] = 1;
        return v;
    };
    std::vector<FpVector> aug_gens;  // h - 1
    for (std::size_t h = 1; h < n; ++h) {
        FpVector v = unit_vec(h);
        v[0] = f.neg(1);
        aug_gens.push_back(std::move(v));
    }
    // Powers of the augmentation ideal as spans.
    std::vector<SubspaceBuilder> powers;
    powers.emplace_back(p, n);
    for (const auto& v : aug_gens) powers.back().insert(v);
    while (powers.back().dim() > 0) {
        SubspaceBuilder next(p, n);
        for (const auto& v : powers.back().generators())
            for (const auto& u : aug_gens) next.insert(group_multiply(f, g, v, u));
        powers.push_back(std::move(next));
    }

    struct Chosen {
        FpVector vec;
        int weight;
        std::vector<std::uint32_t> word;
    };
    std::vector<Chosen> chosen{{unit_vec(0), 0, {}}};
    std::vector<std::size_t> prev_level{0};
    for (std::size_t level = 1; level < powers.size(); ++level) {
        SubspaceBuilder sb(p, n);
        for (const auto& v : powers[level].generators()) sb.insert(v);
        std::vector<std::size_t> this_level;
        for (auto idx : prev_level) {
            for (std::size_t h = 1; h < n; ++h) {
                FpVector cand = group_multiply(f, g, chosen[idx].vec, aug_gens[h - 1]);
                if (sb.insert(cand)) {
                    auto word = chosen[idx].word;
                    word.push_back(static_cast<std::uint32_t>(h));
                    this_level.push_back(chosen.size());
                    chosen.push_back({std::move(cand), static_cast<int>(level), std::move(word)});
                }
            }
        }
        prev_level = std::move(this_level);
    }
    if (chosen.size() != n) throw Error("group algebra: adapted basis construction failed");

    std::vector<FpVector> cols;
    std::vector<std::string> names;
    std::vector<int> weights;
    SubspaceBuilder coords(p, n);
    for (const auto& c : chosen) {
        cols.push_back(c.vec);
        names.push_back(power_word(c.word));
        weights.push_back(c.weight);
        coords.insert(c.vec);
    }
    std::vector<Combo> table(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i * n + j] = to_combo(*coords.coordinates(group_multiply(f, g, cols[i], cols[j])));
    std::vector<Residue> aug(n, 0);
    aug[0] = 1;
    FpMatrix elem(p, n, n);
    for (std::size_t h = 0; h < n; ++h) {
        auto c = *coords.coordinates(unit_vec(h));
        for (std::size_t k = 0; k < n; ++k) elem.set(k, h, c[k]);
    }
    return {algebra_from_data(p, n, std::move(names), std::move(table), std::move(aug), std::move(weights)),
            std::move(elem)};
}

Subalgebra subalgebra(const FilteredAlgebra& a, const std::vector<FpVector>& span) {
    const std::uint32_t p = a.p();
    const std::size_t d = a.dim();
    SubspaceBuilder sb(p, d);
    for (const auto& v : span) {
        if (v.size() != d) throw DimensionMismatch("subalgebra: vector length");
        sb.insert(v);
    }
    FpVector one(d, 0);
    one[0] = 1;
    if (!sb.contains(one)) throw InvalidInput("subalgebra: span does not contain the unit");
    const auto& gens = sb.generators();
    for (const auto& x : gens)
        for (const auto& y : gens)
            if (!sb.contains(a.multiply(x, y))) throw InvalidInput("subalgebra: span is not closed under products");

    // Induced filtration: A' ∩ Fil^i A, chosen from the top down.
    const std::size_t k = gens.size();
    FpMatrix g = FpMatrix::from_columns(p, d, gens);
    SubspaceBuilder acc(p, d);
    std::vector<std::pair<FpVector, int>> by_level;
    for (int i = a.max_weight(); i >= 1; --i) {
        std::vector<std::size_t> low;
        for (std::size_t r = 0; r < d; ++r)
            if (a.weight(r) < i) low.push_back(r);
        for (const auto& x : kernel_basis(g.select_rows(low))) {
            FpVector v = g.apply(x);
            if (acc.insert(v)) by_level.push_back({v, i});
        }
    }
    std::vector<std::pair<FpVector, int>> ordered;
    acc.insert(one);
    ordered.push_back({one, 0});
    for (const auto& v : gens)
        if (acc.insert(v)) ordered.push_back({v, 0});
    std::reverse(by_level.begin(), by_level.end());
    std::stable_sort(by_level.begin(), by_level.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    for (auto& e : by_level) ordered.push_back(std::move(e));
    if (ordered.size() != k) throw Error("subalgebra: induced filtration basis construction failed");

    SubspaceBuilder coords(p, d);
    std::vector<FpVector> cols;
    std::vector<std::string> names;
    std::vector<int> weights;
    for (std::size_t c = 0; c < k; ++c) {
        const auto& v = ordered[c].first;
        coords.insert(v);
        cols.push_back(v);
        weights.push_back(ordered[c].second);
        auto nz = std::count_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
        auto pos = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; }) - v.begin();
        names.push_back(c == 0 ? "1" : (nz == 1 && v[pos] == 1 ? a.name(pos) : "v" + std::to_string(c)));
    }
    std::vector<Combo> table(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) table[i * k + j] = to_combo(*coords.coordinates(a.multiply(cols[i], cols[j])));
    std::vector<Residue> aug;
    for (const auto& v : cols) {
        Residue s = 0;
        for (std::size_t r = 0; r < d; ++r) s = a.field().add(s, a.field().mul(a.aug(r), v[r]));
        aug.push_back(s);
    }
    auto sub = algebra_from_data(p, k, std::move(names), std::move(table), std::move(aug), std::move(weights));
    AlgebraMorphism inc(sub, a, FpMatrix::from_columns(p, d, cols));
    return {std::move(sub), std::move(inc)};
}

Subalgebra group_subalgebra(const GroupAlgebra& ga, const std::vector<std::uint32_t>& elements) {
    std::vector<FpVector> span;
    for (auto h : elements) {
        if (h >= ga.element_coords.cols()) throw InvalidInput("subgroup: element out of range");
        span.push_back(ga.element_coords.column(h));
    }
    return subalgebra(ga.algebra, span);
}

AlgebraMorphism factor_inclusion(const Subalgebra& outer, const Subalgebra& inner) {
    const auto& big = outer.inclusion.matrix();
    const auto& small = inner.inclusion.matrix();
    std::vector<FpVector> cols;
    for (std::size_t c = 0; c < small.cols(); ++c) {
        auto x = solve(big, small.column(c));
        if (!x) throw MorphismInvalid("factor_inclusion: inner image is not inside the outer subalgebra");
        cols.push_back(std::move(*x));
    }
    return AlgebraMorphism(inner.algebra, outer.algebra, FpMatrix::from_columns(big.p(), big.cols(), cols));
}

// ---- monomial models ------------------------------------------------------

namespace {

std::string default_var(std::size_t i, std::size_t d) {
    static const char* letters[] = {"x", "y", "z", "w"};
    return d <= 4 ? letters[i] : "x" + std::to_string(i + 1);
}

std::string monomial_name(const std::vector<int>& e, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        s += vars[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

}  // namespace

GradedAlgebra skew_polynomial_algebra(const SkewPolynomialSpec& spec) {
    const std::size_t d = spec.degrees.size();
    PrimeField f(spec.p);
    for (int deg : spec.degrees)
        if (deg < 1) throw InvalidInput("degrees: variables must have positive degree");
    auto vars = spec.variable_names;
    if (vars.size() != d) {
        vars.clear();
        for (std::size_t i = 0; i < d; ++i) vars.push_back(default_var(i, d));
    }
    auto killed = [&](const std::vector<int>& e) {
        for (const auto& z : spec.zero_monomials) {
            if (z.size() != d) throw InvalidInput("zero_monomials: exponent vector length");
            bool div = true;
            for (std::size_t i = 0; i < d && div; ++i) div = e[i] >= z[i];
            if (div) return true;
        }
        return false;
    };
    auto degree = [&](const std::vector<int>& e) {
        long s = 0;
        for (std::size_t i = 0; i < d; ++i) s += static_cast<long>(e[i]) * spec.degrees[i];
        return s;
    };
    // Per-variable exponent bound.
    std::vector<int> cap(d);
    for (std::size_t i = 0; i < d; ++i) {
        long c = spec.truncation == GradedAlgebra::kExact ? -1 : spec.truncation / spec.degrees[i];
        for (const auto& z : spec.zero_monomials) {
            bool pure = true;
            for (std::size_t k = 0; k < d; ++k)
                if (k != i && z[k] != 0) pure = false;
            if (pure && z[i] > 0 && (c < 0 || z[i] - 1 < c)) c = z[i] - 1;
        }
        if (c < 0) throw InvalidInput("algebra would be infinite-dimensional; give a truncation degree");
        cap[i] = static_cast<int>(c);
    }
    std::vector<std::vector<int>> monos;
    std::vector<int> e(d, 0);
    for (;;) {
        if (!killed(e) && degree(e) <= spec.truncation) monos.push_back(e);
        std::size_t i = 0;
        while (i < d && e[i] == cap[i]) e[i++] = 0;
        if (i == d) break;
        ++e[i];
    }
    std::stable_sort(monos.begin(), monos.end(), [&](const auto& x, const auto& y) {
        if (degree(x) != degree(y)) return degree(x) < degree(y);
        return x > y;
    });
    std::map<std::vector<int>, std::uint32_t> index;
    for (std::size_t k = 0; k < monos.size(); ++k) index[monos[k]] = static_cast<std::uint32_t>(k);

    auto q = [&](std::size_t i, std::size_t j) { return spec.q.empty() ? 1 : spec.q[i][j]; };
    if (!spec.q.empty()) {
        if (spec.q.size() != d) throw InvalidInput("q: matrix size");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (q(i, j) != q(j, i) || (q(i, j) != 1 && q(i, j) != -1) || (i == j && q(i, i) != 1))
                    throw InvalidInput("q: must be symmetric with entries ±1 and ones on the diagonal");
    }
    const std::size_t n = monos.size();
    std::vector<Combo> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<int> c(d);
            int sign = 1;
            for (std::size_t i = 0; i < d; ++i) {
                c[i] = monos[a][i] + monos[b][i];
                for (std::size_t j = 0; j < i; ++j)
                    if (q(i, j) == -1 && (monos[a][i] * monos[b][j]) % 2) sign = -sign;
            }
            auto it = index.find(c);
            if (it != index.end()) table[a * n + b] = {{it->second, f.from_int(sign)}};
        }
    std::vector<std::string> names;
    std::vector<int> weights;
    std::vector<Residue> aug(n, 0);
    aug[0] = 1;
    for (const auto& m : monos) {
        names.push_back(monomial_name(m, vars));
        weights.push_back(static_cast<int>(degree(m)));
    }
    return GradedAlgebra(algebra_from_data(spec.p, n, std::move(names), std::move(table), std::move(aug), std::move(weights)),
                         spec.truncation);
}

GradedAlgebra truncated_polynomial(std::uint32_t p, int n, int degree) {
    if (n < 1) throw InvalidInput("truncated_polynomial: exponent must be positive");
    SkewPolynomialSpec s;
    s.p = p;
    s.degrees = {degree};
    s.zero_monomials = {{n}};
    return skew_polynomial_algebra(s);
}

GradedAlgebra polynomial_model(std::uint32_t p, const std::vector<int>& degrees, int t) {
    SkewPolynomialSpec s;
    s.p = p;
    s.degrees = degrees;
    s.truncation = t;
    auto g = skew_polynomial_algebra(s);
    return GradedAlgebra(g.algebra(), t, degrees);
}

std::vector<std::vector<int>> polynomial_exponents(const std::vector<int>& degrees, int t) {
    const std::size_t d = degrees.size();
    auto degree = [&](const std::vector<int>& e) {
        long s = 0;
        for (std::size_t i = 0; i < d; ++i) s += static_cast<long>(e[i]) * degrees[i];
        return s;
    };
    std::vector<std::vector<int>> monos;
    std::vector<int> e(d, 0);
    for (;;) {
        if (degree(e) <= t) monos.push_back(e);
        std::size_t i = 0;
        while (i < d && e[i] == t / degrees[i]) e[i++] = 0;
        if (i == d) break;
        ++e[i];
    }
    std::stable_sort(monos.begin(), monos.end(), [&](const auto& x, const auto& y) {
        if (degree(x) != degree(y)) return degree(x) < degree(y);
        return x > y;
    });
    return monos;
}

AlgebraMorphism polynomial_morphism(const GradedAlgebra& source, const GradedAlgebra& target, const FpMatrix& c) {
    if (!source.polynomial_degrees() || !target.polynomial_degrees())
        throw InvalidInput("polynomial_morphism: both algebras must be polynomial models");
    if (source.exact_through() != target.exact_through())
        throw InvalidInput("polynomial_morphism: truncations differ");
    const auto& ds = *source.polynomial_degrees();
    const auto& dt = *target.polynomial_degrees();
    if (c.rows() != dt.size() || c.cols() != ds.size()) throw DimensionMismatch("polynomial_morphism: matrix shape");
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < dt.size(); ++j)
            if (c.at(j, i) && ds[i] != dt[j]) throw MorphismInvalid("polynomial_morphism: image not homogeneous");
    const int t = source.exact_through();
    auto src = polynomial_exponents(ds, t);
    auto tgt = polynomial_exponents(dt, t);
    const auto& a = target.algebra();
    std::map<std::vector<int>, std::size_t> where;
    for (std::size_t k = 0; k < tgt.size(); ++k) where[tgt[k]] = k;
    std::vector<FpVector> var_images;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        FpVector v(a.dim(), 0);
        for (std::size_t j = 0; j < dt.size(); ++j) {
            if (!c.at(j, i)) continue;
            std::vector<int> e(dt.size(), 0);
            e[j] = 1;
            auto it = where.find(e);
            if (it == where.end()) throw TruncationExceeded("polynomial_morphism: variable above truncation");
            v[it->second] = c.at(j, i);
        }
        var_images.push_back(std::move(v));
    }
    std::vector<FpVector> cols;
    for (const auto& e : src) {
        FpVector v(a.dim(), 0);
        v[0] = 1;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) v = a.multiply(v, var_images[i]);
        cols.push_back(std::move(v));
    }
    return AlgebraMorphism(source.algebra(), a, FpMatrix::from_columns(a.p(), a.dim(), cols));
}

GradedAlgebra exterior_algebra(std::uint32_t p, int d) {
    SkewPolynomialSpec s;
    s.p = p;
    s.degrees.assign(d, 1);
    s.q.assign(d, std::vector<int>(d, -1));
    for (int i = 0; i < d; ++i) {
        s.q[i][i] = 1;
        std::vector<int> z(d, 0);
        z[i] = 2;
        s.zero_monomials.push_back(z);
    }
    return skew_polynomial_algebra(s);
}

GradedAlgebra word_algebra(std::uint32_t p, const std::vector<int>& degrees,
                           const std::vector<std::vector<int>>& forbidden, int truncation) {
    const std::size_t d = degrees.size();
    for (int deg : degrees)
        if (deg < 1) throw InvalidInput("degrees: letters must have positive degree");
    using Word = std::vector<int>;
    auto avoids = [&](const Word& w) {
        for (const auto& f : forbidden)
            if (!f.empty() && std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end()) return false;
        return true;
    };
    auto deg = [&](const Word& w) {
        int s = 0;
        for (int x : w) s += degrees[x];
        return s;
    };
    std::vector<Word> words{{}};
    for (std::size_t front = 0; front < words.size(); ++front) {
        for (std::size_t x = 0; x < d; ++x) {
            Word w = words[front];
            w.push_back(static_cast<int>(x));
            if (static_cast<long>(deg(words[front])) + degrees[x] > truncation || !avoids(w)) continue;
            words.push_back(std::move(w));
            if (words.size() > 4096) throw InvalidInput("word algebra exceeds 4096 basis words");
        }
    }
    std::stable_sort(words.begin(), words.end(), [&](const Word& a, const Word& b) {
        if (deg(a) != deg(b)) return deg(a) < deg(b);
        return a < b;
    });
    std::map<Word, std::uint32_t> index;
    for (std::size_t k = 0; k < words.size(); ++k) index[words[k]] = static_cast<std::uint32_t>(k);
    const std::size_t n = words.size();
    std::vector<Combo> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Word c = words[a];
            c.insert(c.end(), words[b].begin(), words[b].end());
            auto it = index.find(c);
            if (it != index.end()) table[a * n + b] = {{it->second, 1}};
        }
    std::vector<std::string> names;
    std::vector<int> weights;
    std::vector<Residue> aug(n, 0);
    aug[0] = 1;
    for (const auto& w : words) {
        std::string s;
        for (int x : w) s += default_var(static_cast<std::size_t>(x), std::max<std::size_t>(d, 1));
        names.push_back(s.empty() ? "1" : s);
        weights.push_back(deg(w));
    }
    return GradedAlgebra(algebra_from_data(p, n, std::move(names), std::move(table), std::move(aug), std::move(weights)),
                         truncation);
}

FilteredAlgebra random_filtered(const FilteredAlgebra& a, std::uint64_t seed, int weight_bumps) {
    std::mt19937_64 rng(seed);
    const std::size_t d = a.dim();
    std::vector<int> w = a.weights();
    auto multiplicative = [&](const std::vector<int>& ww) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (const auto& t : a.product(i, j))
                    if (ww[t.index] < ww[i] + ww[j]) return false;
        return true;
    };
    for (int b = 0; b < weight_bumps && d > 1; ++b) {
        std::size_t k = 1 + rng() % (d - 1);
        if (a.aug(k) != 0) continue;
        auto trial = w;
        ++trial[k];
        if (multiplicative(trial)) w = std::move(trial);
    }
    FpMatrix basis = FpMatrix::identity(a.p(), d);
    for (std::size_t i = 1; i < d; ++i)
        for (std::size_t k = 1; k < d; ++k)
            if (w[k] > w[i] && rng() % 2) basis.set(k, i, static_cast<Residue>(rng() % a.p()));
    return rebase(a, basis, w, a.names());
}

}  // namespace grext
