#include "grext/algebra.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace grext {

Combo to_combo(std::span<const Residue> dense) {
    Combo c;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (dense[i]) c.push_back({static_cast<std::uint32_t>(i), dense[i]});
    return c;
}

FpVector to_dense(const Combo& c, std::size_t length) {
    FpVector v(length, 0);
    for (const auto& t : c) v[t.index] = t.coeff;
    return v;
}

namespace {

Combo normalize(const PrimeField& f, const Combo& in, std::size_t length, const char* what) {
    std::map<std::uint32_t, Residue> acc;
    for (const auto& t : in) {
        if (t.index >= length)
            throw InvalidInput(std::string(what) + ": basis index " + std::to_string(t.index) + " out of range");
        acc[t.index] = f.add(acc[t.index], t.coeff % f.p());
    }
    Combo out;
    for (auto [k, c] : acc)
        if (c) out.push_back({k, c});
    return out;
}

// out += c * combo
void axpy(const PrimeField& f, FpVector& out, Residue c, const Combo& combo) {
    if (!c) return;
    for (const auto& t : combo) out[t.index] = f.add(out[t.index], f.mul(c, t.coeff));
}

FpVector raw_multiply(const PrimeField& f, std::size_t d, const std::vector<Combo>& table,
                      std::span<const Residue> x, std::span<const Residue> y) {
    FpVector out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (!x[i]) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (!y[j]) continue;
            axpy(f, out, f.mul(x[i], y[j]), table[i * d + j]);
        }
    }
    return out;
}

Residue raw_aug(const PrimeField& f, const std::vector<Residue>& aug, std::span<const Residue> x) {
    Residue s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = f.add(s, f.mul(aug[i], x[i]));
    return s;
}

std::string term_name(const std::vector<std::string>& names, std::size_t i) {
    return i < names.size() && !names[i].empty() ? names[i] : "b" + std::to_string(i);
}

void check_unit(const PrimeField& f, std::size_t d, std::size_t unit, const std::vector<Combo>& table,
                const std::vector<std::string>& names) {
    (void)f;
    for (std::size_t i = 0; i < d; ++i) {
        Combo expect{{static_cast<std::uint32_t>(i), 1}};
        if (table[unit * d + i] != expect || table[i * d + unit] != expect)
            throw AxiomViolation(Axiom::Unit, "1 * " + term_name(names, i) + " != " + term_name(names, i));
    }
}

void check_associative(const PrimeField& f, std::size_t d, const std::vector<Combo>& table,
                       const std::vector<std::string>& names) {
    FpVector lhs(d), rhs(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t l = 0; l < d; ++l) {
                std::fill(lhs.begin(), lhs.end(), 0);
                std::fill(rhs.begin(), rhs.end(), 0);
                for (const auto& t : table[i * d + j]) axpy(f, lhs, t.coeff, table[t.index * d + l]);
                for (const auto& t : table[j * d + l]) axpy(f, rhs, t.coeff, table[i * d + t.index]);
                if (lhs != rhs)
                    throw AxiomViolation(Axiom::Associativity, "(" + term_name(names, i) + " " + term_name(names, j) +
                                                                   ") " + term_name(names, l));
            }
}

void check_augmentation_multiplicative(const PrimeField& f, std::size_t d, std::size_t unit,
                                       const std::vector<Combo>& table, const std::vector<Residue>& aug,
                                       const std::vector<std::string>& names) {
    if (aug[unit] != 1) throw AxiomViolation(Axiom::Augmentation, "augmentation of the unit is not 1");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Residue s = 0;
            for (const auto& t : table[i * d + j]) s = f.add(s, f.mul(aug[t.index], t.coeff));
            if (s != f.mul(aug[i], aug[j]))
                throw AxiomViolation(Axiom::Augmentation,
                                     "not multiplicative on " + term_name(names, i) + " " + term_name(names, j));
        }
}

// Adapted basis for a descending chain of subspaces given top level first.
FpMatrix adapted_basis(std::uint32_t p, std::size_t d, std::size_t unit,
                       const std::vector<std::vector<FpVector>>& levels, std::vector<int>& weights) {
    // Check nesting: level i+1 inside level i.
    std::vector<SubspaceBuilder> spans;
    for (const auto& lvl : levels) {
        SubspaceBuilder sb(p, d);
        for (const auto& v : lvl) {
            if (v.size() != d) throw InvalidInput("filtration: vector length differs from algebra dimension");
            sb.insert(v);
        }
        spans.push_back(std::move(sb));
    }
    for (std::size_t i = 1; i < spans.size(); ++i)
        for (const auto& v : spans[i].generators())
            if (!spans[i - 1].contains(v)) throw InvalidInput("filtration: levels are not decreasing");

    SubspaceBuilder acc(p, d);
    std::vector<std::pair<FpVector, int>> chosen;
    for (std::size_t li = levels.size(); li-- > 0;) {
        for (const auto& v : spans[li].generators())
            if (acc.insert(v)) chosen.push_back({v, static_cast<int>(li + 1)});
    }
    FpVector u(d, 0);
    u[unit] = 1;
    if (!acc.insert(u)) throw AxiomViolation(Axiom::Augmentation, "the unit lies in Fil^1");
    std::vector<std::pair<FpVector, int>> ordered{{u, 0}};
    for (std::size_t k = 0; k < d; ++k) {
        FpVector e(d, 0);
        e[k] = 1;
        if (acc.insert(e)) ordered.push_back({e, 0});
    }
    // Weight-0 complement first, then increasing weight.
    std::reverse(chosen.begin(), chosen.end());
    for (auto& c : chosen) ordered.push_back(std::move(c));
    std::vector<FpVector> cols;
    weights.clear();
    for (auto& [v, w] : ordered) {
        cols.push_back(v);
        weights.push_back(w);
    }
    return FpMatrix::from_columns(p, d, cols);
}

AlgebraData rebase_data(const PrimeField& f, std::size_t d, const std::vector<Combo>& table,
                        const std::vector<Residue>& aug, const FpMatrix& basis, const std::vector<int>& weights,
                        std::vector<std::string> names) {
    if (basis.rows() != d || basis.cols() != d) throw DimensionMismatch("change of basis must be square");
    SubspaceBuilder sb(f.p(), d);
    std::vector<FpVector> cols;
    for (std::size_t c = 0; c < d; ++c) {
        cols.push_back(basis.column(c));
        if (!sb.insert(cols.back())) throw InvalidInput("change of basis is singular");
    }
    AlgebraData out;
    out.p = f.p();
    out.unit = 0;
    out.weights = weights;
    if (names.size() != d) {
        names.clear();
        for (std::size_t i = 0; i < d; ++i) names.push_back(i == 0 ? "1" : "b" + std::to_string(i));
    }
    out.names = std::move(names);
    out.table.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto prod = raw_multiply(f, d, table, cols[i], cols[j]);
            out.table[i * d + j] = to_combo(*sb.coordinates(prod));
        }
    for (std::size_t i = 0; i < d; ++i) out.aug.push_back(raw_aug(f, aug, cols[i]));
    return out;
}

}  // namespace

FilteredAlgebra FilteredAlgebra::make(const AlgebraData& in) {
    PrimeField f(in.p);
    const std::size_t d = in.names.size();
    if (d == 0) throw InvalidInput("basis: algebra must have at least the unit");
    if (in.table.size() != d * d)
        throw InvalidInput("mul: expected " + std::to_string(d * d) + " products, got " + std::to_string(in.table.size()));
    if (in.aug.size() != d) throw InvalidInput("aug: length differs from basis");
    if (in.unit >= d) throw InvalidInput("unit: index out of range");
    std::vector<Combo> table(d * d);
    for (std::size_t k = 0; k < d * d; ++k) table[k] = normalize(f, in.table[k], d, "mul");
    std::vector<Residue> aug(d);
    for (std::size_t i = 0; i < d; ++i) aug[i] = in.aug[i] % f.p();

    check_unit(f, d, in.unit, table, in.names);
    check_associative(f, d, table, in.names);
    check_augmentation_multiplicative(f, d, in.unit, table, aug, in.names);

    if (in.filtration) {
        std::vector<int> w;
        auto basis = adapted_basis(f.p(), d, in.unit, *in.filtration, w);
        return make(rebase_data(f, d, table, aug, basis, w, {}));
    }
    if (in.weights.size() != d) throw InvalidInput("weights: length differs from basis");
    if (in.unit != 0) {
        std::vector<FpVector> cols;
        std::vector<int> w;
        std::vector<std::string> names;
        std::vector<std::size_t> order{in.unit};
        for (std::size_t i = 0; i < d; ++i)
            if (i != in.unit) order.push_back(i);
        for (auto i : order) {
            FpVector e(d, 0);
            e[i] = 1;
            cols.push_back(e);
            w.push_back(in.weights[i]);
            names.push_back(in.names[i]);
        }
        return make(rebase_data(f, d, table, aug, FpMatrix::from_columns(f.p(), d, cols), w, names));
    }

    for (std::size_t i = 0; i < d; ++i) {
        if (in.weights[i] < 0) throw InvalidInput("weights: " + term_name(in.names, i) + " has negative weight");
        if (in.weights[i] >= 1 && aug[i] != 0)
            throw AxiomViolation(Axiom::Augmentation, "augmentation of " + term_name(in.names, i) + " in Fil^" +
                                                          std::to_string(in.weights[i]) + " is nonzero");
    }
    if (in.weights[0] != 0) throw AxiomViolation(Axiom::Augmentation, "the unit has positive weight");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& t : table[i * d + j])
                if (in.weights[t.index] < in.weights[i] + in.weights[j])
                    throw AxiomViolation(Axiom::FiltrationMultiplicativity,
                                         term_name(in.names, i) + " * " + term_name(in.names, j) + " has a term " +
                                             term_name(in.names, t.index) + " of weight below " +
                                             std::to_string(in.weights[i] + in.weights[j]));

    FilteredAlgebra a(f);
    a.names_ = in.names;
    for (std::size_t i = 0; i < d; ++i) a.names_[i] = term_name(in.names, i);
    a.table_ = std::move(table);
    a.aug_ = std::move(aug);
    a.weights_ = in.weights;
    return a;
}

int FilteredAlgebra::max_weight() const { return *std::max_element(weights_.begin(), weights_.end()); }

std::size_t FilteredAlgebra::fil_dim(int i) const {
    return static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(), [i](int w) { return w >= i; }));
}

bool FilteredAlgebra::is_graded() const {
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (const auto& t : table_[i * d + j])
                if (weights_[t.index] != weights_[i] + weights_[j]) return false;
    return true;
}

FpVector FilteredAlgebra::multiply(std::span<const Residue> x, std::span<const Residue> y) const {
    if (x.size() != dim() || y.size() != dim()) throw DimensionMismatch("algebra element length");
    return raw_multiply(field_, dim(), table_, x, y);
}

AlgebraData FilteredAlgebra::data() const {
    AlgebraData d;
    d.p = p();
    d.names = names_;
    d.unit = 0;
    d.table = table_;
    d.aug = aug_;
    d.weights = weights_;
    return d;
}

FilteredAlgebra rebase(const FilteredAlgebra& a, const FpMatrix& basis, const std::vector<int>& weights,
                       std::vector<std::string> names) {
    return FilteredAlgebra::make(
        rebase_data(a.field(), a.dim(), a.data().table, a.augmentation(), basis, weights, std::move(names)));
}

GradedAlgebra::GradedAlgebra(FilteredAlgebra a, int exact_through, std::optional<std::vector<int>> poly)
    : a_(std::move(a)), exact_through_(exact_through), poly_(std::move(poly)) {
    if (!a_.is_graded()) throw AxiomViolation(Axiom::Grading, "multiplication is not degree-additive");
}

bool GradedAlgebra::connected() const {
    return std::count(a_.weights().begin(), a_.weights().end(), 0) == 1;
}

GradedAlgebra associated_graded(const FilteredAlgebra& a) {
    AlgebraData d = a.data();
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto& c = d.table[i * n + j];
            std::erase_if(c, [&](const Term& t) { return a.weight(t.index) != a.weight(i) + a.weight(j); });
        }
    return GradedAlgebra(FilteredAlgebra::make(d));
}

FilteredAlgebra tensor(const FilteredAlgebra& a, const FilteredAlgebra& b) {
    if (a.p() != b.p()) throw InvalidInput("tensor: characteristics differ");
    const std::size_t da = a.dim(), db = b.dim(), d = da * db;
    const PrimeField& f = a.field();
    AlgebraData out;
    out.p = a.p();
    out.table.resize(d * d);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < db; ++k) {
            out.names.push_back(i == 0 && k == 0 ? "1" : a.name(i) + "⊗" + b.name(k));
            out.aug.push_back(f.mul(a.aug(i), b.aug(k)));
            out.weights.push_back(a.weight(i) + b.weight(k));
        }
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < db; ++k)
            for (std::size_t j = 0; j < da; ++j)
                for (std::size_t l = 0; l < db; ++l) {
                    Combo c;
                    for (const auto& s : a.product(i, j))
                        for (const auto& t : b.product(k, l))
                            c.push_back({static_cast<std::uint32_t>(s.index * db + t.index), f.mul(s.coeff, t.coeff)});
                    out.table[(i * db + k) * d + (j * db + l)] = std::move(c);
                }
    return FilteredAlgebra::make(out);
}

GradedAlgebra tensor_graded(const GradedAlgebra& a, const GradedAlgebra& b) {
    int exact = std::min(a.exact_through(), b.exact_through());
    std::optional<std::vector<int>> poly;
    if (a.polynomial_degrees() && b.polynomial_degrees()) {
        poly = *a.polynomial_degrees();
        poly->insert(poly->end(), b.polynomial_degrees()->begin(), b.polynomial_degrees()->end());
    }
    return GradedAlgebra(tensor(a.algebra(), b.algebra()), exact, std::move(poly));
}

namespace {

// Indices of basis elements with weight < j, and the inverse map.
std::pair<std::vector<std::size_t>, std::vector<std::int64_t>> below(const std::vector<int>& w, int j) {
    std::vector<std::size_t> keep;
    std::vector<std::int64_t> pos(w.size(), -1);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] < j) {
            pos[i] = static_cast<std::int64_t>(keep.size());
            keep.push_back(i);
        }
    return {keep, pos};
}

Combo remap(const Combo& c, const std::vector<std::int64_t>& pos) {
    Combo out;
    for (const auto& t : c)
        if (pos[t.index] >= 0) out.push_back({static_cast<std::uint32_t>(pos[t.index]), t.coeff});
    return out;
}

}  // namespace

FilteredAlgebra truncate(const FilteredAlgebra& a, int j) {
    if (j < 1) throw InvalidInput("truncate: level must be at least 1");
    auto [keep, pos] = below(a.weights(), j);
    AlgebraData out;
    out.p = a.p();
    for (auto i : keep) {
        out.names.push_back(a.name(i));
        out.aug.push_back(a.aug(i));
        out.weights.push_back(a.weight(i));
    }
    for (auto i : keep)
        for (auto k : keep) out.table.push_back(remap(a.product(i, k), pos));
    return FilteredAlgebra::make(out);
}

// ---- modules --------------------------------------------------------------

FilteredModule FilteredModule::make(const FilteredAlgebra& a, const ModuleData& in) {
    if (in.p != a.p()) throw InvalidInput("p: module characteristic differs from algebra");
    PrimeField f(in.p);
    const std::size_t dm = in.names.size(), da = a.dim();
    if (in.weights.size() != dm) throw InvalidInput("weights: length differs from basis");
    if (in.table.size() != da * dm)
        throw InvalidInput("mul: expected " + std::to_string(da * dm) + " action entries, got " +
                           std::to_string(in.table.size()));
    std::vector<Combo> table(da * dm);
    for (std::size_t k = 0; k < da * dm; ++k) table[k] = normalize(f, in.table[k], dm, "mul");

    for (std::size_t j = 0; j < dm; ++j)
        if (table[j] != Combo{{static_cast<std::uint32_t>(j), 1}})
            throw AxiomViolation(Axiom::ModuleAction, "unit does not act as identity on " + term_name(in.names, j));
    FpVector lhs(dm), rhs(dm);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t k = 0; k < da; ++k)
            for (std::size_t j = 0; j < dm; ++j) {
                std::fill(lhs.begin(), lhs.end(), 0);
                std::fill(rhs.begin(), rhs.end(), 0);
                for (const auto& t : a.product(i, k)) axpy(f, lhs, t.coeff, table[t.index * dm + j]);
                for (const auto& t : table[k * dm + j]) axpy(f, rhs, t.coeff, table[i * dm + t.index]);
                if (lhs != rhs)
                    throw AxiomViolation(Axiom::ModuleAction, "(" + a.name(i) + " " + a.name(k) + ") " +
                                                                  term_name(in.names, j) + " differs from " + a.name(i) +
                                                                  " (" + a.name(k) + " " + term_name(in.names, j) + ")");
            }
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < dm; ++j)
            for (const auto& t : table[i * dm + j])
                if (in.weights[t.index] < a.weight(i) + in.weights[j])
                    throw AxiomViolation(Axiom::FiltrationMultiplicativity,
                                         a.name(i) + " * " + term_name(in.names, j) + " leaves Fil^" +
                                             std::to_string(a.weight(i) + in.weights[j]));
    FilteredModule m(f);
    m.algebra_dim_ = da;
    for (std::size_t j = 0; j < dm; ++j) m.names_.push_back(term_name(in.names, j));
    m.table_ = std::move(table);
    m.weights_ = in.weights;
    return m;
}

int FilteredModule::mu() const {
    return weights_.empty() ? 0 : *std::max_element(weights_.begin(), weights_.end()) + 1;
}

int FilteredModule::nu() const {
    return weights_.empty() ? 0 : *std::min_element(weights_.begin(), weights_.end());
}

bool FilteredModule::is_graded(const FilteredAlgebra& a) const {
    for (std::size_t i = 0; i < algebra_dim_; ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            for (const auto& t : act(i, j))
                if (weights_[t.index] != a.weight(i) + weights_[j]) return false;
    return true;
}

FpVector FilteredModule::act(std::size_t i, std::span<const Residue> m) const {
    FpVector out(dim(), 0);
    for (std::size_t j = 0; j < dim(); ++j) axpy(field_, out, m[j], act(i, j));
    return out;
}

ModuleData FilteredModule::data() const { return {p(), names_, table_, weights_}; }

int amplitude(const FilteredModule& m) { return m.mu() - m.nu(); }

FilteredModule trivial_module(const FilteredAlgebra& a, int weight) {
    ModuleData d{a.p(), {"m"}, {}, {weight}};
    for (std::size_t i = 0; i < a.dim(); ++i)
        d.table.push_back(a.aug(i) ? Combo{{0, a.aug(i)}} : Combo{});
    return FilteredModule::make(a, d);
}

FilteredModule regular_module(const FilteredAlgebra& a) {
    auto ad = a.data();
    return FilteredModule::make(a, {a.p(), ad.names, ad.table, ad.weights});
}

FilteredModule quotient_module(const FilteredAlgebra& a, int j) {
    auto [keep, pos] = below(a.weights(), j);
    ModuleData d;
    d.p = a.p();
    for (auto k : keep) {
        d.names.push_back(a.name(k));
        d.weights.push_back(a.weight(k));
    }
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (auto k : keep) d.table.push_back(remap(a.product(i, k), pos));
    return FilteredModule::make(a, d);
}

FilteredModule direct_sum(const FilteredAlgebra& a, const FilteredModule& m, const FilteredModule& n) {
    ModuleData d;
    d.p = a.p();
    const auto dm = static_cast<std::uint32_t>(m.dim());
    for (std::size_t j = 0; j < m.dim(); ++j) {
        d.names.push_back(m.name(j));
        d.weights.push_back(m.weight(j));
    }
    for (std::size_t j = 0; j < n.dim(); ++j) {
        d.names.push_back(n.name(j) + "'");
        d.weights.push_back(n.weight(j));
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) d.table.push_back(m.act(i, j));
        for (std::size_t j = 0; j < n.dim(); ++j) {
            Combo c = n.act(i, j);
            for (auto& t : c) t.index += dm;
            d.table.push_back(std::move(c));
        }
    }
    return FilteredModule::make(a, d);
}

FilteredModule shift(const FilteredAlgebra& a, const FilteredModule& m, int c) {
    auto d = m.data();
    for (auto& w : d.weights) w += c;
    return FilteredModule::make(a, d);
}

FilteredModule associated_graded(const FilteredAlgebra& a, const FilteredModule& m) {
    auto d = m.data();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            std::erase_if(d.table[i * m.dim() + j],
                          [&](const Term& t) { return m.weight(t.index) != a.weight(i) + m.weight(j); });
    return FilteredModule::make(associated_graded(a).algebra(), d);
}

FilteredModule external_tensor(const FilteredAlgebra& a, const FilteredAlgebra& b, const FilteredModule& m,
                               const FilteredModule& n) {
    auto ab = tensor(a, b);
    const PrimeField& f = a.field();
    ModuleData d;
    d.p = a.p();
    const std::size_t dn = n.dim();
    for (std::size_t j = 0; j < m.dim(); ++j)
        for (std::size_t l = 0; l < dn; ++l) {
            d.names.push_back(m.name(j) + "⊗" + n.name(l));
            d.weights.push_back(m.weight(j) + n.weight(l));
        }
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < b.dim(); ++k)
            for (std::size_t j = 0; j < m.dim(); ++j)
                for (std::size_t l = 0; l < dn; ++l) {
                    Combo c;
                    for (const auto& s : m.act(i, j))
                        for (const auto& t : n.act(k, l))
                            c.push_back({static_cast<std::uint32_t>(s.index * dn + t.index), f.mul(s.coeff, t.coeff)});
                    d.table.push_back(std::move(c));
                }
    return FilteredModule::make(ab, d);
}

// ---- morphisms ------------------------------------------------------------

AlgebraMorphism::AlgebraMorphism(const FilteredAlgebra& s, const FilteredAlgebra& t, FpMatrix images)
    : images_(std::move(images)) {
    if (images_.p() != s.p() || s.p() != t.p()) throw MorphismInvalid("morphism: characteristics differ");
    if (images_.cols() != s.dim() || images_.rows() != t.dim())
        throw MorphismInvalid("morphism: matrix shape does not match source and target dimensions");
    const PrimeField& f = s.field();
    FpVector unit(t.dim(), 0);
    unit[0] = 1;
    if (images_.column(0) != unit) throw MorphismInvalid("morphism is not unital");
    std::vector<FpVector> cols;
    for (std::size_t i = 0; i < s.dim(); ++i) cols.push_back(images_.column(i));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (raw_aug(f, t.augmentation(), cols[i]) != s.aug(i))
            throw MorphismInvalid("morphism does not commute with augmentations at " + s.name(i));
        for (std::size_t k = 0; k < t.dim(); ++k)
            if (cols[i][k] && t.weight(k) < s.weight(i))
                throw MorphismInvalid("morphism lowers the filtration at " + s.name(i));
    }
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < s.dim(); ++j) {
            FpVector lhs(t.dim(), 0);
            for (const auto& term : s.product(i, j))
                for (std::size_t k = 0; k < t.dim(); ++k) lhs[k] = f.add(lhs[k], f.mul(term.coeff, cols[term.index][k]));
            if (lhs != t.multiply(cols[i], cols[j]))
                throw MorphismInvalid("morphism is not multiplicative on " + s.name(i) + " " + s.name(j));
        }
}

AlgebraMorphism AlgebraMorphism::graded(const FilteredAlgebra& s, const FilteredAlgebra& t) const {
    FpMatrix g(images_.p(), images_.rows(), images_.cols());
    for (std::size_t k = 0; k < images_.rows(); ++k)
        for (std::size_t i = 0; i < images_.cols(); ++i)
            if (t.weight(k) == s.weight(i)) g.set(k, i, images_.at(k, i));
    return AlgebraMorphism(s, t, std::move(g));
}

bool AlgebraMorphism::is_identity() const {
    return images_.rows() == images_.cols() && images_ == FpMatrix::identity(images_.p(), images_.rows());
}

AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f) {
    if (g.source_dim() != f.target_dim()) throw MorphismInvalid("compose: morphisms are not composable");
    return AlgebraMorphism(g.images_ * f.images_, AlgebraMorphism::Unchecked{});
}

AlgebraMorphism identity_morphism(const FilteredAlgebra& a) {
    return AlgebraMorphism(a, a, FpMatrix::identity(a.p(), a.dim()));
}

AlgebraMorphism tensor_morphism(const FilteredAlgebra& source, const FilteredAlgebra& target, const AlgebraMorphism& f,
                                const AlgebraMorphism& g) {
    return AlgebraMorphism(source, target, kronecker(f.matrix(), g.matrix()));
}

FilteredModule restrict_module(const FilteredAlgebra& source, const FilteredAlgebra& target,
                               const AlgebraMorphism& f, const FilteredModule& m) {
    if (m.algebra_dim() != target.dim()) throw DimensionMismatch("restrict: module is not over the target");
    const PrimeField& fld = source.field();
    ModuleData d = m.data();
    d.table.assign(source.dim() * m.dim(), {});
    for (std::size_t i = 0; i < source.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) {
            FpVector v(m.dim(), 0);
            for (std::size_t t = 0; t < target.dim(); ++t) axpy(fld, v, f.matrix().at(t, i), m.act(t, j));
            d.table[i * m.dim() + j] = to_combo(v);
        }
    return FilteredModule::make(source, d);
}

}  // namespace grext
