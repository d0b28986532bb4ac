#include "grext/bar.hpp"

#include <algorithm>
#include <string>

namespace grext {

std::size_t int_pow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::vector<std::uint32_t> tuple_digits(std::size_t index, std::size_t base, int length) {
    std::vector<std::uint32_t> d(static_cast<std::size_t>(length));
    for (int k = length - 1; k >= 0; --k) {
        d[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(index % base);
        index /= base;
    }
    return d;
}

int tuple_weight(const FilteredAlgebra& a, std::size_t index, int length) {
    int w = 0;
    for (int k = 0; k < length; ++k) {
        w += a.weight(index % a.dim());
        index /= a.dim();
    }
    return w;
}

namespace {

void compress(const PrimeField& f, SparseColumn& col) {
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseColumn out;
    for (const auto& [r, c] : col) {
        if (!out.empty() && out.back().first == r)
            out.back().second = f.add(out.back().second, c);
        else
            out.push_back({r, c});
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    col = std::move(out);
}

// d_n of the basis tuple idx of B_n A (n + 1 factors), as a column in B_{n-1} A.
SparseColumn bar_column(const FilteredAlgebra& a, int n, std::size_t idx) {
    const PrimeField& f = a.field();
    const std::size_t d = a.dim();
    auto digits = tuple_digits(idx, d, n + 1);
    SparseColumn col;
    for (int i = 0; i < n; ++i) {
        Residue sign = i % 2 ? f.neg(1) : 1;
        for (const auto& t : a.product(digits[i], digits[i + 1])) {
            std::size_t s = 0;
            for (int k = 0; k <= n; ++k) {
                if (k == i + 1) continue;
                s = s * d + (k == i ? t.index : digits[k]);
            }
            col.push_back({s, f.mul(sign, t.coeff)});
        }
    }
    if (Residue e = a.aug(digits[n])) {
        Residue sign = n % 2 ? f.neg(1) : 1;
        col.push_back({idx / d, f.mul(sign, e)});
    }
    compress(f, col);
    return col;
}

}  // namespace

FpMatrix bar_differential(const FilteredAlgebra& a, int n, int n_max) {
    if (n < 1 || n > n_max)
        throw TruncationExceeded("bar degree " + std::to_string(n) + " outside 1.." + std::to_string(n_max));
    const std::size_t cols = int_pow(a.dim(), n + 1), rows = int_pow(a.dim(), n);
    if (static_cast<double>(cols) * static_cast<double>(rows) > 1e8)
        throw ResourceCapExceeded("bar differential d_" + std::to_string(n) + " is too large to store densely");
    FpMatrix m(a.p(), rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, v] : bar_column(a, n, c)) m.set(r, c, v);
    return m;
}

HomComplex::HomComplex(const FilteredAlgebra& a, const FilteredModule& m, int n_max, std::size_t cap)
    : a_(a), m_(m), n_max_(n_max) {
    if (n_max < 0) throw InvalidInput("n_max must be nonnegative");
    if (m.algebra_dim() != a.dim()) throw DimensionMismatch("module is not over this algebra");
    double top = static_cast<double>(int_pow(a.dim(), n_max)) * static_cast<double>(m.dim());
    if (top > static_cast<double>(cap))
        throw ResourceCapExceeded("cochain space of degree " + std::to_string(n_max) + " has dimension " +
                                  std::to_string(static_cast<std::size_t>(top)) + " > cap " + std::to_string(cap));
    graded_ = a.is_graded() && m.is_graded(a);
    producing_.resize(a.dim());
    for (std::uint32_t x = 0; x < a.dim(); ++x)
        for (std::uint32_t y = 0; y < a.dim(); ++y)
            for (const auto& t : a.product(x, y)) producing_[t.index].emplace_back(x, y, t.coeff);
}

std::size_t HomComplex::dim(int n) const { return int_pow(a_.dim(), n) * m_.dim(); }

int HomComplex::degree(int n, std::size_t idx) const {
    return m_.weight(idx % m_.dim()) - tuple_weight(a_, idx / m_.dim(), n);
}

SparseColumn HomComplex::coboundary_column(int n, std::size_t idx) const {
    if (n < 0 || n >= n_max_) throw TruncationExceeded("coboundary degree outside the computed range");
    const PrimeField& f = a_.field();
    const std::size_t d = a_.dim(), dm = m_.dim();
    const std::size_t t = idx / dm, j = idx % dm;
    const std::size_t dn = int_pow(d, n);
    SparseColumn col;
    // u_1 φ(u_2 .. u_{n+1})
    for (std::size_t u = 0; u < d; ++u)
        for (const auto& term : m_.act(u, j)) col.push_back({(u * dn + t) * dm + term.index, term.coeff});
    // Σ (-1)^i φ(.. u_i u_{i+1} ..)
    auto digits = tuple_digits(t, d, n);
    for (int i = 1; i <= n; ++i) {
        Residue sign = i % 2 ? f.neg(1) : 1;
        std::size_t prefix = 0;
        for (int k = 0; k < i - 1; ++k) prefix = prefix * d + digits[k];
        std::size_t suffix = 0;
        for (int k = i; k < n; ++k) suffix = suffix * d + digits[k];
        std::size_t suffix_span = int_pow(d, n - i);
        for (const auto& [x, y, c] : producing_[digits[i - 1]]) {
            std::size_t s = ((prefix * d + x) * d + y) * suffix_span + suffix;
            col.push_back({s * dm + j, f.mul(sign, c)});
        }
    }
    // (-1)^{n+1} φ(u_1 .. u_n) ε(u_{n+1})
    Residue sign = (n + 1) % 2 ? f.neg(1) : 1;
    for (std::size_t u = 0; u < d; ++u)
        if (Residue e = a_.aug(u)) col.push_back({(t * d + u) * dm + j, f.mul(sign, e)});
    compress(f, col);
    return col;
}

FpMatrix HomComplex::coboundary(int n) const {
    const std::size_t rows = dim(n + 1), cols = dim(n);
    if (static_cast<double>(rows) * static_cast<double>(cols) > 1e8)
        throw ResourceCapExceeded("coboundary in degree " + std::to_string(n) + " is too large to store densely");
    FpMatrix m(p(), rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, v] : coboundary_column(n, c)) m.set(r, c, v);
    return m;
}

FpMatrix HomComplex::coboundary_block(int n, const std::vector<std::size_t>& cols,
                                      const std::vector<std::size_t>& rows) const {
    std::map<std::size_t, std::size_t> row_pos;
    for (std::size_t r = 0; r < rows.size(); ++r) row_pos[rows[r]] = r;
    FpMatrix m(p(), rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : coboundary_column(n, cols[c])) {
            auto it = row_pos.find(r);
            if (it == row_pos.end()) throw Error("coboundary leaves the requested block");
            m.set(it->second, c, v);
        }
    return m;
}

std::map<int, std::vector<std::size_t>> HomComplex::degree_blocks(int n) const {
    std::map<int, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < dim(n); ++i) blocks[degree(n, i)].push_back(i);
    return blocks;
}

std::vector<std::size_t> ExtResult::dims() const {
    std::vector<std::size_t> d;
    for (const auto& e : degrees) d.push_back(e.dim);
    return d;
}

namespace {

FpVector scatter(const FpVector& local, const std::vector<std::size_t>& idx, std::size_t length) {
    FpVector v(length, 0);
    for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = local[k];
    return v;
}

int min_degree(const HomComplex& c, int n, const FpVector& v) {
    int best = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) best = std::min(best, c.degree(n, i));
    return best;
}

}  // namespace

ExtResult ext_from_complex(const HomComplex& c) {
    ExtResult res;
    res.graded = c.graded();
    const std::uint32_t p = c.p();
    for (int n = 0; n < c.n_max(); ++n) {
        ExtDegree e;
        e.n = n;
        e.cochain_dim = c.dim(n);
        std::vector<FpVector> z, b;
        if (c.graded()) {
            auto here = c.degree_blocks(n);
            auto next = c.degree_blocks(n + 1);
            std::map<int, std::vector<std::size_t>> prev;
            if (n > 0) prev = c.degree_blocks(n - 1);
            for (const auto& [deg, cols] : here) {
                std::vector<std::size_t> rows;
                if (auto it = next.find(deg); it != next.end()) rows = it->second;
                auto ker = kernel_basis(c.coboundary_block(n, cols, rows));
                std::size_t zdim = ker.size(), bdim = 0;
                for (const auto& v : ker) z.push_back(scatter(v, cols, c.dim(n)));
                if (auto it = prev.find(deg); it != prev.end()) {
                    auto m = c.coboundary_block(n - 1, it->second, cols);
                    bdim = rank(m);
                    for (std::size_t k = 0; k < m.cols(); ++k) b.push_back(scatter(m.column(k), cols, c.dim(n)));
                }
                if (zdim > bdim) e.dims_by_degree[deg] = zdim - bdim;
            }
        } else {
            z = kernel_basis(c.coboundary(n));
            if (n > 0) {
                auto m = c.coboundary(n - 1);
                for (std::size_t k = 0; k < m.cols(); ++k) b.push_back(m.column(k));
            }
        }
        auto q = std::make_shared<Subquotient>(p, c.dim(n), z, b);
        e.cocycle_dim = z.size();
        e.coboundary_dim = span_rank(p, c.dim(n), b);
        e.dim = q->dim();
        e.representatives = q->representatives();
        for (const auto& r : e.representatives) e.rep_degrees.push_back(min_degree(c, n, r));
        e.quotient = std::move(q);
        res.degrees.push_back(std::move(e));
    }
    return res;
}

ExtResult ext_via_bar(const FilteredAlgebra& a, const FilteredModule& m, int n_max, std::size_t cap) {
    return ext_from_complex(HomComplex(a, m, n_max, cap));
}

FpVector pullback_cochain(const AlgebraMorphism& f, std::span<const Residue> phi, int n, std::size_t dm) {
    const FpMatrix& mat = f.matrix();
    const PrimeField& fld = mat.field();
    const std::size_t dt = f.target_dim(), ds = f.source_dim();
    if (phi.size() != int_pow(dt, n) * dm) throw DimensionMismatch("pullback: cochain length");
    FpVector cur(phi.begin(), phi.end());
    for (int k = 0; k < n; ++k) {
        const std::size_t left = int_pow(ds, k), right = int_pow(dt, n - 1 - k) * dm;
        FpVector next(left * ds * right, 0);
        for (std::size_t l = 0; l < left; ++l)
            for (std::size_t t = 0; t < dt; ++t) {
                const Residue* src = cur.data() + (l * dt + t) * right;
                for (std::size_t s = 0; s < ds; ++s) {
                    Residue c = mat.at(t, s);
                    if (!c) continue;
                    Residue* dst = next.data() + (l * ds + s) * right;
                    for (std::size_t r = 0; r < right; ++r)
                        if (src[r]) dst[r] = fld.add(dst[r], fld.mul(c, src[r]));
                }
            }
        cur = std::move(next);
    }
    return cur;
}

FpMatrix restriction_matrix(const AlgebraMorphism& f, const ExtDegree& ext_a, const ExtDegree& ext_src,
                            std::size_t dm) {
    FpMatrix out(f.matrix().p(), ext_src.dim, ext_a.dim);
    for (std::size_t c = 0; c < ext_a.dim; ++c) {
        auto coords = ext_src.coordinates(pullback_cochain(f, ext_a.representatives[c], ext_a.n, dm));
        for (std::size_t r = 0; r < ext_src.dim; ++r) out.set(r, c, coords[r]);
    }
    return out;
}

RestrictionResult restriction_map(const FilteredAlgebra& source, const FilteredAlgebra& target,
                                  const AlgebraMorphism& f, const FilteredModule& m, int n, std::size_t cap) {
    auto ext_t = ext_via_bar(target, m, n + 1, cap);
    auto m_src = restrict_module(source, target, f, m);
    auto ext_s = ext_via_bar(source, m_src, n + 1, cap);
    auto mat = restriction_matrix(f, ext_t.degrees[n], ext_s.degrees[n], m.dim());
    return {std::move(mat), std::move(ext_s), std::move(ext_t)};
}

GrBarReport gr_bar_compare(const FilteredAlgebra& a, int n, int i) {
    GrBarReport rep;
    rep.n = n;
    rep.i = i;
    const std::size_t d = a.dim(), count = int_pow(d, n + 1);
    // Direct enumeration of tuples of tensor weight i.
    std::vector<std::size_t> tuples;
    for (std::size_t t = 0; t < count; ++t)
        if (tuple_weight(a, t, n + 1) == i) tuples.push_back(t);
    rep.lhs = tuples.size();
    // Compositions i_0 + .. + i_n = i weighted by graded dimensions.
    std::vector<std::size_t> gr_dims(static_cast<std::size_t>(a.max_weight()) + 1, 0);
    for (int w : a.weights()) ++gr_dims[static_cast<std::size_t>(w)];
    std::vector<std::size_t> conv{1};
    for (int k = 0; k <= n; ++k) {
        std::vector<std::size_t> next(conv.size() + gr_dims.size() - 1, 0);
        for (std::size_t x = 0; x < conv.size(); ++x)
            for (std::size_t y = 0; y < gr_dims.size(); ++y) next[x + y] += conv[x] * gr_dims[y];
        conv = std::move(next);
    }
    rep.rhs = i >= 0 && static_cast<std::size_t>(i) < conv.size() ? conv[static_cast<std::size_t>(i)] : 0;
    if (n >= 1) {
        auto gr = associated_graded(a).algebra();
        for (auto t : tuples) {
            auto col = bar_column(a, n, t);
            auto gcol = bar_column(gr, n, t);
            SparseColumn leading;
            for (const auto& [r, v] : col) {
                int w = tuple_weight(a, r, n);
                if (w < i) rep.filtration_preserved = false;
                if (w == i) leading.push_back({r, v});
            }
            if (leading != gcol) rep.intertwines = false;
        }
    }
    return rep;
}

GrHomReport gr_hom_compare(const FilteredAlgebra& a, const FilteredModule& m, int n, int s) {
    GrHomReport rep;
    rep.n = n;
    rep.s = s;
    const std::size_t d = a.dim(), dm = m.dim();
    // Allowed values of φ(t) in Fil^s: y with a_0 y ∈ Fil^{w(a_0)+w(t)+s} M for every a_0.
    auto allowed_dim = [&](int wt, int shift) {
        std::vector<std::vector<std::int64_t>> rows;
        for (std::size_t a0 = 0; a0 < d; ++a0) {
            int bound = a.weight(a0) + wt + shift;
            for (std::size_t k = 0; k < dm; ++k) {
                if (m.weight(k) >= bound) continue;
                std::vector<std::int64_t> row(dm, 0);
                for (std::size_t j = 0; j < dm; ++j)
                    for (const auto& t : m.act(a0, j))
                        if (t.index == k) row[j] = t.coeff;
                rows.push_back(std::move(row));
            }
        }
        if (rows.empty()) return dm;
        return dm - rank(FpMatrix::from_rows(a.p(), rows));
    };
    std::map<int, std::size_t> tuples_by_weight;
    for (std::size_t t = 0; t < int_pow(d, n); ++t) ++tuples_by_weight[tuple_weight(a, t, n)];
    for (const auto& [wt, cnt] : tuples_by_weight) {
        rep.lhs += cnt * (allowed_dim(wt, s) - allowed_dim(wt, s + 1));
        rep.rhs += cnt * static_cast<std::size_t>(std::count(m.weights().begin(), m.weights().end(), wt + s));
    }
    return rep;
}

}  // namespace grext
