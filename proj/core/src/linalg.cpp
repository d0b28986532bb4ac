#include "grext/linalg.hpp"

#include <algorithm>
#include <string>

namespace grext {

const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::Associativity: return "associativity";
        case Axiom::Unit: return "unit";
        case Axiom::FiltrationMultiplicativity: return "filtration-multiplicativity";
        case Axiom::Augmentation: return "augmentation";
        case Axiom::ModuleAction: return "module-action";
        case Axiom::Grading: return "grading";
    }
    return "unknown";
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
        throw InvalidInput("modulus " + std::to_string(p) + " is not a machine-word prime");
}

Residue PrimeField::inv(Residue a) const {
    if (a % p_ == 0) throw Error("inverse of zero in F_" + std::to_string(p_));
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p_, e = p_ - 2;
    while (e) {
        if (e & 1) result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<Residue>(result);
}

Residue PrimeField::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Residue>(r);
}

std::int64_t PrimeField::to_signed(Residue a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
}

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : field_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    FpMatrix m(p, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DimensionMismatch("ragged row list");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, m.field_.from_int(rows[r][c]));
    }
    return m;
}

FpMatrix FpMatrix::from_columns(std::uint32_t p, std::size_t rows, const std::vector<FpVector>& cols) {
    FpMatrix m(p, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw DimensionMismatch("column length differs from row count");
        for (std::size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
    }
    return m;
}

FpVector FpMatrix::column(std::size_t c) const {
    FpVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(p(), cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
    return t;
}

FpMatrix FpMatrix::select_rows(std::span<const std::size_t> idx) const {
    FpMatrix out(p(), idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        std::copy_n(data_.begin() + idx[i] * cols_, cols_, out.data_.begin() + i * cols_);
    return out;
}

FpMatrix FpMatrix::select_columns(std::span<const std::size_t> idx) const {
    FpMatrix out(p(), rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t i = 0; i < idx.size(); ++i) out.data_[r * idx.size() + i] = at(r, idx[i]);
    return out;
}

FpVector FpMatrix::apply(std::span<const Residue> v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
    FpVector out(rows_, 0);
    const std::uint64_t p64 = p();
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        const Residue* row = data_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c) {
            acc += static_cast<std::uint64_t>(row[c]) * v[c];
            if ((c & 7) == 7) acc %= p64;
        }
        out[r] = static_cast<Residue>(acc % p64);
    }
    return out;
}

bool FpMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols_ != b.rows_ || a.p() != b.p()) throw DimensionMismatch("matrix product shape mismatch");
    FpMatrix out(a.p(), a.rows_, b.cols_);
    const std::uint64_t p = a.p();
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            std::uint64_t x = a.at(r, k);
            if (!x) continue;
            const Residue* brow = b.data_.data() + k * b.cols_;
            for (std::size_t c = 0; c < b.cols_; ++c) acc[c] = (acc[c] + x * brow[c]) % p;
        }
        for (std::size_t c = 0; c < b.cols_; ++c) out.data_[r * b.cols_ + c] = static_cast<Residue>(acc[c]);
    }
    return out;
}

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
    if (a.p() != b.p()) throw DimensionMismatch("kronecker: characteristics differ");
    const PrimeField& f = a.field();
    FpMatrix out(a.p(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Residue x = a.at(i, j);
            if (!x) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out.set(i * b.rows() + k, j * b.cols() + l, f.mul(x, b.at(k, l)));
        }
    return out;
}

FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows_ != b.rows_ || a.p() != b.p()) throw DimensionMismatch("hstack row mismatch");
    FpMatrix out(a.p(), a.rows_, a.cols_ + b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        std::copy_n(a.data_.begin() + r * a.cols_, a.cols_, out.data_.begin() + r * out.cols_);
        std::copy_n(b.data_.begin() + r * b.cols_, b.cols_, out.data_.begin() + r * out.cols_ + a.cols_);
    }
    return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref_in_place(FpMatrix& m, std::size_t col_limit) {
    const PrimeField& f = m.field();
    const std::uint64_t p = f.p();
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    const std::size_t cols = m.cols();
    for (std::size_t c = 0; c < col_limit && prow < m.rows(); ++c) {
        std::size_t sel = prow;
        while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != prow) {
            auto a = m.row(sel), b = m.row(prow);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        auto pr = m.row(prow);
        Residue inv = f.inv(pr[c]);
        for (std::size_t k = c; k < cols; ++k) pr[k] = f.mul(pr[k], inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == prow) continue;
            auto rr = m.row(r);
            Residue factor = rr[c];
            if (!factor) continue;
            std::uint64_t neg = p - factor;
            for (std::size_t k = c; k < cols; ++k)
                if (pr[k]) rr[k] = static_cast<Residue>((rr[k] + neg * pr[k]) % p);
        }
        pivots.push_back(c);
        ++prow;
    }
    return pivots;
}

}  // namespace

RankProfile rank_profile(const FpMatrix& m) {
    FpMatrix work = m;
    auto piv = rref_in_place(work, work.cols());
    return {piv.size(), std::move(piv)};
}

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
    FpMatrix work = m;
    auto piv = rref_in_place(work, work.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    const PrimeField& f = m.field();
    std::vector<FpVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        FpVector v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(work.at(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FpVector> solve(const FpMatrix& m, std::span<const Residue> rhs) {
    if (rhs.size() != m.rows())
        throw DimensionMismatch("rhs length " + std::to_string(rhs.size()) + " != rows " +
                                std::to_string(m.rows()));
    FpMatrix aug(m.p(), m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.at(r, c));
        aug.set(r, m.cols(), rhs[r]);
    }
    auto piv = rref_in_place(aug, m.cols());
    for (std::size_t r = piv.size(); r < m.rows(); ++r)
        if (aug.at(r, m.cols()) != 0) return std::nullopt;
    FpVector x(m.cols(), 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, m.cols());
    return x;
}

std::size_t span_rank(std::uint32_t p, std::size_t length, const std::vector<FpVector>& vecs) {
    if (vecs.empty() || length == 0) return 0;
    // Rank via the shorter orientation.
    FpMatrix m(p, vecs.size(), length);
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < length; ++j) m.set(i, j, vecs[i][j]);
    return rank(m);
}

SubspaceBuilder::SubspaceBuilder(std::uint32_t p, std::size_t length) : field_(p), length_(length) {}

void SubspaceBuilder::reduce(FpVector& v, FpVector* combo) const {
    for (const auto& row : rows_) {
        Residue c = v[row.pivot];
        if (!c) continue;
        Residue neg = field_.neg(c);
        for (std::size_t k = row.pivot; k < length_; ++k)
            if (row.vec[k]) v[k] = field_.add(v[k], field_.mul(neg, row.vec[k]));
        if (combo) {
            // v_original = (reduced v) + c * row, so track coefficients of the row.
            for (std::size_t k = 0; k < row.combo.size(); ++k)
                if (row.combo[k]) (*combo)[k] = field_.add((*combo)[k], field_.mul(c, row.combo[k]));
        }
    }
}

bool SubspaceBuilder::insert(std::span<const Residue> in) {
    if (in.size() != length_) throw DimensionMismatch("subspace vector length mismatch");
    FpVector v(in.begin(), in.end());
    FpVector combo(accepted_.size() + 1, 0);
    reduce(v, &combo);
    auto it = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
    if (it == v.end()) return false;
    std::size_t pivot = static_cast<std::size_t>(it - v.begin());
    // v_reduced = in - sum combo_k accepted_k; new row expresses v_reduced / lead.
    Residue inv = field_.inv(v[pivot]);
    for (auto& x : v) x = field_.mul(x, inv);
    FpVector row_combo(accepted_.size() + 1, 0);
    for (std::size_t k = 0; k < accepted_.size(); ++k) row_combo[k] = field_.mul(field_.neg(combo[k]), inv);
    row_combo[accepted_.size()] = inv;
    accepted_.emplace_back(in.begin(), in.end());
    for (auto& r : rows_) r.combo.resize(accepted_.size(), 0);
    // Keep rows fully reduced against the new pivot so reduce() is one pass.
    for (auto& r : rows_) {
        Residue c = r.vec[pivot];
        if (!c) continue;
        Residue neg = field_.neg(c);
        for (std::size_t k = 0; k < length_; ++k)
            if (v[k]) r.vec[k] = field_.add(r.vec[k], field_.mul(neg, v[k]));
        for (std::size_t k = 0; k < row_combo.size(); ++k)
            if (row_combo[k]) r.combo[k] = field_.add(r.combo[k], field_.mul(neg, row_combo[k]));
    }
    rows_.push_back({std::move(v), std::move(row_combo), pivot});
    std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
    return true;
}

bool SubspaceBuilder::contains(std::span<const Residue> in) const {
    if (in.size() != length_) throw DimensionMismatch("subspace vector length mismatch");
    FpVector v(in.begin(), in.end());
    reduce(v, nullptr);
    return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

std::optional<FpVector> SubspaceBuilder::coordinates(std::span<const Residue> in) const {
    if (in.size() != length_) throw DimensionMismatch("subspace vector length mismatch");
    FpVector v(in.begin(), in.end());
    FpVector combo(accepted_.size(), 0);
    reduce(v, &combo);
    if (!std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; })) return std::nullopt;
    return combo;
}

Subquotient::Subquotient(std::uint32_t p, std::size_t length, const std::vector<FpVector>& z_span,
                         const std::vector<FpVector>& b_span)
    : p_(p), all_(p, length) {
    for (const auto& b : b_span) all_.insert(b);
    b_dim_ = all_.dim();
    for (const auto& z : z_span)
        if (all_.insert(z)) reps_.push_back(z);
}

FpVector Subquotient::coordinates(std::span<const Residue> v) const {
    auto c = all_.coordinates(v);
    if (!c) throw Error("vector outside the numerator of a subquotient");
    return FpVector(c->begin() + static_cast<std::ptrdiff_t>(b_dim_), c->end());
}

bool Subquotient::in_numerator(std::span<const Residue> v) const { return all_.contains(v); }

}  // namespace grext
