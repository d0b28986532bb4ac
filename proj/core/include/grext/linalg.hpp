#pragma once

// Exact linear algebra over prime fields F_p.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "grext/errors.hpp"

namespace grext {

using Residue = std::uint32_t;
using FpVector = std::vector<Residue>;

bool is_prime(std::uint64_t n);

/// Arithmetic in F_p for a machine-word prime p < 2^31.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }
    Residue add(Residue a, Residue b) const { Residue s = a + b; return s >= p_ ? s - p_ : s; }
    Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const {
        return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Residue inv(Residue a) const;
    Residue from_int(std::int64_t v) const;
    /// Signed representative in (-p/2, p/2], used only for printing.
    std::int64_t to_signed(Residue a) const;

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

/// Dense matrix over F_p, row-major. Every stored entry lies in [0, p).
class FpMatrix {
public:
    FpMatrix() : field_(2) {}
    FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);

    static FpMatrix identity(std::uint32_t p, std::size_t n);
    static FpMatrix from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows);
    static FpMatrix from_columns(std::uint32_t p, std::size_t rows, const std::vector<FpVector>& cols);

    std::uint32_t p() const { return field_.p(); }
    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Residue v) { data_[r * cols_ + c] = v % field_.p(); }
    void add_to(std::size_t r, std::size_t c, Residue v) {
        auto& e = data_[r * cols_ + c];
        e = field_.add(e, v % field_.p());
    }
    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    FpVector column(std::size_t c) const;
    FpMatrix transpose() const;
    FpMatrix select_rows(std::span<const std::size_t> idx) const;
    FpMatrix select_columns(std::span<const std::size_t> idx) const;
    FpVector apply(std::span<const Residue> v) const;
    bool is_zero() const;

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
    friend FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);
    bool operator==(const FpMatrix& o) const {
        return p() == o.p() && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    PrimeField field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

struct RankProfile {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

RankProfile rank_profile(const FpMatrix& m);
inline std::size_t rank(const FpMatrix& m) { return rank_profile(m).rank; }

/// a ⊗ b with (i, k) ↦ i * b.rows() + k and likewise for columns.
FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);

/// Basis of the right null space {v : m v = 0}, one vector per free column.
std::vector<FpVector> kernel_basis(const FpMatrix& m);

/// Some x with m x = rhs, or nullopt when the system is inconsistent.
std::optional<FpVector> solve(const FpMatrix& m, std::span<const Residue> rhs);

/// Rank of the span of a list of vectors of equal length.
std::size_t span_rank(std::uint32_t p, std::size_t length, const std::vector<FpVector>& vecs);

/// Incremental echelon basis of a subspace of F_p^n. Remembers, for each
/// stored row, its expression in terms of the vectors that were inserted, so
/// that membership tests also return coordinates.
class SubspaceBuilder {
public:
    SubspaceBuilder(std::uint32_t p, std::size_t length);

    /// Inserts v; returns true when v was independent of the current span.
    bool insert(std::span<const Residue> v);
    bool contains(std::span<const Residue> v) const;
    /// Coordinates of v over the independent inserted vectors (in insertion
    /// order), or nullopt when v is outside the span.
    std::optional<FpVector> coordinates(std::span<const Residue> v) const;

    std::size_t dim() const { return rows_.size(); }
    std::size_t length() const { return length_; }
    const PrimeField& field() const { return field_; }
    /// The independent vectors accepted by insert, in order.
    const std::vector<FpVector>& generators() const { return accepted_; }

private:
    struct Row {
        FpVector vec;
        FpVector combo;  // over accepted_ indices
        std::size_t pivot;
    };
    void reduce(FpVector& v, FpVector* combo) const;

    PrimeField field_;
    std::size_t length_;
    std::vector<Row> rows_;
    std::vector<FpVector> accepted_;
};

/// A subquotient Z / B of F_p^n with B inside Z, given by spanning sets.
/// Chooses representatives for a basis of Z / B and reduces vectors of Z to
/// coordinates in that basis.
class Subquotient {
public:
    Subquotient(std::uint32_t p, std::size_t length, const std::vector<FpVector>& z_span,
                const std::vector<FpVector>& b_span);

    std::size_t dim() const { return reps_.size(); }
    const std::vector<FpVector>& representatives() const { return reps_; }
    /// Coordinates of the class of v (v must lie in Z + B).
    FpVector coordinates(std::span<const Residue> v) const;
    bool in_numerator(std::span<const Residue> v) const;

private:
    std::uint32_t p_;
    std::size_t b_dim_;
    SubspaceBuilder all_;
    std::vector<FpVector> reps_;
};

}  // namespace grext
