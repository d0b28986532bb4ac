#pragma once

// Finite-dimensional filtered augmented algebras and their modules.
//
// An algebra is presented on a basis b_0..b_{D-1} with b_0 the unit. Each
// basis element carries a weight w(b_i) >= 0 and Fil^i A is the span of the
// basis elements of weight >= i (an adapted basis). Graded algebras are the
// special case where every structure constant is weight-homogeneous.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "grext/linalg.hpp"

namespace grext {

struct Term {
    std::uint32_t index;
    Residue coeff;
    bool operator==(const Term&) const = default;
};
/// Sparse vector: terms sorted by index, no zero coefficients.
using Combo = std::vector<Term>;

Combo to_combo(std::span<const Residue> dense);
FpVector to_dense(const Combo& c, std::size_t length);

/// Raw presentation as read from JSON or produced by a builder.
struct AlgebraData {
    std::uint32_t p = 2;
    std::vector<std::string> names;
    std::size_t unit = 0;
    std::vector<Combo> table;  // table[i*D + j] = b_i * b_j
    std::vector<Residue> aug;
    std::vector<int> weights;
    /// Optional non-adapted filtration: filtration[i-1] spans Fil^i, i >= 1,
    /// as coordinate vectors in the given basis. Overrides weights.
    std::optional<std::vector<std::vector<FpVector>>> filtration;
};

class FilteredAlgebra {
public:
    /// Validates the presentation; re-bases when the filtration is given as
    /// subspaces or the unit is not b_0. Throws AxiomViolation naming the
    /// first violated axiom.
    static FilteredAlgebra make(const AlgebraData& data);

    std::uint32_t p() const { return field_.p(); }
    const PrimeField& field() const { return field_; }
    std::size_t dim() const { return weights_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    const Combo& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    Residue aug(std::size_t i) const { return aug_[i]; }
    const std::vector<Residue>& augmentation() const { return aug_; }
    int weight(std::size_t i) const { return weights_[i]; }
    const std::vector<int>& weights() const { return weights_; }
    int max_weight() const;
    /// dim Fil^i A.
    std::size_t fil_dim(int i) const;
    /// Weight-homogeneous multiplication.
    bool is_graded() const;

    FpVector multiply(std::span<const Residue> x, std::span<const Residue> y) const;
    AlgebraData data() const;

private:
    FilteredAlgebra(PrimeField f) : field_(f) {}
    PrimeField field_;
    std::vector<std::string> names_;
    std::vector<Combo> table_;
    std::vector<Residue> aug_;
    std::vector<int> weights_;
};

/// Connected or not, a graded algebra is a filtered algebra whose structure
/// constants are homogeneous; degrees are the weights. Truncated models of
/// infinite algebras record the degree through which they are exact, and
/// polynomial models record their variable degrees.
class GradedAlgebra {
public:
    static constexpr int kExact = std::numeric_limits<int>::max();

    explicit GradedAlgebra(FilteredAlgebra a, int exact_through = kExact,
                           std::optional<std::vector<int>> polynomial_degrees = std::nullopt);

    const FilteredAlgebra& algebra() const { return a_; }
    std::size_t dim() const { return a_.dim(); }
    std::uint32_t p() const { return a_.p(); }
    int degree(std::size_t i) const { return a_.weight(i); }
    bool connected() const;
    int exact_through() const { return exact_through_; }
    const std::optional<std::vector<int>>& polynomial_degrees() const { return poly_; }

private:
    FilteredAlgebra a_;
    int exact_through_;
    std::optional<std::vector<int>> poly_;
};

GradedAlgebra associated_graded(const FilteredAlgebra& a);
/// Tensor product with componentwise multiplication and summed weights.
FilteredAlgebra tensor(const FilteredAlgebra& a, const FilteredAlgebra& b);
GradedAlgebra tensor_graded(const GradedAlgebra& a, const GradedAlgebra& b);
/// A / Fil^j A.
FilteredAlgebra truncate(const FilteredAlgebra& a, int j);

struct ModuleData {
    std::uint32_t p = 2;
    std::vector<std::string> names;
    std::vector<Combo> table;  // table[i*dimM + j] = b_i * m_j
    std::vector<int> weights;
};

class FilteredModule {
public:
    static FilteredModule make(const FilteredAlgebra& a, const ModuleData& data);

    std::uint32_t p() const { return field_.p(); }
    const PrimeField& field() const { return field_; }
    std::size_t dim() const { return weights_.size(); }
    std::size_t algebra_dim() const { return algebra_dim_; }
    const Combo& act(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    int weight(std::size_t j) const { return weights_[j]; }
    const std::vector<int>& weights() const { return weights_; }
    const std::string& name(std::size_t j) const { return names_[j]; }
    /// Smallest i with Fil^i M = 0.
    int mu() const;
    /// Largest i with Fil^i M = M.
    int nu() const;
    bool is_graded(const FilteredAlgebra& a) const;

    FpVector act(std::size_t i, std::span<const Residue> m) const;
    ModuleData data() const;

private:
    FilteredModule(PrimeField f) : field_(f) {}
    PrimeField field_;
    std::size_t algebra_dim_ = 0;
    std::vector<std::string> names_;
    std::vector<Combo> table_;
    std::vector<int> weights_;
};

int amplitude(const FilteredModule& m);

FilteredModule trivial_module(const FilteredAlgebra& a, int weight = 0);
FilteredModule regular_module(const FilteredAlgebra& a);
/// A / Fil^j A as a left module.
FilteredModule quotient_module(const FilteredAlgebra& a, int j);
FilteredModule direct_sum(const FilteredAlgebra& a, const FilteredModule& m, const FilteredModule& n);
FilteredModule shift(const FilteredAlgebra& a, const FilteredModule& m, int c);
FilteredModule associated_graded(const FilteredAlgebra& a, const FilteredModule& m);
/// M ⊠ N over tensor(a, b).
FilteredModule external_tensor(const FilteredAlgebra& a, const FilteredAlgebra& b, const FilteredModule& m,
                               const FilteredModule& n);

/// Unital algebra map given by the images of the source basis (columns).
class AlgebraMorphism {
public:
    /// Throws MorphismInvalid unless unital, multiplicative, augmented and
    /// filtration-preserving.
    AlgebraMorphism(const FilteredAlgebra& source, const FilteredAlgebra& target, FpMatrix images);

    const FpMatrix& matrix() const { return images_; }
    std::size_t source_dim() const { return images_.cols(); }
    std::size_t target_dim() const { return images_.rows(); }
    /// Keeps only components of equal weight (the induced map on gr).
    AlgebraMorphism graded(const FilteredAlgebra& source, const FilteredAlgebra& target) const;
    bool is_identity() const;

private:
    struct Unchecked {};
    AlgebraMorphism(FpMatrix images, Unchecked) : images_(std::move(images)) {}
    FpMatrix images_;
    friend AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f);
};

/// g ∘ f.
AlgebraMorphism compose(const AlgebraMorphism& g, const AlgebraMorphism& f);
AlgebraMorphism identity_morphism(const FilteredAlgebra& a);
/// f ⊗ g between tensor products (as built by `tensor`).
AlgebraMorphism tensor_morphism(const FilteredAlgebra& source, const FilteredAlgebra& target, const AlgebraMorphism& f,
                                const AlgebraMorphism& g);
/// M viewed as a module over the source of f.
FilteredModule restrict_module(const FilteredAlgebra& source, const FilteredAlgebra& target,
                               const AlgebraMorphism& f, const FilteredModule& m);

// ---- builders -------------------------------------------------------------

struct FiniteGroup {
    std::vector<std::vector<std::uint32_t>> table;  // table[g][h] = g*h
    std::uint32_t identity = 0;
    std::size_t order() const { return table.size(); }

    static FiniteGroup cyclic(std::uint32_t n);
    static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);
    /// Validates closure, associativity, identity and inverses.
    void validate() const;
};

struct GroupAlgebra {
    FilteredAlgebra algebra;
    /// Column g holds the coordinates of the group element g in the adapted basis.
    FpMatrix element_coords;
};

/// F_p[G] filtered by powers of the augmentation ideal, on an adapted basis
/// built from products of (g - 1). Throws NotAPGroup unless |G| is a power of p.
GroupAlgebra group_algebra(std::uint32_t p, const FiniteGroup& g);

struct Subalgebra {
    FilteredAlgebra algebra;
    AlgebraMorphism inclusion;
};

/// The subalgebra spanned by the given vectors (must contain 1 and be closed
/// under multiplication) with the induced filtration A' ∩ Fil^i A.
Subalgebra subalgebra(const FilteredAlgebra& a, const std::vector<FpVector>& span);
/// F_p[H] inside a group algebra, for H given by its elements.
Subalgebra group_subalgebra(const GroupAlgebra& ga, const std::vector<std::uint32_t>& elements);
/// The map B -> A' when both are subalgebras of A with image(B) inside image(A').
AlgebraMorphism factor_inclusion(const Subalgebra& outer, const Subalgebra& inner);

/// Skew-commutative monomial algebra on variables x_1..x_d of positive
/// degrees: x_j x_i = q_ij x_i x_j (q symmetric with q_ii = 1, entries ±1),
/// modulo the monomials divisible by one of `zero_monomials` (exponent vectors)
/// and everything of degree > truncation.
struct SkewPolynomialSpec {
    std::uint32_t p = 3;
    std::vector<int> degrees;
    std::vector<std::vector<int>> q;  // empty = commutative
    std::vector<std::vector<int>> zero_monomials;
    int truncation = GradedAlgebra::kExact;
    std::vector<std::string> variable_names;
};
GradedAlgebra skew_polynomial_algebra(const SkewPolynomialSpec& spec);

/// F_p[x]/(x^n), deg x = degree.
GradedAlgebra truncated_polynomial(std::uint32_t p, int n, int degree = 1);
/// F_p[x_1..x_d]/(degree > t), marked as a truncation of the polynomial ring.
GradedAlgebra polynomial_model(std::uint32_t p, const std::vector<int>& degrees, int t);
/// Exponent vectors of the basis of polynomial_model(p, degrees, t), in basis order.
std::vector<std::vector<int>> polynomial_exponents(const std::vector<int>& degrees, int t);
/// The map of polynomial models (same truncation) sending x_i to Σ_j c(j, i) y_j.
/// Throws MorphismInvalid unless every image is homogeneous of the degree of x_i.
AlgebraMorphism polynomial_morphism(const GradedAlgebra& source, const GradedAlgebra& target, const FpMatrix& c);
GradedAlgebra exterior_algebra(std::uint32_t p, int d);

/// Noncommutative monomial algebra: words over d letters (with degrees) that
/// avoid every forbidden subword and have degree <= truncation.
GradedAlgebra word_algebra(std::uint32_t p, const std::vector<int>& degrees,
                           const std::vector<std::vector<int>>& forbidden, int truncation);

/// Raises weights at random while keeping the filtration axioms, then applies
/// a random weight-unitriangular change of basis. The result is a filtered
/// algebra whose multiplication is in general not homogeneous.
FilteredAlgebra random_filtered(const FilteredAlgebra& a, std::uint64_t seed, int weight_bumps);

/// Re-expresses an algebra on a new basis (columns of `basis`, first column
/// must be the unit) with the given weights. Used by every builder.
FilteredAlgebra rebase(const FilteredAlgebra& a, const FpMatrix& basis, const std::vector<int>& weights,
                       std::vector<std::string> names = {});

}  // namespace grext
