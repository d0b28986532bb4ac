#pragma once

// Bar resolution B_n A = A^{⊗(n+1)} and the cochain complex
// Hom_A(B_• A, M) = Hom(A^{⊗n}, M) computing Ext_A(k, M).
//
// Tuples t = (t_1..t_n) of basis indices are numbered with the first factor
// most significant. A cochain is a vector indexed by (t, j) -> t * dim M + j,
// the coefficient of m_j in φ(b_t).

#include <cstddef>
#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "grext/algebra.hpp"

namespace grext {

inline constexpr int kDefaultMaxBarDegree = 4;
inline constexpr std::size_t kDefaultCochainCap = 200000;

std::size_t int_pow(std::size_t base, int exp);
std::vector<std::uint32_t> tuple_digits(std::size_t index, std::size_t base, int length);
int tuple_weight(const FilteredAlgebra& a, std::size_t index, int length);

/// d_n : B_n A -> B_{n-1} A on the tuple basis. Throws TruncationExceeded
/// unless 1 <= n <= n_max.
FpMatrix bar_differential(const FilteredAlgebra& a, int n, int n_max = kDefaultMaxBarDegree);

using SparseColumn = std::vector<std::pair<std::size_t, Residue>>;

class HomComplex {
public:
    /// Cochains in degrees 0..n_max. Throws ResourceCapExceeded when
    /// dim C^{n_max} exceeds cap.
    HomComplex(const FilteredAlgebra& a, const FilteredModule& m, int n_max, std::size_t cap = kDefaultCochainCap);

    const FilteredAlgebra& algebra() const { return a_; }
    const FilteredModule& module() const { return m_; }
    int n_max() const { return n_max_; }
    std::uint32_t p() const { return a_.p(); }
    std::size_t dim(int n) const;
    /// Filtration degree of the elementary cochain: w(m_j) - Σ w(t_k).
    int degree(int n, std::size_t idx) const;
    /// True when the algebra and module are graded; then δ preserves degree.
    bool graded() const { return graded_; }

    /// δ applied to the elementary cochain idx of C^n (n < n_max).
    SparseColumn coboundary_column(int n, std::size_t idx) const;
    /// Dense δ^n : C^n -> C^{n+1}.
    FpMatrix coboundary(int n) const;
    /// δ^n restricted to the given cochain indices; rows listed in `rows`
    /// (entries outside `rows` must vanish or are reported as an error).
    FpMatrix coboundary_block(int n, const std::vector<std::size_t>& cols, const std::vector<std::size_t>& rows) const;
    /// Cochain indices of C^n grouped by degree.
    std::map<int, std::vector<std::size_t>> degree_blocks(int n) const;

private:
    FilteredAlgebra a_;
    FilteredModule m_;
    int n_max_;
    bool graded_;
    // producing_[k] = pairs (x, y, c) with b_x b_y containing c b_k
    std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, Residue>>> producing_;
};

struct ExtDegree {
    int n = 0;
    std::size_t dim = 0;
    std::vector<FpVector> representatives;
    /// Internal degree of each representative (graded inputs) or its
    /// filtration degree as a cochain otherwise.
    std::vector<int> rep_degrees;
    std::map<int, std::size_t> dims_by_degree;  // graded inputs only
    std::shared_ptr<const Subquotient> quotient;
    std::size_t cochain_dim = 0;
    std::size_t cocycle_dim = 0;
    std::size_t coboundary_dim = 0;

    /// Coordinates of a cocycle's class.
    FpVector coordinates(std::span<const Residue> cocycle) const { return quotient->coordinates(cocycle); }
};

struct ExtResult {
    bool graded = false;
    std::vector<ExtDegree> degrees;  // Ext^0 .. Ext^{n_max-1}
    std::vector<std::size_t> dims() const;
};

/// Ext^n_A(k, M) for n < n_max from the bar complex (cochains through n_max).
ExtResult ext_via_bar(const FilteredAlgebra& a, const FilteredModule& m, int n_max,
                      std::size_t cap = kDefaultCochainCap);
ExtResult ext_from_complex(const HomComplex& c);

/// φ ∘ f^{⊗n} for a cochain φ over the target.
FpVector pullback_cochain(const AlgebraMorphism& f, std::span<const Residue> phi, int n, std::size_t module_dim);

/// Matrix of Ext^n_A(k, M) -> Ext^n_{A'}(k, M) for f : A' -> A, with columns
/// indexed by the target-side basis of `ext_a` and rows by `ext_src`.
FpMatrix restriction_matrix(const AlgebraMorphism& f, const ExtDegree& ext_a, const ExtDegree& ext_src,
                            std::size_t module_dim);

struct RestrictionResult {
    FpMatrix matrix;
    ExtResult source_ext;  // over A'
    ExtResult target_ext;  // over A
};
RestrictionResult restriction_map(const FilteredAlgebra& source, const FilteredAlgebra& target,
                                  const AlgebraMorphism& f, const FilteredModule& m, int n,
                                  std::size_t cap = kDefaultCochainCap);

struct GrBarReport {
    int n = 0;
    int i = 0;
    std::size_t lhs = 0;  // dim gr^i B_n A from the tensor filtration
    std::size_t rhs = 0;  // Σ over compositions of Π dim gr^{i_j} A
    bool filtration_preserved = true;
    bool intertwines = true;
    bool pass() const { return lhs == rhs && filtration_preserved && intertwines; }
};
GrBarReport gr_bar_compare(const FilteredAlgebra& a, int n, int i);

struct GrHomReport {
    int n = 0;
    int s = 0;
    std::size_t lhs = 0;  // dim gr^s Hom_A(B_n A, M)
    std::size_t rhs = 0;  // dim Hom^s_{gr A}(gr B_n A, gr M)
    bool pass() const { return lhs == rhs; }
};
GrHomReport gr_hom_compare(const FilteredAlgebra& a, const FilteredModule& m, int n, int s);

}  // namespace grext
