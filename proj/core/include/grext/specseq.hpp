#pragma once

// The spectral sequence of a filtered cochain complex with an adapted basis,
// and the vanishing certificates built on it.
//
// Page convention (E_r^{i,j} sits in total degree n = i + j):
//   Z_r^{i,j} = Fil^i K^n ∩ d^{-1}(Fil^{i+r} K^{n+1})
//   E_r^{i,j} = Z_r^{i,j} / (Z_{r-1}^{i+1,j-1} + d Z_{r-1}^{i-r+1,j+r-2})
// with Z_{-1}^i = Fil^i.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grext/algebra.hpp"

namespace grext {

/// K^0..K^{n_max}; Fil^s K^n is spanned by the basis vectors of degree >= s.
struct FilteredCochainComplex {
    std::uint32_t p = 2;
    std::vector<std::vector<int>> degrees;  // per n, one entry per basis vector
    std::vector<FpMatrix> differentials;     // d^n : K^n -> K^{n+1}, n < n_max

    int n_max() const { return static_cast<int>(degrees.size()) - 1; }
    std::size_t dim(int n) const { return degrees[static_cast<std::size_t>(n)].size(); }
    std::size_t fil_dim(int n, int s) const;
    /// Smallest and largest basis degree over all K^n (0, 0 when empty).
    std::pair<int, int> degree_range() const;
    /// d∘d = 0 and d preserves the filtration.
    bool valid() const;
};

/// Hom_A(B_n A, M) for n <= n_max with the filtration by cochain degree.
FilteredCochainComplex build_filtered_hom_complex(const FilteredAlgebra& a, const FilteredModule& m, int n_max);

using Bidegree = std::pair<int, int>;  // (i, j)

struct SpectralPage {
    int r = 0;
    std::map<Bidegree, std::size_t> dims;  // nonzero entries only
    std::map<Bidegree, std::shared_ptr<const Subquotient>> terms;
    /// d_r : E_r^{i,j} -> E_r^{i+r,j-r+1} in the bases of `terms`.
    std::map<Bidegree, FpMatrix> differentials;

    std::size_t dim(int i, int j) const;
    /// Σ_i dim E^{i, n-i}.
    std::size_t total(int n) const;
};

/// Page r for total degrees n < n_max (the top degree lacks d^{n_max}).
SpectralPage page(const FilteredCochainComplex& c, int r);
/// A page index beyond which every page equals E_∞.
int stable_page(const FilteredCochainComplex& c);
SpectralPage e_infinity(const FilteredCochainComplex& c);
/// dim E_{r+1}^{i,j} equals the cohomology of (E_r, d_r) at every (i, j).
bool page_identity_holds(const SpectralPage& er, const SpectralPage& next);

/// dim Fil^s H^n for the filtration by images of H^n(Fil^s K).
std::size_t cohomology_fil_dim(const FilteredCochainComplex& c, int n, int s);

struct BookkeepingReport {
    std::vector<std::size_t> e_infinity_totals;  // Σ_i dim E_∞^{i,n-i}
    std::vector<std::size_t> ext_dims;            // from ext_via_bar
    /// E_∞^{i,n-i} = Fil^i H^n / Fil^{i+1} H^n for every i.
    bool graded_pieces_match = true;
    bool pass() const { return graded_pieces_match && e_infinity_totals == ext_dims; }
};
BookkeepingReport e_infinity_bookkeeping(const FilteredAlgebra& a, const FilteredModule& m, int n_max);

/// E_1^{i,j} = 0 unless nu <= 2i + j < mu; returns the offending bidegrees.
std::vector<Bidegree> koszul_band_violations(const SpectralPage& e1, int nu, int mu);

/// The map E_r(A) -> E_r(A') induced by f : A' -> A (per bidegree), and
/// whether it commutes with d_r.
struct PageMorphism {
    std::map<Bidegree, FpMatrix> maps;
    bool commutes = true;
};
PageMorphism page_morphism(const AlgebraMorphism& f, const FilteredCochainComplex& target_complex,
                           const FilteredCochainComplex& source_complex, std::size_t module_dim, int r);

enum class ShiftVerdict { Verified, HypothesisFailed };
const char* shift_verdict_name(ShiftVerdict v);

struct ShiftReport {
    ShiftVerdict verdict = ShiftVerdict::Verified;
    std::size_t graded_restriction_rank = 0;
    /// Filtration levels i at which Fil^i Ext^n_A does not land in Fil^{i+1} Ext^n_{A'}.
    std::vector<int> failures;
    std::size_t source_ext_dim = 0;  // Ext^n over A'
    std::size_t target_ext_dim = 0;  // Ext^n over A
    bool pass() const { return verdict == ShiftVerdict::Verified && failures.empty(); }
};

/// Rank of Ext^n_{gr A}(k, gr M) -> Ext^n_{gr A'}(k, gr M) along gr f.
std::size_t graded_restriction_rank(const FilteredAlgebra& source, const FilteredAlgebra& target,
                                    const AlgebraMorphism& f, const FilteredModule& m, int n);

ShiftReport graded_shift_check(const FilteredAlgebra& source, const FilteredAlgebra& target,
                               const AlgebraMorphism& f, const FilteredModule& m, int n);

/// A = algebras[0] ⟵ algebras[1] ⟵ ...; links[k] : algebras[k+1] -> algebras[k].
struct AlgebraChain {
    std::vector<FilteredAlgebra> algebras;
    std::vector<AlgebraMorphism> links;
    std::size_t length() const { return links.size(); }
};

/// Nested subgroups H_1 ⊃ H_2 ⊃ ... of G (element lists), as group subalgebras.
AlgebraChain subgroup_chain(const GroupAlgebra& ga, const std::vector<std::vector<std::uint32_t>>& subgroups);

enum class KozVerdict { Vanishes, HypothesisFailed, ChainTooShort, NonVanishing };
const char* koz_verdict_name(KozVerdict v);

struct KozCertificate {
    int n = 0;
    int amplitude = 0;
    int m_star = 0;
    /// "uniform" when gr A is Koszul, otherwise "eventually-zero".
    std::string regime;
    std::string koszul_reason;
    std::vector<bool> links;                  // hypothesis per link
    std::vector<std::size_t> link_graded_ranks;
    std::vector<bool> shift_verified;         // per link where the hypothesis holds
    std::optional<std::size_t> failed_link;
    /// Rank of Ext^n_A -> Ext^n_{A^(k)} for k = 1..min(length, m*).
    std::vector<std::size_t> composed_ranks;
    std::optional<std::size_t> first_zero;    // smallest k with composed rank 0
    std::optional<FpMatrix> restriction_at_m_star;
    KozVerdict verdict = KozVerdict::ChainTooShort;
    /// The uniform bound is claimed (Koszul regime, all links hold, chain reaches m*).
    bool asserted = false;
};

KozCertificate koz_certificate(const AlgebraChain& chain, const FilteredModule& m, int n);

}  // namespace grext
