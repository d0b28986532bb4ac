#pragma once

// Minimal graded free resolutions of k over connected graded algebras.
//
// P_n = ⊕_g A e_g; an element is a flat vector indexed g * dim A + k (the
// coefficient of b_k e_g). T_n(e_g) ∈ P_{n-1} is stored for every generator.

#include <map>
#include <string>
#include <memory>
#include <utility>
#include <vector>

#include "grext/algebra.hpp"

namespace grext {

struct ResolutionStep {
    std::vector<int> degrees;     // generator degrees of P_n
    std::vector<FpVector> images;  // T_n(e_g) in P_{n-1}; empty for n = 0
    /// Every generator of P_n is known (none hidden above the degree bound).
    bool complete = true;
};

class MinimalResolution {
public:
    const GradedAlgebra& algebra() const { return *alg_; }
    int n_max() const { return static_cast<int>(steps_.size()) - 1; }
    int d_max() const { return d_max_; }
    const ResolutionStep& step(int n) const { return steps_[static_cast<std::size_t>(n)]; }
    std::size_t betti(int n) const { return step(n).degrees.size(); }
    /// Built from the Koszul complex of a polynomial model: exact, and P_n = 0 for n > #variables.
    bool koszul_complex() const { return koszul_complex_; }
    /// P_n is known to vanish for every n beyond the computed range.
    bool proven_zero_beyond() const { return proven_zero_beyond_; }
    /// Image of a module element x ∈ P_n under T_n.
    FpVector apply_differential(int n, std::span<const Residue> x) const;
    std::size_t free_dim(int n) const { return betti(n) * alg_->dim(); }
    /// Degree of the basis element b_k e_g of P_n.
    int free_degree(int n, std::size_t flat) const;

private:
    friend MinimalResolution minimal_resolution(const GradedAlgebra& g, int n_max, int d_max);
    std::shared_ptr<const GradedAlgebra> alg_;
    std::vector<ResolutionStep> steps_;
    int d_max_ = 0;
    bool koszul_complex_ = false;
    bool proven_zero_beyond_ = false;
};

/// Requires a connected algebra. Polynomial models use the Koszul complex;
/// otherwise generators are chosen degree by degree (lowest degree first,
/// then echelon order) up to internal degree d_max.
MinimalResolution minimal_resolution(const GradedAlgebra& g, int n_max, int d_max);

enum class Verdict { Yes, No, Inconclusive };
const char* verdict_name(Verdict v);

struct KoszulReport {
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
};
/// Every generator of P_n has degree n (checked through the computed range).
KoszulReport is_koszul(const MinimalResolution& r);

/// Entries of every T_n lie in the augmentation ideal.
bool is_minimal(const MinimalResolution& r);
/// T_{n-1} ∘ T_n = 0 for all computed n.
bool is_complex(const MinimalResolution& r);

struct MinresExtDegree {
    int n = 0;
    std::size_t dim = 0;
    std::map<int, std::size_t> dims_by_degree;  // internal degree i -> dim
    std::vector<FpVector> representatives;      // cochains on generators: g * dim M + j
    std::shared_ptr<const Subquotient> quotient;
    /// Every internal degree is exact; otherwise only degrees >= reliable_from are.
    bool reliable = true;
    int reliable_from = 0;
};

struct BigradedExt {
    std::vector<MinresExtDegree> degrees;  // n = 0..n_max
    /// (i, j) with i the internal degree and i + j = n.
    std::map<std::pair<int, int>, std::size_t> table() const;
    std::vector<std::size_t> totals() const;
};

/// Cohomology of Hom_A(P_•, M) for n <= n_max (the resolution must reach n_max + 1).
/// A map e_g -> m_j has internal degree w(m_j) - deg(g).
BigradedExt graded_ext(const MinimalResolution& r, const FilteredModule& m, int n_max);

/// Matrix of Ext^n_A(k, M) -> Ext^n_{A'}(k, M) along a graded morphism
/// f : A' -> A, computed by lifting id_k to a chain map P'_• -> P_•.
FpMatrix ext_restriction_via_minres(const MinimalResolution& source, const MinimalResolution& target,
                                    const AlgebraMorphism& f, const FilteredModule& m, int n);

struct KoszulDualReport {
    int d = 0;
    std::vector<std::size_t> betti;
    std::vector<std::size_t> expected;  // C(d, n)
    std::vector<std::size_t> ext_totals;
    bool proven_zero_beyond = false;
    /// Bar cross-check on F_p[x_1..x_d]/(x)^{t+1}, internal degrees >= -t, n <= 2.
    bool bar_cross_check_run = false;
    bool bar_cross_check = true;
    bool pass() const;
};
KoszulDualReport koszul_dual_check(std::uint32_t p, int d, int n_max, bool with_bar = true);

struct KunnethReport {
    std::vector<std::size_t> lhs;  // Ext^n over the tensor product
    std::vector<std::size_t> rhs;  // convolution
    std::vector<bool> reliable;
    bool pass() const;
};
KunnethReport kunneth_check(const GradedAlgebra& ga, const GradedAlgebra& gb, const FilteredModule& ma,
                            const FilteredModule& mb, int n_max, int d_max);

std::size_t binomial(int n, int k);

}  // namespace grext
