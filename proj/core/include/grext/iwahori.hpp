#pragma once

// Congruence subgroups of GL_n, their Iwahori factorization, the groups
// K ∩ sN^{p^m}s^-1 for dominant s = diag(p^{a_1}, ..., p^{a_n}), and the
// graded certificates built from them.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grext/lazard.hpp"
#include "grext/specseq.hpp"

namespace grext {

struct CongruenceInstance {
    std::uint32_t p = 3;
    int n = 2;
    int r = 1;
    int precision = 4;
    PValuedGroupInstance group;  // N = K_r with the entry valuation
    PValuedGroupInstance lower, torus, upper;  // N ∩ Ū, N ∩ T, N ∩ U
};
CongruenceInstance congruence_instance(std::uint32_t p, int n, int r, int precision);

/// Exponents a_1 >= ... >= a_n >= 0 of s.
using DominantCocharacter = std::vector<int>;
/// Lexicographic list of tuples with a_1 <= bound; modulo the center keeps a_n = 0.
std::vector<DominantCocharacter> dominant_cocharacters(int n, int bound, bool modulo_center = false);
std::string to_string(const DominantCocharacter& s);

/// s g s^-1, and s^-1 g s (throws NotInSubgroup when it is not integral).
PMatrix conjugate(const ResidueRing& ring, const DominantCocharacter& s, const PMatrix& g);
PMatrix conjugate_inverse(const ResidueRing& ring, const DominantCocharacter& s, const PMatrix& g);

/// Throws NotInSubgroup unless g ∈ N; the factors lie in N ∩ Ū, N ∩ T, N ∩ U.
TriangularFactors iwahori_factorize(const PMatrix& g, const CongruenceInstance& c);

struct FactorizationReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty() && checked > 0; }
};
/// Round trip on samples, or on every element of N when `exhaustive`.
FactorizationReport factorization_check(const CongruenceInstance& c, std::size_t samples, std::uint64_t seed,
                                        bool exhaustive = false);

struct ConjugationReport {
    DominantCocharacter s;
    std::size_t checked = 0;
    bool upper_contained = true;  // s(N∩U)s^-1 ⊆ N∩U
    bool lower_contains = true;   // s(N∩Ū)s^-1 ⊇ N∩Ū
    std::vector<std::string> failures;
    bool pass() const { return upper_contained && lower_contains; }
};
ConjugationReport s_conjugation_check(const CongruenceInstance& c, const DominantCocharacter& s, std::size_t samples,
                                      std::uint64_t seed);

struct OmegaMinReport {
    std::size_t tested = 0, skipped = 0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty() && tested > 0; }
};
/// ω(g) = min(ω(ū), ω(t), ω(u)) on samples of g (any profile group with LDU factors inside it).
OmegaMinReport omega_min_formula_check(const PValuedGroupInstance& g, std::size_t samples, std::uint64_t seed);

/// K ∩ sN^{p^m}s^-1 with ω_s(sns^-1) = ω(n), as a profile group, and its
/// three factors (K ∩ sN^{p^m}s^-1 ∩ Ū, (N ∩ T)^{p^m}, (sNs^-1 ∩ U)^{p^m}).
struct SConjugate {
    DominantCocharacter s;
    int m = 0;
    PValuedGroupInstance group, lower, torus, upper;
};
/// Throws PrecisionExhausted unless r + m + a_1 - a_n < precision.
SConjugate s_conjugate(const CongruenceInstance& c, const DominantCocharacter& s, int m);
PValuedGroupInstance s_conjugate_group(const CongruenceInstance& c, const DominantCocharacter& s, int m);
/// The same instance at a precision with room for s and m.
CongruenceInstance with_headroom(const CongruenceInstance& c, const DominantCocharacter& s, int m);

struct GriwaReport {
    DominantCocharacter s;
    std::size_t rank_lower = 0, rank_torus = 0, rank_upper = 0, rank_total = 0;
    std::vector<int> degrees_lower, degrees_torus, degrees_upper, degrees_total;  // sorted
    bool multiset_match = false;
    bool pass() const { return multiset_match && rank_lower + rank_torus + rank_upper == rank_total; }
};
GriwaReport griwa_check(const CongruenceInstance& c, const DominantCocharacter& s);

/// Builds the module over the graded model of the Ū-factor.
using LowerModuleBuilder = std::function<FilteredModule(const GradedAlgebra&)>;

struct AchkSummand {
    int a = 0, b = 0, c = 0;
    std::size_t dim = 0;
    std::size_t restriction_rank = 0;
};

struct AchkReport {
    DominantCocharacter s;
    int n = 0;
    int dim_u = 0;
    bool applicable = false;
    std::size_t lower_rank = 0;
    /// dim Ext^j over the Ū-factor, j = 0..n.
    std::vector<std::size_t> lower_ext_dims;
    bool lower_vanishes = false;  // Ext^j = 0 for dim U < j <= n
    bool torus_pi_cokernel_zero = false, upper_pi_cokernel_zero = false;
    bool torus_restrictions_zero = false, upper_restrictions_zero = false;  // degrees 1..n
    /// Ext over the product model, and the convolution of the factor Ext dimensions.
    std::vector<std::size_t> kunneth_lhs, kunneth_rhs;
    /// The same comparison on the tensor product resolved without the Koszul
    /// complex; only run when the product is small.
    std::optional<bool> kunneth_generic;
    bool kunneth_match = false;
    std::vector<AchkSummand> summands;  // a + b + c = n
    bool restriction_zero = false;
    bool holds = false;
    std::string failed_ingredient;
};
AchkReport achk_certificate(const CongruenceInstance& c, const DominantCocharacter& s, int n,
                            const LowerModuleBuilder& module = {});

/// Amplitude of a module over gr Λ(N), restricted to gr Λ(N ∩ s^-1Ks), per s.
struct UnifReport {
    std::vector<DominantCocharacter> s;
    std::vector<int> amplitudes;
    int bound = 0;
    bool uniform = false;
};
/// The module is `weight_dim` copies of the trivial module (a weight trivial on N).
UnifReport unif_check(const CongruenceInstance& c, const std::vector<DominantCocharacter>& s, int weight_dim = 1);

/// The chain A^(m) = gr Λ(K ∩ sN^{p^m}s^-1), m = 0..m*, as products of the
/// three factor models, and the vanishing certificate over it.
KozCertificate dimu_certificate(const CongruenceInstance& c, const DominantCocharacter& s, int n,
                                const LowerModuleBuilder& module = {});

}  // namespace grext
