#pragma once

// p-valued groups realized as matrix groups over Z/p^R, their graded
// F_p[π]-modules and p^m-power subgroups.
//
// Every instance is a "profile group": g - 1 vanishes outside a list of
// coordinates (i, j) and has valuation >= level there. The valuation is
//   ω(g) = offset + min over coordinates of (v((g-1)_ij) - shift_ij),
// computed from the entries of g, or from the entries of its triangular
// factors for the chart variant.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grext/linalg.hpp"

namespace grext {

/// Z/p^R with p^R < 2^31.
class ResidueRing {
public:
    ResidueRing(std::uint32_t p, int precision);

    std::uint32_t p() const { return p_; }
    int precision() const { return r_; }
    std::int64_t modulus() const { return mod_; }
    std::int64_t reduce(std::int64_t x) const {
        x %= mod_;
        return x < 0 ? x + mod_ : x;
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return reduce(a * b); }
    /// p-adic valuation of a residue; R for 0.
    int val(std::int64_t x) const;
    bool is_unit(std::int64_t x) const { return x % p_ != 0; }
    std::int64_t inv(std::int64_t unit) const;
    /// p^e, zero when e >= R.
    std::int64_t p_power(int e) const;
    /// x / p^e for x divisible by p^e, as a residue mod p^(R-e).
    std::int64_t divide_p_power(std::int64_t x, int e) const;

private:
    std::uint32_t p_;
    int r_;
    std::int64_t mod_;
};

/// Square matrix over Z/p^R, row-major.
struct PMatrix {
    std::size_t n = 0;
    std::vector<std::int64_t> a;

    PMatrix() = default;
    explicit PMatrix(std::size_t size) : n(size), a(size * size, 0) {}
    static PMatrix identity(std::size_t size);
    static PMatrix from_rows(const ResidueRing& ring, const std::vector<std::vector<std::int64_t>>& rows);

    std::int64_t at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    std::int64_t& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    bool operator==(const PMatrix&) const = default;
};

PMatrix multiply(const ResidueRing& ring, const PMatrix& x, const PMatrix& y);
/// Throws NotInSubgroup when the matrix is not invertible mod p.
PMatrix inverse(const ResidueRing& ring, const PMatrix& x);
PMatrix power(const ResidueRing& ring, const PMatrix& x, std::uint64_t k);
/// x^-1 y^-1 x y.
PMatrix commutator(const ResidueRing& ring, const PMatrix& x, const PMatrix& y);
std::string to_string(const PMatrix& x);

/// g = lower · diag · upper with unipotent triangular outer factors.
struct TriangularFactors {
    PMatrix lower, diag, upper;
};
/// Exact LDU with unit pivots; throws NotInSubgroup on a non-unit pivot.
TriangularFactors triangular_factors(const ResidueRing& ring, const PMatrix& g);

struct Coordinate {
    std::size_t i = 0, j = 0;
    int level = 0;  // v((g-1)_ij) >= level
    int shift = 0;
    bool operator==(const Coordinate&) const = default;
};

struct OmegaValue {
    int value = 0;
    /// False when the minimum may sit on an entry lost to the precision.
    bool exact = true;
    /// g = 1 at this precision; ω is undefined there.
    bool identity = false;
};

enum class OmegaKind { Entry, Chart };

struct PValuedGroupInstance {
    std::string family;
    ResidueRing ring{3, 2};
    std::size_t n = 0;
    std::vector<Coordinate> coords;
    int offset = 0;
    OmegaKind kind = OmegaKind::Entry;
    /// Perturbed valuation ω_C = ω - perturbation/denominator; degrees of the
    /// graded models are denominator·ω - perturbation.
    int denominator = 4;
    int perturbation = 1;
    std::vector<PMatrix> basis;  // one per coordinate
    bool saturated = false;
    /// This is N^{p^power} for a saturated N.
    int power = 0;

    std::uint32_t p() const { return ring.p(); }
    std::size_t rank() const { return basis.size(); }
    bool contains(const PMatrix& g) const;
    OmegaValue omega(const PMatrix& g) const;
    /// ω(n_k) on the declared levels.
    int degree(std::size_t k) const { return offset + coords[k].level - coords[k].shift; }
    int scaled_degree(std::size_t k) const { return denominator * degree(k) - perturbation; }
    /// Image of g in gr_v (ω(g) >= v), one F_p coordinate per coordinate.
    FpVector leading(const PMatrix& g, int v) const;
    PMatrix sample(std::mt19937_64& rng) const;
    /// Same element set at this precision.
    bool same_group(const PValuedGroupInstance& o) const;
};

/// Declares the perturbation C = num/den; throws InvalidInput unless
/// 0 <= C and every ω_C value stays above 1/(p-1).
void set_perturbation(PValuedGroupInstance& g, int num, int den);

/// Z_p^d with ω = min v + 1, as unipotent (d+1)x(d+1) matrices.
PValuedGroupInstance additive_group(std::uint32_t p, int d, int precision);
/// K_r = ker(GL_n(Z_p) -> GL_n(Z/p^r)).
PValuedGroupInstance congruence_group(std::uint32_t p, int n, int r, int precision, OmegaKind kind = OmegaKind::Entry);
/// Upper unitriangular 3x3 matrices congruent to 1 mod p^r.
PValuedGroupInstance heisenberg_group(std::uint32_t p, int r, int precision);
/// A profile group with basis 1 + p^level E_ij; saturation is read off the degrees.
PValuedGroupInstance profile_group(std::string family, std::uint32_t p, int precision, std::size_t n,
                                   std::vector<Coordinate> coords, int offset);

struct PValuationReport {
    std::size_t samples = 0;
    std::size_t tested_min = 0, tested_commutator = 0, tested_power = 0, tested_saturation = 0;
    /// Checks refused for lack of precision headroom.
    std::size_t skipped = 0;
    std::vector<std::string> violations;
    bool pass() const { return violations.empty() && tested_min > 0; }
};
PValuationReport pvaluation_check(const PValuedGroupInstance& g, std::size_t sample_count, std::uint64_t seed);

/// Entry ω against the chart ω on samples (they differ by the constant 1 - r).
struct ChartComparison {
    std::size_t compared = 0;
    std::size_t discrepancies = 0;
    int constant = 0;
};
ChartComparison chart_comparison(const PValuedGroupInstance& entry, const PValuedGroupInstance& chart,
                                 std::size_t sample_count, std::uint64_t seed);

struct GradedGroupModule {
    std::uint32_t p = 3;
    std::vector<std::string> labels;
    std::vector<int> degrees;         // ω(n_i)
    std::vector<int> scaled_degrees;  // denominator·ω_C(n_i)
    int denominator = 1;
    int perturbation = 0;
    /// [n_i, n_j] for i < j as coefficients of π^k n_l in gr_{d_i + d_j}.
    std::map<std::pair<std::size_t, std::size_t>, FpVector> bracket;
    bool bracket_known = true;

    std::size_t rank() const { return degrees.size(); }
    /// Abelian for the perturbed valuation (always, once C > 0).
    bool abelian() const;
    bool bracket_vanishes() const;
};
/// Throws InvalidInput when the basis is not independent at the precision.
GradedGroupModule graded_group(const PValuedGroupInstance& g);

/// H^{p^m}: levels and degrees shifted by m, basis the p^m-th powers.
PValuedGroupInstance pm_power_subgroup(const PValuedGroupInstance& g, int m);

/// The map gr H' -> gr H for a subgroup H' with the restricted valuation:
/// column i expresses the image of n'_i in the basis {π^k n_j}.
struct GradedInclusion {
    FpMatrix full;                       // coefficient of π^k n_j
    std::vector<std::vector<int>> pi_power;
    FpMatrix quotient;                   // E ⊗ gr H' -> E ⊗ gr H (the k = 0 part)
};
GradedInclusion graded_inclusion(const PValuedGroupInstance& sub, const PValuedGroupInstance& ambient);

/// E ⊗ gr H^p -> E ⊗ gr H.
FpMatrix pi_cokernel_restriction(const PValuedGroupInstance& h);

/// Restriction Ext^n_{S(E ⊗ gr H)}(k, k) -> Ext^n_{S(E ⊗ gr H^p)}(k, k) for
/// n = 1..n_max, computed from minimal resolutions of the polynomial models.
std::vector<FpMatrix> graded_ext_restrictions(const PValuedGroupInstance& sub, const PValuedGroupInstance& ambient,
                                              int n_max);

}  // namespace grext
