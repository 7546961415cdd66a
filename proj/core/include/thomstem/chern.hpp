#pragma once

// Algebraic stand-ins for spin 4-manifolds with b1 > 0, the Chern character of the
// universal line bundle over X x Pic(X), and the Dirac index bundle over the Picard torus.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thomstem/exterior.hpp"

namespace thomstem::chern {

using ext::ExteriorClass;
using ext::Mod2Class;
using ext::Monomial;

/// Convention note carried into every report; the overall sign of c2 is not fixed by the input data.
inline constexpr std::string_view kSignConvention =
    "c2 := -ch2 with the positive interleaving sign for Omega^4/24; only c2 mod 2 feeds the Steenrod "
    "and cell computations";

/// Cohomological data of a closed spin 4-manifold: b1, the quadruple cup-product form on
/// H^1 (value on each ascending 4-subset of a basis), the signature and b2+.
struct ManifoldData {
    int b1 = 0;
    std::map<Monomial, Integer> quad_form;
    int signature = 0;
    int b_plus = 0;
    std::string label;

    Integer quadruple_product(Monomial subset) const;

    friend bool operator==(const ManifoldData&, const ManifoldData&) = default;
};

/// Validates and builds a ManifoldData. Keys of `quad_form` must be 4-subsets of {1..b1};
/// zero values are dropped.
ManifoldData make_manifold(int b1, std::map<Monomial, Integer> quad_form, int signature, int b_plus,
                           std::string label);

/// Homology 4-torus whose basis of H^1 has quadruple cup product `determinant`.
ManifoldData make_homology_torus(const Integer& determinant);

/// X1 # X2: generators of m2 are renumbered after those of m1; the quadruple form is the block sum.
ManifoldData connected_sum(const ManifoldData& m1, const ManifoldData& m2);

/// Rational class on X x T^b, written as sums of x_S ^ dt_T with the X-part first.
/// Terms of X-degree above 4 vanish on a 4-manifold and are pruned on construction.
class BigradedClass {
  public:
    using Key = std::pair<Monomial, Monomial>;
    using Terms = std::map<Key, Rational>;

    static constexpr int kMaxBaseDegree = 4;

    explicit BigradedClass(int rank) : rank_(rank) {}
    BigradedClass(int rank, Terms terms);

    static BigradedClass unit(int rank);
    /// Curvature of the universal line bundle: sum_k x_k ^ dt_k.
    static BigradedClass curvature(int rank);

    int rank() const noexcept { return rank_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(Monomial base, Monomial picard) const;

    friend bool operator==(const BigradedClass&, const BigradedClass&) = default;

  private:
    int rank_;
    Terms terms_;
};

BigradedClass add(const BigradedClass& a, const BigradedClass& b);
BigradedClass scale(const Rational& q, const BigradedClass& a);
BigradedClass multiply(const BigradedClass& a, const BigradedClass& b);

/// exp(Omega) = sum_{k<=4} Omega^k / k!; higher powers have X-degree above 4.
BigradedClass exp_curvature(int rank);

/// Integration over X: keeps the X-degree-4 terms, weighting x_S ^ dt_T by quad_form(S).
/// Returns the Picard-side classes in degrees 0, 2, 4 (entries 0, 1, 2).
std::vector<ExteriorClass> integrate_over_base(const BigradedClass& form, const ManifoldData& m);

/// ch(Ind D) = integral over X of ch(L), with A-hat(X) = 1. Entry k is ch_k in degree 2k.
/// Throws Unsupported for nonzero signature.
std::vector<ExteriorClass> chern_character_index(const ManifoldData& m);

enum class Field { quaternionic, real };

std::string_view to_string(Field f) noexcept;

/// Vector bundle over T^base_rank with its characteristic classes.
struct BundleData {
    int base_rank = 0;
    Field field = Field::quaternionic;
    int rank = 1;  ///< fiber rank over `field`
    ExteriorClass c1{0};
    ExteriorClass c2{0};
    std::vector<Mod2Class> w;  ///< w[0] is w_1
    int sphere_shift = 0;      ///< n in the target sphere S^{nH + ...}

    /// Stiefel-Whitney class w_i; w_0 = 1 and classes past the stored list are zero.
    Mod2Class stiefel_whitney(int i) const;
    int real_dimension() const noexcept { return rank * (field == Field::quaternionic ? 4 : 1); }
};

/// Quaternionic bundle of rank `rank` with c1 = 0 and the given c2; w2 = 0, w4 = c2 mod 2.
BundleData make_quaternionic_bundle(ExteriorClass c2, int rank = 1, int sphere_shift = 1);

/// Index bundle of the spin Dirac family over the Picard torus: rank-1 over H with
/// c2 = -ch2 and sphere shift n = m + sigma/4.
BundleData index_bundle(const ManifoldData& m);

/// Real rank-3 bundle G with S(G) = S(F)/S^1 for a rank-1 quaternionic F; all w_i(G) vanish.
BundleData quotient_real_bundle(const BundleData& quaternionic);

}  // namespace thomstem::chern
