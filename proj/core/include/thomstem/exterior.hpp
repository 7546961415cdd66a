#pragma once

// Exact arithmetic in the integral cohomology of a torus: the exterior algebra on
// degree-1 generators x_1..x_b, plus its mod-2 reduction and the Steenrod action on it.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace thomstem {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace ext {

/// Largest supported number of degree-1 generators.
inline constexpr int kMaxRank = 32;

/// Wedge of distinct generators in ascending order, stored as a bitset (bit k-1 <-> x_k).
class Monomial {
  public:
    constexpr Monomial() = default;

    static Monomial from_bits(std::uint32_t bits) { return Monomial(bits); }
    static Monomial generator(int k);
    /// Strictly ascending 1-based generator indices.
    static Monomial of(std::initializer_list<int> generators);
    static Monomial of(const std::vector<int>& generators);
    /// The orientation monomial x_1 ... x_rank.
    static Monomial full(int rank);

    constexpr std::uint32_t bits() const noexcept { return bits_; }
    int degree() const noexcept;
    bool is_unit() const noexcept { return bits_ == 0; }
    bool contains(int k) const noexcept;
    bool disjoint(Monomial other) const noexcept { return (bits_ & other.bits_) == 0; }
    bool subset_of(Monomial other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    /// Largest generator index present, 0 for the unit.
    int top_generator() const noexcept;
    std::vector<int> generators() const;
    /// Relabel x_k -> x_{k+offset}.
    Monomial shifted(int offset) const;
    Monomial operator|(Monomial other) const noexcept { return Monomial(bits_ | other.bits_); }

    /// Canonical order: by degree, then lexicographically on the ascending generator list.
    friend std::strong_ordering operator<=>(Monomial a, Monomial b) noexcept;
    friend constexpr bool operator==(Monomial a, Monomial b) noexcept { return a.bits_ == b.bits_; }

  private:
    explicit constexpr Monomial(std::uint32_t bits) : bits_(bits) {}
    std::uint32_t bits_ = 0;
};

/// Sign of the permutation sorting the concatenation (a, b) into ascending order,
/// or 0 when a and b share a generator.
int merge_sign(Monomial a, Monomial b) noexcept;

/// Formats a monomial as `x[1,2,4]`; the unit prints as `1`.
std::string to_string(Monomial m, std::string_view symbol = "x");

class ExteriorClass {
  public:
    using Terms = std::map<Monomial, Integer>;

    explicit ExteriorClass(int rank);
    ExteriorClass(int rank, Terms terms);

    static ExteriorClass unit(int rank);
    static ExteriorClass monomial(int rank, Monomial m, Integer coefficient = 1);
    static ExteriorClass generator(int rank, int k);

    int rank() const noexcept { return rank_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Integer coefficient(Monomial m) const;
    /// Common degree of all terms; nullopt for zero or inhomogeneous classes.
    std::optional<int> degree() const;
    ExteriorClass homogeneous_part(int degree) const;

    ExteriorClass operator-() const;
    friend bool operator==(const ExteriorClass&, const ExteriorClass&) = default;

  private:
    int rank_;
    Terms terms_;
};

ExteriorClass add(const ExteriorClass& a, const ExteriorClass& b);
ExteriorClass scale(const Integer& n, const ExteriorClass& a);
ExteriorClass wedge(const ExteriorClass& a, const ExteriorClass& b);

inline ExteriorClass operator+(const ExteriorClass& a, const ExteriorClass& b) { return add(a, b); }
inline ExteriorClass operator-(const ExteriorClass& a, const ExteriorClass& b) { return add(a, -b); }
inline ExteriorClass operator*(const Integer& n, const ExteriorClass& a) { return scale(n, a); }

/// Coefficient of x_1 ... x_rank, i.e. evaluation on the fundamental class.
Integer top_coefficient(const ExteriorClass& a);

std::string to_string(const ExteriorClass& a, std::string_view symbol = "x");

/// Element of H*(T^b; Z/2): a set of monomials, each with coefficient 1.
class Mod2Class {
  public:
    explicit Mod2Class(int rank);
    Mod2Class(int rank, std::set<Monomial> monomials);

    static Mod2Class unit(int rank);
    static Mod2Class monomial(int rank, Monomial m);

    int rank() const noexcept { return rank_; }
    const std::set<Monomial>& monomials() const noexcept { return monomials_; }
    bool is_zero() const noexcept { return monomials_.empty(); }
    bool contains(Monomial m) const { return monomials_.count(m) != 0; }
    std::optional<int> degree() const;

    friend bool operator==(const Mod2Class&, const Mod2Class&) = default;

  private:
    int rank_;
    std::set<Monomial> monomials_;
};

Mod2Class add(const Mod2Class& a, const Mod2Class& b);
Mod2Class wedge(const Mod2Class& a, const Mod2Class& b);
inline Mod2Class operator+(const Mod2Class& a, const Mod2Class& b) { return add(a, b); }

std::string to_string(const Mod2Class& a, std::string_view symbol = "x");

Mod2Class mod2(const ExteriorClass& a);

/// Sq^i on H*(T^b; Z/2). Degree-1 classes satisfy Sq^1 x = x^2 = 0, so by the Cartan
/// formula every positive square vanishes on the whole exterior algebra.
Mod2Class sq_torus(int i, const Mod2Class& x);

}  // namespace ext
}  // namespace thomstem
