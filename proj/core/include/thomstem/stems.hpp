#pragma once

// Stable homotopy groups of spheres in stems 0..7 and the few composition products
// the spectral-sequence engine needs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thomstem {

/// Finitely generated abelian group Z^free_rank + sum Z/torsion[i]. Torsion orders are
/// kept sorted, each > 1; summands are not merged into invariant factors.
class AbelianGroup {
  public:
    AbelianGroup() = default;
    AbelianGroup(int free_rank, std::vector<std::int64_t> torsion);

    static AbelianGroup trivial() { return {}; }
    static AbelianGroup integers(int rank = 1) { return AbelianGroup(rank, {}); }
    static AbelianGroup cyclic(std::int64_t order);

    int free_rank() const noexcept { return free_rank_; }
    const std::vector<std::int64_t>& torsion() const noexcept { return torsion_; }
    bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
    /// Order, or nullopt when infinite.
    std::optional<std::int64_t> order() const;

    friend AbelianGroup operator+(const AbelianGroup& a, const AbelianGroup& b);
    AbelianGroup& operator+=(const AbelianGroup& other) { return *this = *this + other; }
    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

  private:
    int free_rank_ = 0;
    std::vector<std::int64_t> torsion_;
};

/// `Z^4 + Z/2`, `Z^28 + (Z/2)^9`, `0`.
std::string to_string(const AbelianGroup& g);

namespace stems {

inline constexpr int kMaxStem = 7;

/// pi_q of the sphere spectrum. Negative stems are trivial; q > 7 throws StemOutOfRange.
AbelianGroup stem_group(int q);

/// Degree of the primary Steenrod square detecting the generator of pi_q (eta: 2, nu: 4), 0 if none.
int detecting_square(int q) noexcept;

enum class StemKind { zero, degree, eta, eta_sq, nu_multiple };

/// Named element of a low stem: zero, a degree d in pi_0, eta, eta^2, or k*nu (k mod 24).
class StemElement {
  public:
    static StemElement zero(int q);
    static StemElement degree(std::int64_t d);
    static StemElement eta();
    static StemElement eta_sq();
    static StemElement nu_multiple(std::int64_t k);

    int stem() const noexcept { return stem_; }
    StemKind kind() const noexcept { return kind_; }
    /// d for degree elements, k for nu multiples, 1 for eta and eta^2, 0 for zero.
    std::int64_t multiple() const noexcept { return multiple_; }
    bool is_zero() const noexcept { return kind_ == StemKind::zero; }

    friend bool operator==(const StemElement&, const StemElement&) = default;

  private:
    StemElement(int stem, StemKind kind, std::int64_t multiple) : stem_(stem), kind_(kind), multiple_(multiple) {}

    int stem_;
    StemKind kind_;
    std::int64_t multiple_;
};

/// n * x in the group pi_{x.stem()}.
StemElement times(std::int64_t n, const StemElement& x);

/// Composition product pi_p x pi_q -> pi_{p+q} for p + q <= 3; StemOutOfRange otherwise.
StemElement compose(const StemElement& a, const StemElement& b);

/// `0`, `deg(3)`, `eta`, `eta^2`, `12nu`.
std::string to_string(const StemElement& x);

/// Inverse of to_string for the element names used in scenario files; also accepts `nu`.
/// `zero_stem` fixes the stem of `0`. Throws InvalidArgument on unknown names.
StemElement parse_element(const std::string& text, int zero_stem);

}  // namespace stems
}  // namespace thomstem
