#pragma once

// Stable CW models of Thom spaces and sphere-bundle quotients over tori, with stable
// attaching-map labels inferred from Steenrod squares.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thomstem/chern.hpp"
#include "thomstem/exterior.hpp"

namespace thomstem::cells {

using ext::Mod2Class;
using ext::Monomial;

/// thom: base cell times the 4m-cell of the fiber sphere. sphere_zero / sphere_two: base cell
/// times the 0- or 2-cell of the S^2 fiber of S(G).
enum class FiberPart { thom, sphere_zero, sphere_two };

std::string_view to_string(FiberPart f) noexcept;
std::optional<FiberPart> parse_fiber_part(std::string_view text) noexcept;

struct StableCell {
    Monomial base;
    FiberPart fiber = FiberPart::thom;
    int quaternionic_rank = 1;  ///< m; only used by thom cells
    int suspension = 0;

    int fiber_offset() const noexcept;
    int dim() const noexcept { return base.degree() + fiber_offset() + suspension; }

    friend bool operator==(const StableCell&, const StableCell&) = default;
};

/// Identifies a cell independently of suspension.
using CellKey = std::pair<Monomial, FiberPart>;

inline CellKey key_of(const StableCell& c) { return {c.base, c.fiber}; }

/// Name of the cohomology class dual to the cell: `u*x[1,2]`, `x[3]`, `s*x[1]`, `u`, `1`, `s`.
std::string name(const StableCell& c);

/// `9-cell u*x[1,2,3,4]`, `12-cell s*x[1,2,3,4,5,6,7,8]`.
std::string describe(const StableCell& c);

enum class AttachValue { trivial, eta, nu_odd, unknown };

std::string_view to_string(AttachValue v) noexcept;

struct AttachLabel {
    AttachValue value = AttachValue::unknown;
    std::string justification;

    friend bool operator==(const AttachLabel&, const AttachLabel&) = default;
};

enum class BasepointPolicy {
    thom,     ///< a single 0-cell at infinity, not listed among the cells
    reduced,  ///< the disjoint basepoint of S(G)_+ removed; every listed cell is a genuine cell
};

std::string_view to_string(BasepointPolicy p) noexcept;
std::string_view basepoint_note(BasepointPolicy p) noexcept;

class StableCellComplex {
  public:
    /// (upper index, lower index) into cells().
    using Attachments = std::map<std::pair<std::size_t, std::size_t>, AttachLabel>;

    /// Cells are sorted into canonical order (dimension, fiber part, base subset);
    /// attachment keys refer to positions in the sorted list.
    StableCellComplex(std::vector<StableCell> cells, chern::BundleData bundle, BasepointPolicy policy,
                      bool pi2_so3_trivial);
    StableCellComplex(std::vector<StableCell> cells, chern::BundleData bundle, BasepointPolicy policy,
                      bool pi2_so3_trivial, Attachments attachments);

    const std::vector<StableCell>& cells() const noexcept { return cells_; }
    const chern::BundleData& bundle() const noexcept { return bundle_; }
    BasepointPolicy basepoint_policy() const noexcept { return policy_; }
    /// Set for sphere-bundle complexes: gap-3 attaching maps factor through pi_2(SO(3)) = 0.
    bool pi2_so3_trivial() const noexcept { return pi2_so3_trivial_; }
    const Attachments& attachments() const noexcept { return attachments_; }
    /// Whether infer_attachments has run. Unrecorded pairs are trivial (lower cell outside the closure).
    bool labeled() const noexcept { return labeled_; }

    std::optional<std::size_t> find(const CellKey& key) const;
    std::optional<std::size_t> find(Monomial base, FiberPart fiber) const { return find({base, fiber}); }
    /// Label of the attaching map upper -> lower; trivial when no entry is recorded.
    AttachLabel label(std::size_t upper, std::size_t lower) const;
    /// dimension -> number of cells.
    std::map<int, int> cell_counts() const;
    std::map<int, int> cell_counts(FiberPart fiber) const;
    int top_dim() const;
    /// Common suspension of all cells (0 for an empty complex).
    int suspension() const noexcept { return cells_.empty() ? 0 : cells_.front().suspension; }

  private:
    std::vector<StableCell> cells_;
    chern::BundleData bundle_;
    BasepointPolicy policy_;
    bool pi2_so3_trivial_;
    Attachments attachments_;
    bool labeled_ = false;
    std::map<CellKey, std::size_t> index_;
};

/// Thom space of a quaternionic bundle: one cell u*x_S of dimension |S| + 4m per S in {1..b}.
StableCellComplex thom_cells(const chern::BundleData& bundle);

/// Cartan formula on the Thom class: Sq^n(u x) = sum_{i+j=n} u w_i(F) Sq^j(x).
/// Returns y with Sq^n(u x) = u y. Requires 1 <= n <= 4.
Mod2Class sq_thom(int n, const Mod2Class& x, const chern::BundleData& bundle);

/// Sq^n applied to the cohomology class dual to cell `lower`, as the set of cells whose
/// duals appear in the result.
std::vector<std::size_t> sq_on_dual(const StableCellComplex& complex, int n, std::size_t lower);

/// Whether `lower` lies in the closure of `upper` (the cell over the face subtorus).
bool in_closure(const StableCell& upper, const StableCell& lower) noexcept;

/// Labels every ordered pair with dimension gap 1..4:
///   lower outside the closure of upper -> trivial
///   gap 1 -> trivial (the cellular differential vanishes)
///   gap 2 -> eta iff Sq^2 on the lower dual hits the upper cell, else trivial
///   gap 3 -> trivial with the pi_2(SO(3)) flag, else unknown
///   gap 4 -> nu_odd iff Sq^4 on the lower dual hits the upper cell, else unknown
StableCellComplex infer_attachments(const StableCellComplex& complex);

/// Raises every cell by k dimensions; labels are kept.
StableCellComplex suspend(const StableCellComplex& complex, int k);

/// Collapses the k-skeleton: cells of dimension <= k and their attachments are dropped.
StableCellComplex skeletal_quotient(const StableCellComplex& complex, int k);

/// S(G) = S(F)/S^1 for a rank-1 quaternionic F: cells x_S (sphere_zero) and s*x_S (sphere_two).
StableCellComplex sphere_bundle_quotient(const chern::BundleData& quaternionic);

}  // namespace thomstem::cells
