#pragma once

// Atiyah-Hirzebruch bookkeeping for the stable cohomotopy group {X, S^N} of a labeled
// stable cell complex X, and evaluation of formal class assignments in it.
//
// The entry of a cell c in total degree D is pi_{dim c - D} of the sphere spectrum. A
// differential d_r runs from an entry in degree D-1 to an entry in degree D whose cell
// is r dimensions higher, and is the composition with the attaching element between the
// two cells. Only the configurations below are decided; everything else is reported as
// unknown:
//   d_1 = 0 (cellular differential of a torus vanishes),
//   d_2 from stem 0 or 1 through an eta attachment (surjective: composition with eta),
//   d_4 from stem 0 through an odd-nu attachment (kills the whole Z/24 column).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thomstem/cells.hpp"
#include "thomstem/stems.hpp"

namespace thomstem::ahss {

using cells::CellKey;
using cells::StableCellComplex;
using stems::StemElement;

struct Differential {
    int page = 0;
    int source_degree = 0;   ///< total degree of the source entry; the target sits one higher
    std::size_t source = 0;
    std::size_t target = 0;
    int source_stem = 0;
    int target_stem = 0;
    StemElement image = StemElement::zero(0);  ///< image of the source generator
    std::string rule;                          ///< justification of the attaching label that drives it

    friend bool operator==(const Differential&, const Differential&) = default;
};

enum class EntryStatus {
    survives,
    killed,   ///< hit by a differential, or (for torsion) not a cycle
    reduced,  ///< Z column whose permanent cycles form a subgroup of finite index
    unknown,
};

std::string_view to_string(EntryStatus s) noexcept;

struct ColumnEntry {
    std::size_t cell = 0;
    int dim = 0;
    int stem = 0;
    AbelianGroup group;
    EntryStatus status = EntryStatus::survives;
    std::optional<Differential> killer;  ///< for killed and reduced entries
    std::int64_t index = 1;              ///< subgroup index for reduced entries
    std::string reason;                  ///< why the status is what it is
};

struct GroupReport {
    int target = 0;
    StableCellComplex complex;
    /// One entry per cell, in cell order, for total degree `target`.
    std::vector<ColumnEntry> entries;
    /// Degree target-1 entries that emit a decided differential into degree `target`.
    std::vector<ColumnEntry> sources;
    std::vector<Differential> differentials;
    bool exact = true;
    /// Direct sum of surviving subquotients (extensions ignored). Equals both bounds when exact.
    AbelianGroup assembled;
    AbelianGroup lower_bound;  ///< certain survivors only
    AbelianGroup upper_bound;  ///< everything not certainly killed
    /// Exact per-fiber-part sums, when exact.
    std::map<cells::FiberPart, AbelianGroup> blocks;
    std::vector<std::string> notes;

    const ColumnEntry& entry(std::size_t cell) const { return entries.at(cell); }
};

/// Requires a labeled complex. Throws StemOutOfRange when a cell's stem exceeds the table.
GroupReport assemble(const StableCellComplex& complex, int target);

/// Formal element of {X, S^N}: a stem element on each listed cell, zero elsewhere.
struct ClassAssignment {
    std::map<CellKey, StemElement> elements;
};

enum class Verdict { trivial, nontrivial, unknown };

std::string_view to_string(Verdict v) noexcept;

struct Evaluation {
    Verdict verdict = Verdict::trivial;
    std::vector<std::string> reasons;
};

/// nontrivial iff some assigned nonzero element sits in a column that certainly survives;
/// trivial iff every assigned element is zero or in a killed column; unknown otherwise.
/// Throws AssignmentError for cells outside the complex or stem mismatches.
Evaluation evaluate_class(const GroupReport& report, const ClassAssignment& assignment);

/// Human-readable chain of the rules behind the verdict, one rule per line.
std::string vanishing_certificate(const GroupReport& report, const ClassAssignment& assignment);

}  // namespace thomstem::ahss
