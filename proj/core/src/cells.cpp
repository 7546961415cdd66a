#include "thomstem/cells.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "thomstem/errors.hpp"

namespace thomstem::cells {

namespace {

bool canonical_less(const StableCell& a, const StableCell& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.fiber != b.fiber) return a.fiber < b.fiber;
    return a.base < b.base;
}

std::string dual_name(const StableCell& c) {
    switch (c.fiber) {
        case FiberPart::thom: return c.base.is_unit() ? "u" : "u*" + ext::to_string(c.base);
        case FiberPart::sphere_zero: return ext::to_string(c.base);
        case FiberPart::sphere_two: return c.base.is_unit() ? "s" : "s*" + ext::to_string(c.base);
    }
    return "?";
}

/// Every subset of {1..rank}.
std::vector<Monomial> all_subsets(int rank) {
    if (rank < 0 || rank > 20) throw InvalidArgument(fmt::format("cell models support base rank <= 20, got {}", rank));
    std::vector<Monomial> out;
    out.reserve(std::size_t{1} << rank);
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << rank); ++bits) out.push_back(Monomial::from_bits(bits));
    return out;
}

}  // namespace

std::string_view to_string(FiberPart f) noexcept {
    switch (f) {
        case FiberPart::thom: return "thom";
        case FiberPart::sphere_zero: return "sphere_zero";
        case FiberPart::sphere_two: return "sphere_two";
    }
    return "?";
}

std::optional<FiberPart> parse_fiber_part(std::string_view text) noexcept {
    for (FiberPart f : {FiberPart::thom, FiberPart::sphere_zero, FiberPart::sphere_two})
        if (text == to_string(f)) return f;
    return std::nullopt;
}

int StableCell::fiber_offset() const noexcept {
    switch (fiber) {
        case FiberPart::thom: return 4 * quaternionic_rank;
        case FiberPart::sphere_zero: return 0;
        case FiberPart::sphere_two: return 2;
    }
    return 0;
}

std::string name(const StableCell& c) { return dual_name(c); }

std::string describe(const StableCell& c) { return fmt::format("{}-cell {}", c.dim(), dual_name(c)); }

std::string_view to_string(AttachValue v) noexcept {
    switch (v) {
        case AttachValue::trivial: return "trivial";
        case AttachValue::eta: return "eta";
        case AttachValue::nu_odd: return "nu_odd";
        case AttachValue::unknown: return "unknown";
    }
    return "?";
}

std::string_view to_string(BasepointPolicy p) noexcept { return p == BasepointPolicy::thom ? "thom" : "reduced"; }

std::string_view basepoint_note(BasepointPolicy p) noexcept {
    return p == BasepointPolicy::thom
               ? "one 0-cell at infinity serves as basepoint and is not listed; groups are reduced"
               : "disjoint basepoint of S(G)_+ removed (one 0-cell); all listed cells contribute";
}

StableCellComplex::StableCellComplex(std::vector<StableCell> cells, chern::BundleData bundle, BasepointPolicy policy,
                                     bool pi2_so3_trivial)
    : cells_(std::move(cells)), bundle_(std::move(bundle)), policy_(policy), pi2_so3_trivial_(pi2_so3_trivial) {
    std::sort(cells_.begin(), cells_.end(), canonical_less);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const StableCell& c = cells_[i];
        if (c.suspension < 0) throw InvalidArgument("negative suspension");
        if (c.suspension != cells_.front().suspension) throw InvalidArgument("cells must share one suspension");
        if (c.base.top_generator() > bundle_.base_rank) throw InvalidArgument("cell base outside the torus");
        if ((c.fiber == FiberPart::thom) != (policy_ == BasepointPolicy::thom))
            throw InvalidArgument("thom cells exist only in Thom-space complexes");
        if (!index_.emplace(key_of(c), i).second)
            throw InvalidArgument(fmt::format("duplicate cell {}", describe(c)));
    }
}

StableCellComplex::StableCellComplex(std::vector<StableCell> cells, chern::BundleData bundle, BasepointPolicy policy,
                                     bool pi2_so3_trivial, Attachments attachments)
    : StableCellComplex(std::move(cells), std::move(bundle), policy, pi2_so3_trivial) {
    if (!std::is_sorted(cells_.begin(), cells_.end(), canonical_less) || index_.size() != cells_.size())
        throw std::logic_error("labeled complexes must be built from canonically ordered cells");
    for (const auto& [pair, label] : attachments) {
        const auto [upper, lower] = pair;
        if (upper >= cells_.size() || lower >= cells_.size()) throw std::logic_error("attachment index out of range");
        const int gap = cells_[upper].dim() - cells_[lower].dim();
        if (gap < 1 || gap > 4) throw std::logic_error("attachments are recorded only for gaps 1..4");
        if (label.value == AttachValue::eta && gap != 2) throw std::logic_error("eta label requires gap 2");
        if (label.value == AttachValue::nu_odd && gap != 4) throw std::logic_error("nu label requires gap 4");
    }
    attachments_ = std::move(attachments);
    labeled_ = true;
}

std::optional<std::size_t> StableCellComplex::find(const CellKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

AttachLabel StableCellComplex::label(std::size_t upper, std::size_t lower) const {
    auto it = attachments_.find({upper, lower});
    if (it != attachments_.end()) return it->second;
    return {AttachValue::trivial, "lower cell outside the closure of the upper cell"};
}

std::map<int, int> StableCellComplex::cell_counts() const {
    std::map<int, int> counts;
    for (const StableCell& c : cells_) ++counts[c.dim()];
    return counts;
}

std::map<int, int> StableCellComplex::cell_counts(FiberPart fiber) const {
    std::map<int, int> counts;
    for (const StableCell& c : cells_)
        if (c.fiber == fiber) ++counts[c.dim()];
    return counts;
}

int StableCellComplex::top_dim() const {
    if (cells_.empty()) throw InvalidArgument("empty complex has no top dimension");
    return cells_.back().dim();
}

StableCellComplex thom_cells(const chern::BundleData& bundle) {
    if (bundle.field != chern::Field::quaternionic) throw Unsupported("thom_cells expects a quaternionic bundle");
    std::vector<StableCell> cells;
    for (Monomial s : all_subsets(bundle.base_rank))
        cells.push_back(StableCell{s, FiberPart::thom, bundle.rank, 0});
    return StableCellComplex(std::move(cells), bundle, BasepointPolicy::thom, false);
}

Mod2Class sq_thom(int n, const Mod2Class& x, const chern::BundleData& bundle) {
    if (n < 1 || n > 4) throw InvalidArgument(fmt::format("sq_thom supports Sq^1..Sq^4, got Sq^{}", n));
    if (x.rank() != bundle.base_rank) throw RankMismatch("class and bundle live over different tori");
    Mod2Class out(x.rank());
    for (int i = 0; i <= n; ++i) out = out + ext::wedge(bundle.stiefel_whitney(i), ext::sq_torus(n - i, x));
    return out;
}

std::vector<std::size_t> sq_on_dual(const StableCellComplex& complex, int n, std::size_t lower) {
    const StableCell& cell = complex.cells().at(lower);
    const chern::BundleData& bundle = complex.bundle();
    const Mod2Class x = Mod2Class::monomial(bundle.base_rank, cell.base);
    Mod2Class image(bundle.base_rank);
    switch (cell.fiber) {
        case FiberPart::thom: image = sq_thom(n, x, bundle); break;
        case FiberPart::sphere_zero: image = ext::sq_torus(n, x); break;
        // s restricts to the fiber generator; Sq^n(s x) = w_n(G) s x
        case FiberPart::sphere_two: image = ext::wedge(bundle.stiefel_whitney(n), x); break;
    }
    std::vector<std::size_t> out;
    for (Monomial m : image.monomials()) {
        auto hit = complex.find(m, cell.fiber);
        if (!hit) throw std::logic_error("Steenrod square left the cell basis");
        out.push_back(*hit);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool in_closure(const StableCell& upper, const StableCell& lower) noexcept {
    if (!lower.base.subset_of(upper.base)) return false;
    return !(upper.fiber == FiberPart::sphere_zero && lower.fiber == FiberPart::sphere_two);
}

namespace {

AttachLabel detect(const StableCellComplex& complex, std::size_t upper, std::size_t lower, int gap) {
    const StableCell& up = complex.cells()[upper];
    const StableCell& low = complex.cells()[lower];
    const auto square_hits = [&](int n) {
        const std::vector<std::size_t> hits = sq_on_dual(complex, n, lower);
        return std::binary_search(hits.begin(), hits.end(), upper);
    };
    switch (gap) {
        case 1:
            return {AttachValue::trivial,
                    "gap 1: cellular differential vanishes (every cell is nonzero in cohomology by the Thom "
                    "isomorphism over a torus)"};
        case 2:
            if (square_hits(2))
                return {AttachValue::eta, fmt::format("Sq^2({}) contains {}: eta detected", dual_name(low), dual_name(up))};
            return {AttachValue::trivial,
                    fmt::format("Sq^2({}) misses {}; pi_1 = {{0, eta}} and eta is detected by Sq^2", dual_name(low),
                                dual_name(up))};
        case 3:
            if (complex.pi2_so3_trivial())
                return {AttachValue::trivial, "gap 3: fiberwise attaching map factors through pi_2(SO(3)) = 0"};
            return {AttachValue::unknown, "gap 3: eta^2 is not detected by primary Steenrod squares"};
        case 4:
            if (square_hits(4))
                return {AttachValue::nu_odd,
                        fmt::format("Sq^4({}) contains {}: odd multiple of nu detected", dual_name(low), dual_name(up))};
            return {AttachValue::unknown,
                    fmt::format("Sq^4({}) misses {}; even multiples of nu are not detected", dual_name(low),
                                dual_name(up))};
        default: throw std::logic_error("gap outside 1..4");
    }
}

}  // namespace

StableCellComplex infer_attachments(const StableCellComplex& complex) {
    const auto& cells = complex.cells();
    StableCellComplex::Attachments labels;
    for (std::size_t upper = 0; upper < cells.size(); ++upper) {
        for (std::size_t lower = 0; lower < upper; ++lower) {
            const int gap = cells[upper].dim() - cells[lower].dim();
            if (gap < 1 || gap > 4 || !in_closure(cells[upper], cells[lower])) continue;
            labels.emplace(std::pair{upper, lower}, detect(complex, upper, lower, gap));
        }
    }
    return StableCellComplex(cells, complex.bundle(), complex.basepoint_policy(), complex.pi2_so3_trivial(),
                             std::move(labels));
}

StableCellComplex suspend(const StableCellComplex& complex, int k) {
    if (k < 0) throw InvalidArgument("suspension must be nonnegative");
    std::vector<StableCell> cells = complex.cells();
    for (StableCell& c : cells) c.suspension += k;
    if (!complex.labeled())
        return StableCellComplex(std::move(cells), complex.bundle(), complex.basepoint_policy(),
                                 complex.pi2_so3_trivial());
    return StableCellComplex(std::move(cells), complex.bundle(), complex.basepoint_policy(), complex.pi2_so3_trivial(),
                             complex.attachments());
}

StableCellComplex skeletal_quotient(const StableCellComplex& complex, int k) {
    std::vector<StableCell> kept;
    std::vector<std::optional<std::size_t>> remap(complex.cells().size());
    for (std::size_t i = 0; i < complex.cells().size(); ++i) {
        if (complex.cells()[i].dim() <= k) continue;
        remap[i] = kept.size();
        kept.push_back(complex.cells()[i]);
    }
    if (!complex.labeled())
        return StableCellComplex(std::move(kept), complex.bundle(), complex.basepoint_policy(),
                                 complex.pi2_so3_trivial());
    StableCellComplex::Attachments labels;
    for (const auto& [pair, label] : complex.attachments())
        if (remap[pair.first] && remap[pair.second]) labels.emplace(std::pair{*remap[pair.first], *remap[pair.second]}, label);
    return StableCellComplex(std::move(kept), complex.bundle(), complex.basepoint_policy(), complex.pi2_so3_trivial(),
                             std::move(labels));
}

StableCellComplex sphere_bundle_quotient(const chern::BundleData& quaternionic) {
    chern::BundleData g = chern::quotient_real_bundle(quaternionic);
    std::vector<StableCell> cells;
    for (Monomial s : all_subsets(g.base_rank)) {
        cells.push_back(StableCell{s, FiberPart::sphere_zero, 0, 0});
        cells.push_back(StableCell{s, FiberPart::sphere_two, 0, 0});
    }
    return StableCellComplex(std::move(cells), std::move(g), BasepointPolicy::reduced, true);
}

}  // namespace thomstem::cells
