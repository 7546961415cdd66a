#include "thomstem/ahss.hpp"

#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "thomstem/errors.hpp"

namespace thomstem::ahss {

using cells::AttachLabel;
using cells::AttachValue;
using cells::StableCell;

std::string_view to_string(EntryStatus s) noexcept {
    switch (s) {
        case EntryStatus::survives: return "survives";
        case EntryStatus::killed: return "killed";
        case EntryStatus::reduced: return "reduced";
        case EntryStatus::unknown: return "unknown";
    }
    return "?";
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::trivial: return "trivial";
        case Verdict::nontrivial: return "nontrivial";
        case Verdict::unknown: return "unknown";
    }
    return "?";
}

namespace {

StemElement generator(int stem) {
    switch (stem) {
        case 0: return StemElement::degree(1);
        case 1: return StemElement::eta();
        case 2: return StemElement::eta_sq();
        case 3: return StemElement::nu_multiple(1);
        default: throw std::logic_error(fmt::format("no named generator in stem {}", stem));
    }
}

/// Page of the differential a label drives out of a source entry in stem `source_stem`,
/// when the engine decides it; nullopt when the configuration is undecided.
std::optional<int> decided_page(AttachValue value, int gap, int source_stem) {
    if (value == AttachValue::eta && gap == 2 && (source_stem == 0 || source_stem == 1)) return 2;
    if (value == AttachValue::nu_odd && gap == 4 && source_stem == 0) return 4;
    return std::nullopt;
}

/// Attaching element carried by a decided label. nu_odd is represented by nu.
StemElement attaching_element(AttachValue value) {
    return value == AttachValue::eta ? StemElement::eta() : StemElement::nu_multiple(1);
}

std::int64_t element_order(const StemElement& x) {
    switch (x.kind()) {
        case stems::StemKind::zero: return 1;
        case stems::StemKind::degree: return 0;
        case stems::StemKind::eta:
        case stems::StemKind::eta_sq: return 2;
        case stems::StemKind::nu_multiple: return 24 / std::gcd<std::int64_t>(24, x.multiple());
    }
    return 0;
}

struct Hit {
    enum Kind { none, killed, unknown } kind = none;
    std::optional<Differential> by;
    std::vector<Differential> alternatives;
    std::string reason;
};

class Engine {
  public:
    explicit Engine(const StableCellComplex& complex) : complex_(complex), incoming_(complex.cells().size()),
                                                        outgoing_(complex.cells().size()) {
        for (const auto& [pair, label] : complex.attachments()) {
            if (label.value == AttachValue::trivial) continue;
            incoming_[pair.first].emplace_back(pair.second, &label);
            outgoing_[pair.second].emplace_back(pair.first, &label);
        }
    }

    int stem(std::size_t cell, int degree) const { return complex_.cells()[cell].dim() - degree; }

    static AbelianGroup group(int stem) { return stems::stem_group(stem); }

    int gap(std::size_t upper, std::size_t lower) const {
        return complex_.cells()[upper].dim() - complex_.cells()[lower].dim();
    }

    /// Decided differentials leaving (cell, degree) into degree+1 with a nonzero target group.
    std::vector<Differential> decided_out(std::size_t cell, int degree) const {
        std::vector<Differential> out;
        const int s = stem(cell, degree);
        for (const auto& [upper, label] : outgoing_[cell]) {
            const int r = gap(upper, cell);
            const int t = stem(upper, degree + 1);
            if (t < 0 || group(t).is_trivial()) continue;
            const auto page = decided_page(label->value, r, s);
            if (!page) continue;
            const StemElement image = stems::compose(generator(s), attaching_element(label->value));
            out.push_back(Differential{*page, degree, cell, upper, s, t, image, label->justification});
        }
        return out;
    }

    /// Whether anything in degree-1 certainly or possibly hits the entry (cell, degree).
    Hit hit(std::size_t cell, int degree) {
        const auto memo_key = std::pair{cell, degree};
        if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

        Hit result;
        const int s = stem(cell, degree);
        if (s >= 0 && !group(s).is_trivial()) {
            std::string unknown_reason;
            for (const auto& [lower, label] : incoming_[cell]) {
                const int r = gap(cell, lower);
                const int source_stem = stem(lower, degree - 1);
                if (source_stem < 0 || group(source_stem).is_trivial()) continue;
                if (source_stem >= s || r < 2)
                    throw std::logic_error("differential would not point down to the right");
                const auto page = decided_page(label->value, r, source_stem);
                if (!page) {
                    if (unknown_reason.empty())
                        unknown_reason = fmt::format("possible d{} from {} ({} label)", r,
                                                     cells::describe(complex_.cells()[lower]),
                                                     cells::to_string(label->value));
                    continue;
                }
                const Hit source = hit(lower, degree - 1);
                if (source.kind == Hit::killed) continue;
                if (source.kind == Hit::unknown) {
                    if (unknown_reason.empty())
                        unknown_reason = fmt::format("source {} of d{} has undecided status",
                                                     cells::describe(complex_.cells()[lower]), r);
                    continue;
                }
                const std::vector<Differential> outs = decided_out(lower, degree - 1);
                const auto same_page = std::count_if(outs.begin(), outs.end(),
                                                     [&](const Differential& d) { return d.page == *page; });
                if (same_page != 1) {
                    if (unknown_reason.empty())
                        unknown_reason = fmt::format("d{} from {} hits {} columns at once", r,
                                                     cells::describe(complex_.cells()[lower]), same_page);
                    continue;
                }
                const Differential d = *std::find_if(outs.begin(), outs.end(),
                                                     [&](const Differential& x) { return x.target == cell; });
                const StemElement gen = generator(s);
                if (element_order(d.image) != element_order(gen))
                    throw std::logic_error("decided differential is not surjective");
                if (!result.by)
                    result.by = d;
                else
                    result.alternatives.push_back(d);
            }
            if (result.by) {
                result.kind = Hit::killed;
                result.reason = fmt::format("hit by d{} from {}", result.by->page,
                                            cells::describe(complex_.cells()[result.by->source]));
            } else if (!unknown_reason.empty()) {
                result.kind = Hit::unknown;
                result.reason = unknown_reason;
            }
        }
        memo_.emplace(memo_key, result);
        return result;
    }

    /// Undecided nontrivial labels leaving (cell, degree) toward a nonzero target group.
    std::optional<std::string> undecided_out(std::size_t cell, int degree) const {
        const int s = stem(cell, degree);
        for (const auto& [upper, label] : outgoing_[cell]) {
            const int t = stem(upper, degree + 1);
            if (t < 0 || group(t).is_trivial()) continue;
            if (!decided_page(label->value, gap(upper, cell), s))
                return fmt::format("possible d{} into {} ({} label)", gap(upper, cell),
                                   cells::describe(complex_.cells()[upper]), cells::to_string(label->value));
        }
        return std::nullopt;
    }

  private:
    const StableCellComplex& complex_;
    std::vector<std::vector<std::pair<std::size_t, const AttachLabel*>>> incoming_;
    std::vector<std::vector<std::pair<std::size_t, const AttachLabel*>>> outgoing_;
    std::map<std::pair<std::size_t, int>, Hit> memo_;
};

}  // namespace

GroupReport assemble(const StableCellComplex& complex, int target) {
    if (!complex.labeled()) throw InvalidArgument("assemble needs a complex labeled by infer_attachments");
    GroupReport report{target, complex, {}, {}, {}, true, {}, {}, {}, {}, {}};
    Engine engine(complex);
    const auto& cells = complex.cells();

    for (std::size_t i = 0; i < cells.size(); ++i) {
        ColumnEntry e;
        e.cell = i;
        e.dim = cells[i].dim();
        e.stem = e.dim - target;
        e.group = stems::stem_group(e.stem);
        report.entries.push_back(std::move(e));
    }

    for (ColumnEntry& e : report.entries) {
        if (e.group.is_trivial()) {
            e.reason = e.stem < 0 ? "negative stem" : fmt::format("pi_{} = 0", e.stem);
            continue;
        }
        const Hit h = engine.hit(e.cell, target);
        if (h.kind == Hit::killed) {
            e.status = EntryStatus::killed;
            e.killer = h.by;
            e.reason = h.reason;
            report.differentials.push_back(*h.by);
            ColumnEntry source;
            source.cell = h.by->source;
            source.dim = cells[source.cell].dim();
            source.stem = h.by->source_stem;
            source.group = stems::stem_group(source.stem);
            source.killer = h.by;
            if (source.group.free_rank() > 0) {
                source.status = EntryStatus::reduced;
                source.index = element_order(h.by->image);
                source.reason = fmt::format("kernel of d{} has index {}", h.by->page, source.index);
            } else {
                source.status = EntryStatus::killed;
                source.reason = fmt::format("not a d{}-cycle", h.by->page);
            }
            report.sources.push_back(std::move(source));
            if (!h.alternatives.empty()) {
                std::vector<std::string> names;
                for (const Differential& d : h.alternatives) names.push_back(cells::describe(cells[d.source]));
                report.notes.push_back(fmt::format(
                    "d{} into {}: source chosen as {} (first in canonical order); {} further source(s) [{}] carry "
                    "the same label and yield the same kill",
                    h.by->page, cells::describe(cells[e.cell]), cells::describe(cells[h.by->source]),
                    h.alternatives.size(), fmt::join(names, ", ")));
            }
            if (const auto lower_page = engine.undecided_out(h.by->source, target - 1))
                report.notes.push_back(fmt::format(
                    "source {} treated as a cycle up to page {} as in the standard argument; undecided: {}",
                    cells::describe(cells[h.by->source]), h.by->page, *lower_page));
            continue;
        }

        std::int64_t index = 1;
        std::optional<Differential> out_kill;
        for (const Differential& d : engine.decided_out(e.cell, target)) {
            if (e.group.free_rank() > 0) {
                const std::int64_t order = element_order(d.image);
                index = std::lcm(index, order);
                if (!e.killer) e.killer = d;
            } else if (!out_kill) {
                out_kill = d;
            }
        }
        if (out_kill) {
            e.status = EntryStatus::killed;
            e.killer = out_kill;
            e.reason = fmt::format("not a d{}-cycle", out_kill->page);
            report.differentials.push_back(*out_kill);
            continue;
        }
        if (h.kind == Hit::unknown) {
            e.status = EntryStatus::unknown;
            e.reason = h.reason;
        } else if (auto why = engine.undecided_out(e.cell, target)) {
            e.status = EntryStatus::unknown;
            e.reason = *why;
        } else if (index > 1) {
            e.status = EntryStatus::reduced;
            e.index = index;
            e.reason = fmt::format("permanent cycles form a subgroup of index {}", index);
            report.differentials.push_back(*e.killer);
        } else {
            e.reason = "no differentials";
        }
    }

    for (const ColumnEntry& e : report.entries) {
        switch (e.status) {
            case EntryStatus::survives:
            case EntryStatus::reduced:
                report.lower_bound += e.group;
                report.upper_bound += e.group;
                report.blocks[cells[e.cell].fiber] += e.group;
                break;
            case EntryStatus::unknown:
                report.exact = false;
                report.upper_bound += e.group;
                break;
            case EntryStatus::killed: break;
        }
    }
    if (report.exact)
        report.assembled = report.lower_bound;
    else
        report.blocks.clear();

    report.notes.insert(report.notes.begin(), std::string(cells::basepoint_note(complex.basepoint_policy())));
    report.notes.push_back("d1 = 0: the cellular differential of a torus vanishes");
    report.notes.push_back("extension problems ignored: surviving columns are direct-summed");
    if (complex.basepoint_policy() == cells::BasepointPolicy::reduced) {
        int extra = 0;
        std::vector<std::string> names;
        for (const ColumnEntry& e : report.entries) {
            if (cells[e.cell].fiber != cells::FiberPart::sphere_zero || e.group.is_trivial()) continue;
            ++extra;
            names.push_back(cells::describe(cells[e.cell]));
        }
        if (extra > 0)
            report.notes.push_back(fmt::format(
                "{} base-block (sphere_zero) cell(s) also contribute: [{}]; a binomial count over the fiber-two "
                "block alone omits them",
                extra, fmt::join(names, ", ")));
    }
    if (!report.exact)
        report.notes.push_back(fmt::format("unknown entries present: {} <= group <= {}",
                                           to_string(report.lower_bound), to_string(report.upper_bound)));
    return report;
}

namespace {

struct Resolved {
    std::size_t cell;
    StemElement element;
};

std::vector<Resolved> resolve(const GroupReport& report, const ClassAssignment& assignment) {
    std::vector<Resolved> out;
    for (const auto& [key, element] : assignment.elements) {
        const auto cell = report.complex.find(key);
        if (!cell)
            throw AssignmentError(fmt::format("assignment names a cell not in the complex: {} {}",
                                              ext::to_string(key.first), cells::to_string(key.second)));
        const ColumnEntry& e = report.entry(*cell);
        if (element.stem() != e.stem)
            throw AssignmentError(fmt::format("{} lies in stem {} but {} has stem {}", stems::to_string(element),
                                              element.stem(), cells::describe(report.complex.cells()[*cell]), e.stem));
        out.push_back({*cell, element});
    }
    return out;
}

}  // namespace

Evaluation evaluate_class(const GroupReport& report, const ClassAssignment& assignment) {
    Evaluation ev;
    bool nontrivial = false;
    bool unknown = false;
    for (const auto& [cell, element] : resolve(report, assignment)) {
        if (element.is_zero()) continue;
        const ColumnEntry& e = report.entry(cell);
        const std::string where = cells::describe(report.complex.cells()[cell]);
        const std::string what = stems::to_string(element);
        switch (e.status) {
            case EntryStatus::killed:
                ev.reasons.push_back(fmt::format("{} on {}: column killed ({})", what, where, e.reason));
                break;
            case EntryStatus::survives:
                nontrivial = true;
                ev.reasons.push_back(fmt::format("{} on {}: nonzero in surviving column {}", what, where,
                                                 to_string(e.group)));
                break;
            case EntryStatus::reduced:
                if (element.multiple() % e.index != 0)
                    throw AssignmentError(fmt::format("{} on {} is not a permanent cycle (index {})", what, where,
                                                      e.index));
                nontrivial = true;
                ev.reasons.push_back(fmt::format("{} on {}: nonzero permanent cycle in index-{} subgroup", what,
                                                 where, e.index));
                break;
            case EntryStatus::unknown:
                unknown = true;
                ev.reasons.push_back(fmt::format("{} on {}: column undecided ({})", what, where, e.reason));
                break;
        }
    }
    ev.verdict = nontrivial ? Verdict::nontrivial : unknown ? Verdict::unknown : Verdict::trivial;
    if (ev.reasons.empty()) ev.reasons.emplace_back("zero class");
    return ev;
}

std::string vanishing_certificate(const GroupReport& report, const ClassAssignment& assignment) {
    const Evaluation ev = evaluate_class(report, assignment);
    const auto& cells = report.complex.cells();
    std::vector<std::string> lines;
    lines.push_back(fmt::format("target: {{X, S^{}}}", report.target));
    lines.push_back(fmt::format("verdict: {}", to_string(ev.verdict)));

    bool nontrivial_labels = false;
    for (const auto& [pair, label] : report.complex.attachments())
        if (label.value != AttachValue::trivial) nontrivial_labels = true;
    if (!nontrivial_labels && report.differentials.empty()) {
        lines.emplace_back("rule: all attaching labels trivial; direct sum, no differentials");
    } else {
        for (const Differential& d : report.differentials) {
            lines.push_back(fmt::format("rule: {}", d.rule));
            lines.push_back(fmt::format("rule: d{}: {} (pi_{} = {}) -> {} (pi_{} = {}), generator |-> {}", d.page,
                                        cells::describe(cells[d.source]), d.source_stem,
                                        to_string(stems::stem_group(d.source_stem)), cells::describe(cells[d.target]),
                                        d.target_stem, to_string(stems::stem_group(d.target_stem)),
                                        stems::to_string(d.image)));
        }
        if (report.differentials.empty()) lines.emplace_back("rule: no decided differentials");
    }
    for (const std::string& reason : ev.reasons) lines.push_back("class: " + reason);
    return fmt::format("{}\n", fmt::join(lines, "\n"));
}

}  // namespace thomstem::ahss
