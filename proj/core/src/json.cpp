#include "thomstem/json.hpp"

#include <fmt/format.h>

namespace thomstem::json {

namespace {

ordered_json cell_json(const cells::StableCell& c) {
    ordered_json j;
    j["name"] = cells::name(c);
    j["base"] = c.base.generators();
    j["fiber"] = cells::to_string(c.fiber);
    j["dim"] = c.dim();
    return j;
}

ordered_json differential_json(const ahss::Differential& d, const cells::StableCellComplex& complex) {
    ordered_json j;
    j["page"] = d.page;
    j["source"] = cells::name(complex.cells()[d.source]);
    j["source_dim"] = complex.cells()[d.source].dim();
    j["source_stem"] = d.source_stem;
    j["target"] = cells::name(complex.cells()[d.target]);
    j["target_dim"] = complex.cells()[d.target].dim();
    j["target_stem"] = d.target_stem;
    j["image"] = stems::to_string(d.image);
    j["rule"] = d.rule;
    return j;
}

ordered_json entry_json(const ahss::ColumnEntry& e, const cells::StableCellComplex& complex) {
    ordered_json j;
    j["cell"] = cells::name(complex.cells()[e.cell]);
    j["dim"] = e.dim;
    j["stem"] = e.stem;
    j["group"] = to_string(e.group);
    j["status"] = ahss::to_string(e.status);
    if (e.status == ahss::EntryStatus::reduced) j["index"] = e.index;
    j["killer"] = e.killer ? differential_json(*e.killer, complex) : ordered_json(nullptr);
    j["reason"] = e.reason;
    return j;
}

}  // namespace

ordered_json to_json(const chern::ManifoldData& m) {
    ordered_json j;
    j["label"] = m.label;
    j["b1"] = m.b1;
    j["signature"] = m.signature;
    j["b_plus"] = m.b_plus;
    ordered_json rows = ordered_json::array();
    for (const auto& [subset, value] : m.quad_form)
        rows.push_back(fmt::format("[{}] = {}", fmt::join(subset.generators(), ","), value.str()));
    j["quad_form"] = std::move(rows);
    return j;
}

ordered_json to_json(const chern::BundleData& f) {
    ordered_json j;
    j["field"] = chern::to_string(f.field);
    j["rank"] = f.rank;
    j["base_rank"] = f.base_rank;
    j["c1"] = ext::to_string(f.c1, "dt");
    j["c2"] = ext::to_string(f.c2, "dt");
    ordered_json w = ordered_json::array();
    for (const auto& wi : f.w) w.push_back(ext::to_string(wi, "dt"));
    j["w"] = std::move(w);
    j["sphere_shift"] = f.sphere_shift;
    return j;
}

ordered_json to_json(const cells::StableCellComplex& complex) {
    ordered_json j;
    j["basepoint_policy"] = cells::to_string(complex.basepoint_policy());
    j["pi2_so3_trivial"] = complex.pi2_so3_trivial();
    j["suspension"] = complex.suspension();
    ordered_json counts = ordered_json::object();
    for (const auto& [dim, count] : complex.cell_counts()) counts[std::to_string(dim)] = count;
    j["cell_counts"] = std::move(counts);
    ordered_json cells_json = ordered_json::array();
    for (const auto& c : complex.cells()) cells_json.push_back(cell_json(c));
    j["cells"] = std::move(cells_json);

    std::map<std::pair<int, std::string>, int> summary;
    ordered_json detected = ordered_json::array();
    for (const auto& [pair, label] : complex.attachments()) {
        const auto& upper = complex.cells()[pair.first];
        const auto& lower = complex.cells()[pair.second];
        const int gap = upper.dim() - lower.dim();
        ++summary[{gap, std::string(cells::to_string(label.value))}];
        if (label.value != cells::AttachValue::eta && label.value != cells::AttachValue::nu_odd) continue;
        ordered_json a;
        a["upper"] = cells::name(upper);
        a["upper_dim"] = upper.dim();
        a["lower"] = cells::name(lower);
        a["lower_dim"] = lower.dim();
        a["label"] = cells::to_string(label.value);
        a["justification"] = label.justification;
        detected.push_back(std::move(a));
    }
    ordered_json summary_json = ordered_json::array();
    for (const auto& [key, count] : summary)
        summary_json.push_back(ordered_json{{"gap", key.first}, {"label", key.second}, {"count", count}});
    j["label_summary"] = std::move(summary_json);
    j["detected_attachments"] = std::move(detected);
    return j;
}

ordered_json to_json(const ahss::GroupReport& report) {
    ordered_json j;
    j["target"] = report.target;
    ordered_json entries = ordered_json::array();
    for (const auto& e : report.entries) entries.push_back(entry_json(e, report.complex));
    j["entries"] = std::move(entries);
    ordered_json sources = ordered_json::array();
    for (const auto& e : report.sources) sources.push_back(entry_json(e, report.complex));
    j["sources"] = std::move(sources);
    ordered_json diffs = ordered_json::array();
    for (const auto& d : report.differentials) diffs.push_back(differential_json(d, report.complex));
    j["differentials"] = std::move(diffs);
    j["exact"] = report.exact;
    if (report.exact) {
        j["assembled"] = to_string(report.assembled);
        ordered_json blocks = ordered_json::object();
        for (const auto& [fiber, group] : report.blocks) blocks[std::string(cells::to_string(fiber))] = to_string(group);
        j["blocks"] = std::move(blocks);
    } else {
        j["assembled"] = nullptr;
        j["bounds"] = ordered_json{{"lower", to_string(report.lower_bound)}, {"upper", to_string(report.upper_bound)}};
    }
    j["notes"] = report.notes;
    return j;
}

}  // namespace thomstem::json
