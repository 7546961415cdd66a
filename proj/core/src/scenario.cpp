#include "thomstem/scenario.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "thomstem/errors.hpp"
#include "thomstem/json.hpp"

namespace thomstem::scenario {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Pipeline p) noexcept { return p == Pipeline::thom ? "thom" : "sphere_quotient"; }

namespace {

std::vector<AssignmentSpec> top_cell_assignment(const char* element) {
    return {AssignmentSpec{CellSelector{true, {}}, element}};
}

}  // namespace

ScenarioSpec preset_sec3(const Integer& det) {
    ScenarioSpec s;
    s.name = "paper-sec3";
    s.manifolds = {chern::make_homology_torus(det)};
    s.target_shift = 7;
    s.suspensions = 0;
    s.skeleton_quotient = 5;
    s.pipeline = Pipeline::thom;
    s.class_assignment = top_cell_assignment("eta");
    s.builtin = true;
    return s;
}

ScenarioSpec preset_sec4(const Integer& det1, const Integer& det2) {
    ScenarioSpec s;
    s.name = "paper-sec4";
    s.manifolds = {chern::make_homology_torus(det1), chern::make_homology_torus(det2)};
    s.target_shift = 10;
    s.suspensions = 1;
    s.pipeline = Pipeline::thom;
    // eta^2 in a fiber smashed with a framed circle: eta^3 = 12nu on the top cell
    s.class_assignment = top_cell_assignment("12nu");
    s.builtin = true;
    return s;
}

ScenarioSpec preset_sec5(const Integer& det1, const Integer& det2) {
    ScenarioSpec s;
    s.name = "paper-sec5";
    s.manifolds = {chern::make_homology_torus(det1), chern::make_homology_torus(det2)};
    s.target_shift = 10;
    s.suspensions = 2;
    s.pipeline = Pipeline::sphere_quotient;
    s.class_assignment = top_cell_assignment("eta^2");
    s.builtin = true;
    return s;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SpecError(path + "/" + key, "missing required field");
    return *it;
}

int parse_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw SpecError(path, "expected an integer");
    const auto n = v.get<std::int64_t>();
    if (n < -1'000'000 || n > 1'000'000) throw SpecError(path, "integer out of range");
    return static_cast<int>(n);
}

Integer parse_integer(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
    if (v.is_string()) {
        static const std::regex digits(R"(-?\d+)");
        const auto s = v.get<std::string>();
        if (std::regex_match(s, digits)) return Integer(s);
    }
    throw SpecError(path, "expected an integer or a decimal string");
}

std::string parse_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw SpecError(path, "expected a string");
    return v.get<std::string>();
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw SpecError(path + "/" + key, "unknown field");
}

chern::ManifoldData parse_manifold(const json& v, const std::string& path) {
    if (!v.is_object()) throw SpecError(path, "expected an object");
    if (v.contains("determinant")) {
        reject_unknown_keys(v, {"determinant"}, path);
        const Integer det = parse_integer(v["determinant"], path + "/determinant");
        if (det == 0) throw SpecError(path + "/determinant", "determinant must be nonzero");
        return chern::make_homology_torus(det);
    }
    reject_unknown_keys(v, {"b1", "quad_form", "signature", "b_plus", "label"}, path);
    const int b1 = parse_int(require(v, "b1", path), path + "/b1");
    std::map<ext::Monomial, Integer> form;
    if (v.contains("quad_form")) {
        const json& rows = v["quad_form"];
        if (!rows.is_array()) throw SpecError(path + "/quad_form", "expected an array of \"[i,j,k,l] = value\" rows");
        static const std::regex row_re(R"(\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(-?\d+)\s*)");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string row_path = fmt::format("{}/quad_form/{}", path, i);
            const std::string row = parse_string(rows[i], row_path);
            std::smatch m;
            if (!std::regex_match(row, m, row_re)) throw SpecError(row_path, "expected \"[i,j,k,l] = value\"");
            std::vector<int> idx;
            for (int g = 1; g <= 4; ++g) idx.push_back(std::stoi(m[g].str()));
            try {
                const ext::Monomial subset = ext::Monomial::of(idx);
                if (!form.emplace(subset, Integer(m[5].str())).second) throw SpecError(row_path, "duplicate row");
            } catch (const InvalidArgument& e) {
                throw SpecError(row_path, e.what());
            }
        }
    }
    const int signature = v.contains("signature") ? parse_int(v["signature"], path + "/signature") : 0;
    const int b_plus = v.contains("b_plus") ? parse_int(v["b_plus"], path + "/b_plus") : 0;
    const std::string label = v.contains("label") ? parse_string(v["label"], path + "/label") : "X";
    try {
        return chern::make_manifold(b1, std::move(form), signature, b_plus, label);
    } catch (const InvalidArgument& e) {
        throw SpecError(path, e.what());
    }
}

CellSelector parse_selector(const json& v, const std::string& path) {
    if (v.is_string()) {
        if (v.get<std::string>() != "top") throw SpecError(path, "expected \"top\" or {base, fiber}");
        return CellSelector{true, {}};
    }
    if (!v.is_object()) throw SpecError(path, "expected \"top\" or {base, fiber}");
    reject_unknown_keys(v, {"base", "fiber"}, path);
    const json& base = require(v, "base", path);
    if (!base.is_array()) throw SpecError(path + "/base", "expected an array of generator indices");
    std::vector<int> gens;
    for (std::size_t i = 0; i < base.size(); ++i) gens.push_back(parse_int(base[i], fmt::format("{}/base/{}", path, i)));
    ext::Monomial m;
    try {
        m = ext::Monomial::of(gens);
    } catch (const InvalidArgument& e) {
        throw SpecError(path + "/base", e.what());
    }
    const auto fiber = cells::parse_fiber_part(parse_string(require(v, "fiber", path), path + "/fiber"));
    if (!fiber) throw SpecError(path + "/fiber", "expected thom, sphere_zero or sphere_two");
    return CellSelector{false, {m, *fiber}};
}

}  // namespace

ScenarioSpec parse_scenario(const json& doc) {
    if (!doc.is_object()) throw SpecError("", "scenario must be a JSON object");
    reject_unknown_keys(doc,
                        {"schema", "name", "pipeline", "manifolds", "target_shift", "suspensions", "skeleton_quotient",
                         "class_assignment"},
                        "");
    if (parse_string(require(doc, "schema", ""), "/schema") != kScenarioSchema)
        throw SpecError("/schema", fmt::format("expected \"{}\"", kScenarioSchema));

    ScenarioSpec s;
    s.name = doc.contains("name") ? parse_string(doc["name"], "/name") : "custom";
    if (doc.contains("pipeline")) {
        const std::string p = parse_string(doc["pipeline"], "/pipeline");
        if (p == "thom")
            s.pipeline = Pipeline::thom;
        else if (p == "sphere_quotient")
            s.pipeline = Pipeline::sphere_quotient;
        else
            throw SpecError("/pipeline", "expected thom or sphere_quotient");
    }
    const json& manifolds = require(doc, "manifolds", "");
    if (!manifolds.is_array()) throw SpecError("/manifolds", "expected an array");
    for (std::size_t i = 0; i < manifolds.size(); ++i)
        s.manifolds.push_back(parse_manifold(manifolds[i], fmt::format("/manifolds/{}", i)));
    s.target_shift = parse_int(require(doc, "target_shift", ""), "/target_shift");
    if (doc.contains("suspensions")) {
        s.suspensions = parse_int(doc["suspensions"], "/suspensions");
        if (s.suspensions < 0) throw SpecError("/suspensions", "must be nonnegative");
    }
    if (doc.contains("skeleton_quotient")) s.skeleton_quotient = parse_int(doc["skeleton_quotient"], "/skeleton_quotient");
    if (doc.contains("class_assignment")) {
        const json& list = doc["class_assignment"];
        if (!list.is_array()) throw SpecError("/class_assignment", "expected an array");
        std::vector<AssignmentSpec> out;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string path = fmt::format("/class_assignment/{}", i);
            if (!list[i].is_object()) throw SpecError(path, "expected an object");
            reject_unknown_keys(list[i], {"cell", "element"}, path);
            out.push_back(AssignmentSpec{parse_selector(require(list[i], "cell", path), path + "/cell"),
                                         parse_string(require(list[i], "element", path), path + "/element")});
        }
        s.class_assignment = std::move(out);
    }
    return s;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("", fmt::format("cannot open scenario file {}", path.string()));
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SpecError("", fmt::format("{} is not valid JSON: {}", path.string(), e.what()));
    }
    return parse_scenario(doc);
}

ordered_json to_json(const ScenarioSpec& spec) {
    ordered_json j;
    j["schema"] = kScenarioSchema;
    j["name"] = spec.name;
    j["builtin"] = spec.builtin;
    j["pipeline"] = to_string(spec.pipeline);
    ordered_json manifolds = ordered_json::array();
    for (const auto& m : spec.manifolds) manifolds.push_back(thomstem::json::to_json(m));
    j["manifolds"] = std::move(manifolds);
    j["target_shift"] = spec.target_shift;
    j["suspensions"] = spec.suspensions;
    j["skeleton_quotient"] = spec.skeleton_quotient ? ordered_json(*spec.skeleton_quotient) : ordered_json(nullptr);
    if (spec.class_assignment) {
        ordered_json list = ordered_json::array();
        for (const auto& a : *spec.class_assignment) {
            ordered_json cell = a.cell.top ? ordered_json("top")
                                           : ordered_json{{"base", a.cell.key.first.generators()},
                                                          {"fiber", cells::to_string(a.cell.key.second)}};
            list.push_back(ordered_json{{"cell", std::move(cell)}, {"element", a.element}});
        }
        j["class_assignment"] = std::move(list);
    } else {
        j["class_assignment"] = nullptr;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

chern::ManifoldData combined_manifold(const ScenarioSpec& spec) {
    if (spec.manifolds.empty()) return chern::make_manifold(0, {}, 0, 0, "empty (b1 = 0)");
    chern::ManifoldData m = spec.manifolds.front();
    for (std::size_t i = 1; i < spec.manifolds.size(); ++i) m = chern::connected_sum(m, spec.manifolds[i]);
    return m;
}

cells::StableCellComplex base_model(const ScenarioSpec& spec, const chern::BundleData& bundle) {
    return spec.pipeline == Pipeline::thom ? cells::thom_cells(bundle) : cells::sphere_bundle_quotient(bundle);
}

ahss::ClassAssignment resolve_assignment(const ScenarioSpec& spec, const cells::StableCellComplex& complex) {
    ahss::ClassAssignment out;
    if (!spec.class_assignment) return out;
    for (std::size_t i = 0; i < spec.class_assignment->size(); ++i) {
        const AssignmentSpec& a = (*spec.class_assignment)[i];
        const std::string path = fmt::format("/class_assignment/{}", i);
        std::optional<std::size_t> cell;
        if (a.cell.top) {
            if (complex.cells().empty()) throw SpecError(path + "/cell", "complex is empty; it has no top cell");
            cell = complex.cells().size() - 1;
        } else {
            cell = complex.find(a.cell.key);
            if (!cell) throw SpecError(path + "/cell", "no such cell in the final complex");
        }
        const cells::StableCell& c = complex.cells()[*cell];
        const int stem = c.dim() - spec.target_shift;
        stems::stem_group(stem);  // out-of-table stems are their own error, not a mismatch
        stems::StemElement element = stems::StemElement::zero(0);
        try {
            element = stems::parse_element(a.element, stem);
        } catch (const InvalidArgument& e) {
            throw SpecError(path + "/element", e.what());
        }
        if (element.stem() != stem)
            throw SpecError(path + "/element", fmt::format("{} lies in stem {} but {} has stem {}", a.element,
                                                           element.stem(), cells::describe(c), stem));
        if (!out.elements.emplace(cells::key_of(c), element).second)
            throw SpecError(path + "/cell", "cell assigned twice");
    }
    return out;
}

}  // namespace

PipelineResult build(const ScenarioSpec& spec) {
    chern::ManifoldData manifold = combined_manifold(spec);
    std::vector<ext::ExteriorClass> ch = chern::chern_character_index(manifold);
    chern::BundleData bundle = chern::index_bundle(manifold);
    cells::StableCellComplex model = cells::infer_attachments(base_model(spec, bundle));
    cells::StableCellComplex final_model = model;
    if (spec.skeleton_quotient) final_model = cells::skeletal_quotient(final_model, *spec.skeleton_quotient);
    final_model = cells::suspend(final_model, spec.suspensions);
    ahss::ClassAssignment assignment = resolve_assignment(spec, final_model);
    return PipelineResult{spec,           std::move(manifold),    std::move(ch),        std::move(bundle),
                          std::move(model), std::move(final_model), std::move(assignment)};
}

RunOutcome run(const ScenarioSpec& spec) {
    PipelineResult p = build(spec);
    ahss::GroupReport report = ahss::assemble(p.final_model, spec.target_shift);
    ahss::Evaluation evaluation = ahss::evaluate_class(report, p.assignment);
    std::string certificate = ahss::vanishing_certificate(report, p.assignment);
    return RunOutcome{std::move(p), std::move(report), std::move(evaluation), std::move(certificate)};
}

int exit_status(const RunOutcome& outcome) noexcept {
    return outcome.evaluation.verdict == ahss::Verdict::unknown ? 3 : 0;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string counts_line(const std::map<int, int>& counts) {
    std::vector<std::string> parts;
    for (const auto& [dim, count] : counts) parts.push_back(fmt::format("{}:{}", dim, count));
    return parts.empty() ? "(none)" : fmt::format("{}", fmt::join(parts, " "));
}

}  // namespace

ordered_json report_json(const RunOutcome& outcome) {
    const PipelineResult& p = outcome.pipeline;
    ordered_json j;
    j["schema"] = kReportSchema;
    j["scenario"] = to_json(p.spec);
    j["manifold"] = thomstem::json::to_json(p.manifold);
    ordered_json ch = ordered_json::array();
    for (const auto& part : p.chern_character) ch.push_back(ext::to_string(part, "dt"));
    j["chern_character"] = std::move(ch);
    j["bundle"] = thomstem::json::to_json(p.bundle);
    j["conventions"] = ordered_json{{"sign", chern::kSignConvention},
                                    {"basepoint", cells::basepoint_note(p.final_model.basepoint_policy())}};
    j["complex"] = thomstem::json::to_json(p.final_model);
    j["group"] = thomstem::json::to_json(outcome.report);
    j["verdict"] = ahss::to_string(outcome.evaluation.verdict);
    j["evaluation"] = outcome.evaluation.reasons;
    j["certificate"] = split_lines(outcome.certificate);
    return j;
}

std::string report_text(const RunOutcome& outcome, bool color) {
    const PipelineResult& p = outcome.pipeline;
    const auto& report = outcome.report;
    const auto bold = [&](const std::string& s) { return color ? "\x1b[1m" + s + "\x1b[0m" : s; };
    std::string verdict(ahss::to_string(outcome.evaluation.verdict));
    if (color) {
        const char* code = outcome.evaluation.verdict == ahss::Verdict::nontrivial ? "\x1b[32m"
                           : outcome.evaluation.verdict == ahss::Verdict::trivial  ? "\x1b[36m"
                                                                                   : "\x1b[33m";
        verdict = code + verdict + "\x1b[0m";
    }
    std::string out;
    out += bold("scenario: ") + p.spec.name + "\n";
    out += fmt::format("manifold: {} (b1 = {}, signature {}, b+ = {})\n", p.manifold.label, p.manifold.b1,
                       p.manifold.signature, p.manifold.b_plus);
    out += fmt::format("index bundle: {} rank {} over T^{}, c2 = {}, n = {}\n", chern::to_string(p.bundle.field),
                       p.bundle.rank, p.bundle.base_rank, ext::to_string(p.bundle.c2, "dt"), p.bundle.sphere_shift);
    out += fmt::format("complex: {} cells, suspension {}, cells by dim {}\n", p.final_model.cells().size(),
                       p.final_model.suspension(), counts_line(p.final_model.cell_counts()));
    if (report.exact)
        out += fmt::format("{}{{X, S^{}}} = {}\n", bold("group: "), report.target, to_string(report.assembled));
    else
        out += fmt::format("{}{} <= {{X, S^{}}} <= {} (unknown entries present)\n", bold("group: "),
                           to_string(report.lower_bound), report.target, to_string(report.upper_bound));
    out += bold("verdict: ") + verdict + "\n";
    out += bold("certificate:") + "\n";
    for (const auto& line : split_lines(outcome.certificate)) out += "  " + line + "\n";
    out += bold("notes:") + "\n";
    out += fmt::format("  - {}\n", chern::kSignConvention);
    for (const auto& note : report.notes) out += "  - " + note + "\n";
    return out;
}

std::string explain(const ScenarioSpec& spec) {
    const PipelineResult p = build(spec);
    std::string out;
    out += fmt::format("scenario: {} (pipeline {}, target S^{})\n", spec.name, to_string(spec.pipeline),
                       spec.target_shift);

    out += fmt::format("[1] manifold: {}\n    b1 = {}, signature {}, b+ = {}\n", p.manifold.label, p.manifold.b1,
                       p.manifold.signature, p.manifold.b_plus);
    for (const auto& [subset, value] : p.manifold.quad_form)
        out += fmt::format("    <{}, [X]> = {}\n", ext::to_string(subset, "a"), value.str());

    out += "[2] Chern character of the index bundle (integral over X of ch(L), A-hat = 1)\n";
    for (std::size_t k = 0; k < p.chern_character.size(); ++k)
        out += fmt::format("    ch{} = {}\n", k, ext::to_string(p.chern_character[k], "dt"));

    const bool trivial_bundle = p.bundle.c2.is_zero();
    out += fmt::format("[3] index bundle: {} rank {} over T^{}, c1 = {}, c2 = {}, n = {}{}\n",
                       chern::to_string(p.bundle.field), p.bundle.rank, p.bundle.base_rank,
                       ext::to_string(p.bundle.c1, "dt"), ext::to_string(p.bundle.c2, "dt"), p.bundle.sphere_shift,
                       trivial_bundle ? (p.bundle.base_rank == 0 ? "  (trivial bundle, sphere model)" : "  (trivial bundle)")
                                      : "");
    for (int i = 1; i <= static_cast<int>(p.bundle.w.size()); ++i)
        out += fmt::format("    w{} = {}\n", i, ext::to_string(p.bundle.stiefel_whitney(i), "dt"));
    out += fmt::format("    sign convention: {}\n", chern::kSignConvention);

    const cells::StableCellComplex& model = p.model;
    const chern::BundleData& model_bundle = model.bundle();
    out += fmt::format("[4] cell model: {} ({} cells; basepoint: {})\n",
                       spec.pipeline == Pipeline::thom ? "Thom space TF" : "sphere-bundle quotient S(G) = S(F)/S^1",
                       model.cells().size(), cells::basepoint_note(model.basepoint_policy()));
    if (spec.pipeline == Pipeline::sphere_quotient)
        out += fmt::format("    G: real rank {}, w1 = w2 = w3 = 0, pi_2(SO(3)) = 0 flag set\n", model_bundle.rank);
    if (spec.pipeline == Pipeline::thom) {
        out += fmt::format("    cells by dim: {}\n", counts_line(model.cell_counts()));
    } else {
        out += fmt::format("    sphere_zero cells by dim: {}\n", counts_line(model.cell_counts(cells::FiberPart::sphere_zero)));
        out += fmt::format("    sphere_two cells by dim:  {}\n", counts_line(model.cell_counts(cells::FiberPart::sphere_two)));
    }

    out += "[5] Steenrod squares on cell duals (Cartan formula; Sq^j = 0 on torus classes for j > 0)\n";
    for (int n = 1; n <= 4; ++n) {
        int nonzero = 0;
        for (std::size_t i = 0; i < model.cells().size(); ++i) {
            const auto hits = cells::sq_on_dual(model, n, i);
            if (hits.empty()) continue;
            ++nonzero;
            std::vector<std::string> names;
            for (std::size_t h : hits) names.push_back(cells::name(model.cells()[h]));
            out += fmt::format("    Sq^{}({}) = {}\n", n, cells::name(model.cells()[i]), fmt::join(names, " + "));
        }
        if (nonzero == 0) out += fmt::format("    Sq^{} vanishes on every cell\n", n);
    }

    out += "[6] attaching labels\n";
    std::map<std::pair<int, std::string>, int> summary;
    std::vector<std::string> detected;
    for (const auto& [pair, label] : model.attachments()) {
        const auto& upper = model.cells()[pair.first];
        const auto& lower = model.cells()[pair.second];
        ++summary[{upper.dim() - lower.dim(), std::string(cells::to_string(label.value))}];
        if (label.value == cells::AttachValue::eta || label.value == cells::AttachValue::nu_odd)
            detected.push_back(fmt::format("    {} -> {}: {} ({})", cells::describe(upper), cells::describe(lower),
                                           cells::to_string(label.value), label.justification));
    }
    for (const auto& [key, count] : summary)
        out += fmt::format("    gap {}: {} x {}\n", key.first, count, key.second);
    if (summary.empty()) out += "    (no pairs with gap 1..4)\n";
    for (const auto& line : detected) out += line + "\n";

    out += fmt::format("[7] final complex (skeleton collapsed: {}, suspensions: {})\n",
                       spec.skeleton_quotient ? fmt::format("dim <= {}", *spec.skeleton_quotient) : "none",
                       spec.suspensions);
    out += fmt::format("    cells by dim: {}\n", counts_line(p.final_model.cell_counts()));
    if (!p.assignment.elements.empty()) {
        out += "[8] class assignment\n";
        for (const auto& [key, element] : p.assignment.elements)
            out += fmt::format("    {} on {}\n", stems::to_string(element),
                               cells::describe(p.final_model.cells()[*p.final_model.find(key)]));
    }
    return out;
}

}  // namespace thomstem::scenario
