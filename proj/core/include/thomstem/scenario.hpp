#pragma once

// Scenario descriptions (built-in presets and JSON files) and the end-to-end pipeline
// manifold -> index bundle -> cell model -> labels -> spectral-sequence report -> verdict.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "thomstem/ahss.hpp"
#include "thomstem/cells.hpp"
#include "thomstem/chern.hpp"

namespace thomstem::scenario {

inline constexpr const char* kScenarioSchema = "thomstem.scenario/1";
inline constexpr const char* kReportSchema = "thomstem.report/1";

enum class Pipeline { thom, sphere_quotient };

std::string_view to_string(Pipeline p) noexcept;

/// A cell named by its base subset and fiber part, or the top cell of the final complex.
struct CellSelector {
    bool top = false;
    cells::CellKey key;
};

struct AssignmentSpec {
    CellSelector cell;
    std::string element;  ///< `eta`, `eta^2`, `12nu`, `deg(3)`, `0`
};

struct ScenarioSpec {
    std::string name;
    std::vector<chern::ManifoldData> manifolds;  ///< connected-summed in order; empty means b1 = 0
    int target_shift = 0;
    int suspensions = 0;
    std::optional<int> skeleton_quotient;  ///< collapse cells of dimension <= k before suspending
    Pipeline pipeline = Pipeline::thom;
    std::optional<std::vector<AssignmentSpec>> class_assignment;
    bool builtin = false;
};

/// Homology 4-torus of determinant d; {TF_0 / TF_0^(5), S^7}; eta on the top cell.
ScenarioSpec preset_sec3(const Integer& det);
/// T4(det1) # T4(det2), family over a circle; {S^1 TF, S^10}; 12nu (= eta^3) on the top cell.
ScenarioSpec preset_sec4(const Integer& det1, const Integer& det2);
/// Same manifold, sphere-bundle quotient S(G); {S^2 S(G), S^10}; eta^2 on the top cell.
ScenarioSpec preset_sec5(const Integer& det1, const Integer& det2);

/// Parses a scenario document. Throws SpecError naming the offending field.
ScenarioSpec parse_scenario(const nlohmann::json& doc);
ScenarioSpec load_scenario(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const ScenarioSpec& spec);

/// Everything up to and including the labeled final complex.
struct PipelineResult {
    ScenarioSpec spec;
    chern::ManifoldData manifold;
    std::vector<ext::ExteriorClass> chern_character;
    chern::BundleData bundle;
    cells::StableCellComplex model;        ///< labeled, before quotient and suspension
    cells::StableCellComplex final_model;  ///< labeled, after quotient and suspension
    ahss::ClassAssignment assignment;
};

PipelineResult build(const ScenarioSpec& spec);

struct RunOutcome {
    PipelineResult pipeline;
    ahss::GroupReport report;
    ahss::Evaluation evaluation;
    std::string certificate;
};

RunOutcome run(const ScenarioSpec& spec);

/// Process exit status for an outcome: 0 for a determinate verdict, 3 for unknown.
int exit_status(const RunOutcome& outcome) noexcept;

nlohmann::ordered_json report_json(const RunOutcome& outcome);
std::string report_text(const RunOutcome& outcome, bool color = false);

/// Pipeline stages, cell tables, Steenrod squares and labels, without assembling.
std::string explain(const ScenarioSpec& spec);

}  // namespace thomstem::scenario
