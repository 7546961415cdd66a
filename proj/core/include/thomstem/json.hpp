#pragma once

// JSON views of complexes and spectral-sequence reports. Key order is fixed; no
// timestamps or addresses, so identical inputs serialize byte-identically.

#include <nlohmann/json.hpp>

#include "thomstem/ahss.hpp"
#include "thomstem/cells.hpp"
#include "thomstem/chern.hpp"

namespace thomstem::json {

using nlohmann::ordered_json;

ordered_json to_json(const chern::ManifoldData& m);
ordered_json to_json(const chern::BundleData& f);
/// Cells, counts by dimension, a per-gap label summary, and every eta / nu_odd label in full.
ordered_json to_json(const cells::StableCellComplex& complex);
/// {target, entries:[{cell, dim, stem, group, status, killer}], sources, differentials, exact,
///  assembled | bounds, blocks, notes}
ordered_json to_json(const ahss::GroupReport& report);

}  // namespace thomstem::json
