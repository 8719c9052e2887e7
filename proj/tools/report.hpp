#pragma once

#include <string>

#include <json.hpp>

#include "tsbreak/breaks.hpp"
#include "tsbreak/io.hpp"
#include "tsbreak/joint.hpp"
#include "tsbreak/model.hpp"
#include "tsbreak/regularized.hpp"

namespace tsbreak::cli {

using nlohmann::json;

json segment_to_json(const TrendSegment& segment);
json model_to_json(const DecompositionModel& model);
json break_solution_to_json(const BreakSolution& solution);
json joint_model_to_json(const JointModel& result);
json period_search_to_json(const PeriodSearchResult& result);
json input_to_json(const Dataset& dataset);

// Serializes with sorted keys and a trailing newline; path "-" writes to
// stdout.
void write_report(const std::string& path, const json& report);

} // namespace tsbreak::cli
