#pragma once

#include <string>

#include "json.hpp"
#include "wres/driver.hpp"

namespace wres {

// All rationals are serialized as strings "p" or "p/q" so values survive
// round-trips exactly.

nlohmann::json invariant_json(const Invariant& inv);
nlohmann::json trace_json(const std::vector<TraceStep>& trace);
nlohmann::json filtration_json(const WFiltration& F);
nlohmann::json center_json(const Center& c);
nlohmann::json chart_json(const Chart& ch);
nlohmann::json tree_json(const ChartTree& tree);
nlohmann::json drop_report_json(const DropReport& rep);

// Graphviz rendering of the chart tree, nodes sorted by id, labelled
// "chart / invariant / status".
std::string tree_dot(const ChartTree& tree);

}  // namespace wres
