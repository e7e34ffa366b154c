#pragma once

#include <nlohmann/json.hpp>

#include "rainbow/multigraph.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/reachability.hpp"
#include "rainbow/solver.hpp"

namespace rainbow {

using Json = nlohmann::ordered_json;

Json to_json(const ValidationReport& report);

/// {"size": int, "edges": [{"u", "v", "colour", "edge_id"}]}
Json matching_to_json(const ColouredMultigraph& graph, const RainbowMatching& matching);

struct ParsedMatching {
  RainbowMatching matching;
  /// Records whose u/v/colour disagree with the graph's edge of that id, or
  /// whose id is unknown.
  ValidationReport record_issues;
};

/// Throws nlohmann::json::exception on a malformed document.
ParsedMatching matching_from_json(const ColouredMultigraph& graph, const Json& doc);

/// {"levels": [{"i", "size", "colours"}], "m", "F_size", "R_size", "counting": {...}} plus
/// the matching size and thresholds.
Json stats_to_json(const ColouredMultigraph& graph, const RainbowMatching& matching, const FlexibleStructure& flex,
                   const GoodBadReport& good_bad, const Hierarchy& hierarchy, const CountReport& counts);

Json to_json(const CountReport& counts);

/// Timing is left out unless requested so repeated runs print identical
/// documents.
Json solve_report_to_json(const ColouredMultigraph& graph, const SolveReport& report, bool include_timing);

Json oracle_to_json(const ColouredMultigraph& graph, const OracleResult& result);
Json transversal_to_json(const TransversalResult& result);

}  // namespace rainbow
