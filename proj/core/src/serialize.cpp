#include "rainbow/serialize.hpp"

#include <fmt/format.h>

namespace rainbow {

Json to_json(const ValidationReport& report) {
  Json issues = Json::array();
  for (const Issue& issue : report.issues) {
    Json j{{"kind", std::string(to_string(issue.kind))}, {"message", issue.message}};
    if (issue.vertex) j["vertex"] = *issue.vertex;
    if (issue.colour) j["colour"] = *issue.colour;
    if (!issue.edges.empty()) {
      Json ids = Json::array();
      for (EdgeId id : issue.edges) ids.push_back(id.index);
      j["edges"] = std::move(ids);
    }
    issues.push_back(std::move(j));
  }
  return Json{{"valid", report.ok()}, {"issues", std::move(issues)}};
}

Json matching_to_json(const ColouredMultigraph& graph, const RainbowMatching& matching) {
  Json edges = Json::array();
  for (EdgeId id : matching.edges()) {
    const Edge& e = graph.edge(id);
    edges.push_back(Json{{"u", e.u}, {"v", e.v}, {"colour", e.colour}, {"edge_id", id.index}});
  }
  return Json{{"size", matching.size()}, {"edges", std::move(edges)}};
}

ParsedMatching matching_from_json(const ColouredMultigraph& graph, const Json& doc) {
  ParsedMatching parsed;
  std::vector<EdgeId> ids;
  for (const Json& rec : doc.at("edges")) {
    const EdgeId id{rec.at("edge_id").get<std::uint32_t>()};
    ids.push_back(id);
    if (!graph.contains(id)) {
      parsed.record_issues.issues.push_back(
          {IssueKind::unknown_edge, fmt::format("edge {} does not exist", id.index), std::nullopt, std::nullopt, {id}});
      continue;
    }
    const Edge& e = graph.edge(id);
    const auto u = rec.at("u").get<Vertex>();
    const auto v = rec.at("v").get<Vertex>();
    const auto c = rec.at("colour").get<Colour>();
    const bool same_ends = (u == e.u && v == e.v) || (u == e.v && v == e.u);
    if (!same_ends || c != e.colour) {
      parsed.record_issues.issues.push_back(
          {IssueKind::record_mismatch,
           fmt::format("record ({}, {}, {}) disagrees with edge {} = ({}, {}, {})", u, v, c, id.index, e.u, e.v,
                       e.colour),
           std::nullopt, std::nullopt, {id}});
    }
  }
  if (doc.contains("size") && doc.at("size").get<std::size_t>() != ids.size()) {
    parsed.record_issues.issues.push_back({IssueKind::record_mismatch,
                                           fmt::format("declared size {} but {} edges listed",
                                                       doc.at("size").get<std::size_t>(), ids.size()),
                                           std::nullopt, std::nullopt, {}});
  }
  parsed.matching = RainbowMatching(graph, std::move(ids));
  return parsed;
}

Json to_json(const CountReport& c) {
  Json degrees = Json::array();
  for (const auto& [v, d] : c.rest_degrees) degrees.push_back(Json{{"vertex", v}, {"degree", d}});
  return Json{
      {"R_size", c.reach_colours},
      {"V_reach_size", c.reach_vertices},
      {"V_star_size", c.star_vertices},
      {"V_rest_size", c.rest_vertices},
      {"R_edges", c.reach_edges},
      {"R_edges_at_V_star", c.reach_edges_at_star},
      {"R_edges_at_V_rest_not_V_star", c.reach_edges_rest_not_star},
      {"R_edges_inside_V_rest", c.reach_edges_inside_rest},
      {"max_one_colour_inside_V_rest", c.max_colour_inside_rest},
      {"rest_degrees", std::move(degrees)},
      {"inequalities",
       Json{{"min_R_edges", c.min_reach_edges},
            {"V_star_cap", c.star_cap},
            {"V_rest_lower_bound", c.rest_lower_bound},
            {"inside_V_rest_lower_bound", c.rest_inside_lower_bound},
            {"inside_V_rest_capacity", c.rest_inside_capacity},
            {"contradiction_fires", c.contradiction_fires}}},
  };
}

Json stats_to_json(const ColouredMultigraph& graph, const RainbowMatching& matching, const FlexibleStructure& flex,
                   const GoodBadReport& good_bad, const Hierarchy& hierarchy, const CountReport& counts) {
  Json levels = Json::array();
  for (std::size_t i = 0; i < hierarchy.levels.size(); ++i) {
    const HierarchyLevel& level = hierarchy.levels[i];
    levels.push_back(Json{{"i", i + 1}, {"size", level.edges.size()}, {"colours", level.colours.sorted()}});
  }
  std::size_t bad = 0;
  for (std::size_t b : good_bad.bad_count) bad += b;
  return Json{
      {"matching_size", matching.size()},
      {"num_colours", graph.num_colours()},
      {"free_colours", matching.num_free_colours()},
      {"levels", std::move(levels)},
      {"m", hierarchy.m()},
      {"F_size", flex.colours.size()},
      {"R_size", hierarchy.reach_colours.size()},
      {"flexible_threshold", flex.threshold},
      {"good_edges", good_bad.num_good()},
      {"bad_edges", bad},
      {"stop_threshold", hierarchy.stop_threshold},
      {"stopped_size", hierarchy.stopped_candidates.size()},
      {"counting", to_json(counts)},
  };
}

namespace {

Json filters_to_json(const FilterCounters& f) {
  return Json{{"configurations", f.configurations},
              {"w_rejected", f.w_rejected},
              {"z_rejected", f.z_rejected},
              {"pivot_edge_rejected", f.pivot_edge_rejected},
              {"f_colour_rejected", f.f_colour_rejected},
              {"free_colour_rejected", f.free_colour_rejected},
              {"candidates", f.candidates},
              {"candidate_rejected", f.candidate_rejected},
              {"recursion_failed", f.recursion_failed}};
}

Json ids_to_json(const std::vector<EdgeId>& ids) {
  Json out = Json::array();
  for (EdgeId id : ids) out.push_back(id.index);
  return out;
}

}  // namespace

Json solve_report_to_json(const ColouredMultigraph& graph, const SolveReport& report, bool include_timing) {
  Json iterations = Json::array();
  for (const IterationRecord& rec : report.iterations) {
    Json j{{"size_before", rec.size_before},
           {"size_after", rec.size_after},
           {"m", rec.levels},
           {"F_size", rec.flexible_colours},
           {"R_size", rec.reach_colours},
           {"violations", rec.violations},
           {"attempts", rec.attempts},
           {"switches", rec.switches}};
    if (rec.applied) {
      j["applied"] = Json{{"kind", std::string(to_string(rec.applied->kind))},
                          {"edge_id", rec.applied->edge.index},
                          {"colour", rec.applied->colour},
                          {"witnesses", Json::array({rec.applied->first, rec.applied->second})}};
    }
    Json trace = Json::array();
    for (const Exchange& ex : rec.trace)
      trace.push_back(Json{{"removed", ids_to_json(ex.removed)}, {"added", ids_to_json(ex.added)}, {"depth", ex.depth}});
    j["trace"] = std::move(trace);
    j["filters"] = filters_to_json(rec.filters);
    iterations.push_back(std::move(j));
  }
  Json doc{{"status", std::string(to_string(report.status))},
           {"size", report.matching.size()},
           {"target_size", report.target_size},
           {"greedy_size", report.greedy_size},
           {"num_colours", graph.num_colours()},
           {"switches", report.total_switches},
           {"matching", matching_to_json(graph, report.matching)},
           {"iterations", std::move(iterations)}};
  if (report.final_hierarchy && report.final_counts) {
    Json levels = Json::array();
    for (std::size_t i = 0; i < report.final_hierarchy->levels.size(); ++i)
      levels.push_back(Json{{"i", i + 1},
                            {"size", report.final_hierarchy->levels[i].edges.size()},
                            {"colours", report.final_hierarchy->levels[i].colours.sorted()}});
    doc["diagnostics"] = Json{{"levels", std::move(levels)},
                              {"m", report.final_hierarchy->m()},
                              {"R_size", report.final_hierarchy->reach_colours.size()},
                              {"counting", to_json(*report.final_counts)}};
  }
  if (include_timing) doc["wall_ms"] = report.wall_ms;
  return doc;
}

Json oracle_to_json(const ColouredMultigraph& graph, const OracleResult& result) {
  return Json{{"status", std::string(to_string(result.status))},
              {"optimum", result.optimum},
              {"nodes_explored", result.nodes_explored},
              {"witness", matching_to_json(graph, RainbowMatching(graph, result.witness))}};
}

Json transversal_to_json(const TransversalResult& result) {
  Json cells = Json::array();
  for (const auto& [r, c] : result.cells) cells.push_back(Json::array({r, c}));
  return Json{{"status", std::string(to_string(result.status))},
              {"optimum", result.optimum},
              {"nodes_explored", result.nodes_explored},
              {"cells", std::move(cells)}};
}

}  // namespace rainbow
