#include "rainbow/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace rainbow {

std::size_t fraction_threshold(double fraction, std::size_t count) {
  const double raw = std::ceil(fraction * static_cast<double>(count) - 1e-9);
  return std::max<std::size_t>(1, raw > 0 ? static_cast<std::size_t>(raw) : 0);
}

namespace {

// Orients a matching edge given which endpoints qualify as a tail.
std::optional<OrientedEdge> orient(EdgeId id, const Edge& e, bool u_ok, bool v_ok) {
  if (!u_ok && !v_ok) return std::nullopt;
  Vertex tail = e.u;
  if (u_ok && v_ok) {
    tail = std::min(e.u, e.v);
  } else if (v_ok) {
    tail = e.v;
  }
  return OrientedEdge{id, tail, e.other(tail)};
}

}  // namespace

FlexibleStructure compute_flexible(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                   const InstanceParams& params) {
  FlexibleStructure flex;
  flex.heads = VertexSet(graph.num_vertices());
  flex.colours = ColourSet(graph.num_colours());
  flex.external_free_degree.assign(graph.num_vertices(), 0);
  flex.num_free_colours = matching.num_free_colours();
  if (flex.num_free_colours == 0) {
    flex.all_colours_used = true;
    return flex;
  }
  flex.threshold = fraction_threshold(params.alpha, flex.num_free_colours);

  for (Vertex x = 0; x < graph.num_vertices(); ++x) {
    if (!matching.covers(x)) continue;
    std::uint32_t count = 0;
    for (EdgeId id : graph.incident(x)) {
      const Edge& e = graph.edge(id);
      if (!matching.uses_colour(e.colour) && !matching.covers(e.other(x))) ++count;
    }
    flex.external_free_degree[x] = count;
  }

  for (EdgeId id : matching.edges()) {
    const Edge& e = graph.edge(id);
    auto oriented = orient(id, e, flex.external_free_degree[e.u] >= flex.threshold,
                           flex.external_free_degree[e.v] >= flex.threshold);
    if (!oriented) continue;
    flex.e0.push_back(*oriented);
    flex.heads.insert(oriented->head);
    flex.colours.insert(e.colour);
  }
  return flex;
}

std::size_t GoodBadReport::num_good() const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](const auto& c) { return c.good; }));
}

GoodBadReport classify_good_bad(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                const FlexibleStructure& flex, const InstanceParams& params) {
  GoodBadReport report;
  report.bad_count.assign(graph.num_colours(), 0);
  report.good_flag.assign(graph.num_edges(), 0);
  if (flex.all_colours_used) return report;
  report.half_threshold = fraction_threshold(params.alpha / 2.0, flex.num_free_colours);

  // External free-colour edges at x that avoid w.
  auto avoiding_count = [&](Vertex x, Vertex w) {
    std::size_t to_w = 0;
    for (EdgeId id : graph.incident(x)) {
      const Edge& e = graph.edge(id);
      if (e.other(x) == w && !matching.uses_colour(e.colour)) ++to_w;
    }
    return flex.external_free_degree[x] - to_w;
  };

  for (Colour c : flex.colours.sorted()) {
    const Edge& mc = graph.edge(*matching.edge_of_colour(c));
    for (EdgeId id : graph.colour_class(c)) {
      if (!is_external(graph, matching, id)) continue;
      const Edge& e = graph.edge(id);
      FlexibleEdgeClass cls;
      cls.edge = id;
      cls.colour = c;
      cls.matched_end = matching.covers(e.u) ? e.u : e.v;
      cls.free_end = e.other(cls.matched_end);
      const std::size_t at_u = avoiding_count(mc.u, cls.free_end);
      const std::size_t at_v = avoiding_count(mc.v, cls.free_end);
      if (at_u > at_v || (at_u == at_v && mc.u < mc.v)) {
        cls.pivot = mc.u;
        cls.pivot_count = at_u;
      } else {
        cls.pivot = mc.v;
        cls.pivot_count = at_v;
      }
      cls.good = cls.pivot_count >= report.half_threshold;
      if (cls.good) {
        report.good_flag[id.index] = 1;
      } else {
        ++report.bad_count[c];
      }
      report.edges.push_back(cls);
    }
  }
  std::sort(report.edges.begin(), report.edges.end(), [](const auto& a, const auto& b) { return a.edge < b.edge; });
  return report;
}

Hierarchy build_hierarchy(const ColouredMultigraph& graph, const RainbowMatching& matching,
                          const FlexibleStructure& flex, const GoodBadReport& good_bad, const InstanceParams& params) {
  Hierarchy h;
  h.reach_vertices = VertexSet(graph.num_vertices());
  h.reach_colours = ColourSet(graph.num_colours());
  h.colour_level.assign(graph.num_colours(), 0);
  h.head_level.assign(graph.num_vertices(), 0);
  h.certifier_of_colour.assign(graph.num_colours(), 0);
  h.head_of_colour.assign(graph.num_colours(), 0);
  h.stop_threshold = fraction_threshold(params.alpha, graph.num_colours());
  if (flex.all_colours_used) return h;

  std::vector<std::uint8_t> placed(graph.num_edges(), 0);

  auto commit = [&](HierarchyLevel level) {
    const auto i = static_cast<std::uint32_t>(h.levels.size() + 1);
    level.heads = VertexSet(graph.num_vertices());
    level.colours = ColourSet(graph.num_colours());
    for (std::size_t k = 0; k < level.edges.size(); ++k) {
      const OrientedEdge& oe = level.edges[k];
      const Colour c = graph.edge(oe.edge).colour;
      placed[oe.edge.index] = 1;
      level.heads.insert(oe.head);
      level.colours.insert(c);
      h.reach_vertices.insert(oe.head);
      h.reach_colours.insert(c);
      h.colour_level[c] = i;
      h.head_level[oe.head] = i;
      h.certifier_of_colour[c] = level.certifier[k];
      h.head_of_colour[c] = oe.head;
    }
    h.levels.push_back(std::move(level));
  };

  // Level 1: tails meeting enough good F-edges.
  {
    const std::size_t threshold = fraction_threshold(params.alpha, flex.colours.size());
    std::vector<std::size_t> good_at(graph.num_vertices(), 0);
    for (const auto& cls : good_bad.edges)
      if (cls.good) ++good_at[cls.matched_end];
    HierarchyLevel level;
    if (!flex.colours.empty()) {
      for (EdgeId id : matching.edges()) {
        const Edge& e = graph.edge(id);
        if (auto oe = orient(id, e, good_at[e.u] >= threshold, good_at[e.v] >= threshold)) {
          level.edges.push_back(*oe);
          level.certifier.push_back(0);
        }
      }
    }
    if (level.edges.size() < h.stop_threshold) {
      h.stopped_candidates = std::move(level.edges);
      return h;
    }
    commit(std::move(level));
  }

  // Level i > 1: tails meeting, for some j < i, enough R_j-edges into V0 or
  // an earlier head.
  while (true) {
    const std::size_t i = h.levels.size() + 1;
    std::vector<std::size_t> level_threshold(i, 0);
    for (std::size_t j = 1; j < i; ++j) level_threshold[j] = fraction_threshold(params.alpha, h.levels[j - 1].colours.size());

    // Least certifying level for x as a tail, or 0.
    auto certify = [&](Vertex x) -> std::size_t {
      std::vector<std::size_t> count(i, 0);
      for (EdgeId id : graph.incident(x)) {
        const Edge& e = graph.edge(id);
        const std::size_t j = h.colour_level[e.colour];
        if (j == 0) continue;
        const Vertex u = e.other(x);
        const std::size_t ul = h.head_level[u];
        if (!matching.covers(u) || (ul >= 1 && ul < i)) ++count[j];
      }
      for (std::size_t j = 1; j < i; ++j)
        if (count[j] >= level_threshold[j]) return j;
      return 0;
    };

    HierarchyLevel level;
    for (EdgeId id : matching.edges()) {
      if (placed[id.index]) continue;
      const Edge& e = graph.edge(id);
      const std::size_t ju = certify(e.u);
      const std::size_t jv = certify(e.v);
      if (auto oe = orient(id, e, ju != 0, jv != 0)) {
        level.edges.push_back(*oe);
        level.certifier.push_back(oe->tail == e.u ? ju : jv);
      }
    }
    if (level.edges.size() < h.stop_threshold) {
      h.stopped_candidates = std::move(level.edges);
      return h;
    }
    commit(std::move(level));
  }
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::direct_extension: return "direct_extension";
    case ViolationKind::external_reach: return "C1";
    case ViolationKind::reach_pair: return "C2";
    case ViolationKind::free_pair: return "C3";
    case ViolationKind::flexible_swap: return "flexible_swap";
  }
  return "unknown";
}

std::vector<Violation> find_violations(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                       const Hierarchy& hierarchy) {
  std::vector<Violation> out;
  auto ordered = [](Vertex a, Vertex b) { return std::pair{std::min(a, b), std::max(a, b)}; };

  for (Colour c = 0; c < graph.num_colours(); ++c) {
    if (matching.uses_colour(c)) continue;
    for (EdgeId id : graph.colour_class(c)) {
      const Edge& e = graph.edge(id);
      if (matching.covers(e.u) || matching.covers(e.v)) continue;
      auto [a, b] = ordered(e.u, e.v);
      out.push_back({ViolationKind::direct_extension, id, c, a, b, std::nullopt, std::nullopt});
    }
  }

  const auto reach = hierarchy.reach_vertices.sorted();
  for (Vertex v : reach) {
    for (EdgeId id : graph.incident(v)) {
      const Edge& e = graph.edge(id);
      if (hierarchy.level_of_colour(e.colour) == 0) continue;
      const Vertex u = e.other(v);
      if (!matching.covers(u)) {
        out.push_back({ViolationKind::external_reach, id, e.colour, v, u, std::nullopt, std::nullopt});
      }
    }
  }
  for (Vertex v : reach) {
    for (EdgeId id : graph.incident(v)) {
      const Edge& e = graph.edge(id);
      if (hierarchy.level_of_colour(e.colour) == 0) continue;
      const Vertex u = e.other(v);
      if (u > v && hierarchy.reach_vertices.contains(u))
        out.push_back({ViolationKind::reach_pair, id, e.colour, v, u, std::nullopt, std::nullopt});
    }
  }
  for (Colour c : hierarchy.reach_colours.sorted()) {
    for (EdgeId id : graph.colour_class(c)) {
      const Edge& e = graph.edge(id);
      if (matching.covers(e.u) || matching.covers(e.v)) continue;
      auto [a, b] = ordered(e.u, e.v);
      out.push_back({ViolationKind::free_pair, id, c, a, b, std::nullopt, std::nullopt});
    }
  }

  for (Colour c = 0; c < graph.num_colours(); ++c) {
    auto mc = matching.edge_of_colour(c);
    if (!mc) continue;
    const Edge& me = graph.edge(*mc);
    for (EdgeId id : graph.colour_class(c)) {
      const Edge& e = graph.edge(id);
      if (matching.covers(e.u) || matching.covers(e.v)) continue;
      std::optional<EdgeId> partner;
      for (Vertex x : {me.u, me.v}) {
        for (EdgeId fid : graph.incident(x)) {
          const Edge& f = graph.edge(fid);
          const Vertex z = f.other(x);
          if (matching.uses_colour(f.colour) || matching.covers(z) || e.touches(z)) continue;
          if (!partner || fid < *partner) partner = fid;
        }
      }
      if (!partner) continue;
      auto [a, b] = ordered(e.u, e.v);
      out.push_back({ViolationKind::flexible_swap, id, c, a, b, *mc, *partner});
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
    return std::tuple(static_cast<int>(x.kind), x.first, x.second, x.edge) <
           std::tuple(static_cast<int>(y.kind), y.first, y.second, y.edge);
  });
  return out;
}

CountReport counting_diagnostics(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                 const Hierarchy& hierarchy, const InstanceParams& params) {
  CountReport r;
  const std::size_t V = graph.num_vertices();
  std::vector<std::uint8_t> star(V, 0), rest(V, 0);
  for (Vertex v : hierarchy.reach_vertices.items()) star[*matching.twin(v)] = 1;
  for (const OrientedEdge& oe : hierarchy.stopped_candidates) star[oe.head] = star[oe.tail] = 1;
  for (Vertex v = 0; v < V; ++v) {
    if (star[v]) ++r.star_vertices;
    if (matching.covers(v) && !star[v] && !hierarchy.reach_vertices.contains(v)) {
      rest[v] = 1;
      ++r.rest_vertices;
    }
  }
  r.reach_colours = hierarchy.reach_colours.size();
  r.reach_vertices = hierarchy.reach_vertices.size();

  std::vector<std::size_t> inside_by_colour(graph.num_colours(), 0);
  for (Colour c : hierarchy.reach_colours.items()) {
    for (EdgeId id : graph.colour_class(c)) {
      const Edge& e = graph.edge(id);
      ++r.reach_edges;
      const bool at_star = star[e.u] || star[e.v];
      if (at_star) ++r.reach_edges_at_star;
      if (!at_star && (rest[e.u] || rest[e.v])) ++r.reach_edges_rest_not_star;
      if (rest[e.u] && rest[e.v]) {
        ++r.reach_edges_inside_rest;
        r.max_colour_inside_rest = std::max(r.max_colour_inside_rest, ++inside_by_colour[c]);
      }
    }
  }
  for (Vertex v = 0; v < V; ++v) {
    if (!rest[v]) continue;
    std::size_t deg = 0;
    for (EdgeId id : graph.incident(v)) {
      const Edge& e = graph.edge(id);
      if (hierarchy.level_of_colour(e.colour) == 0) continue;
      const Vertex u = e.other(v);
      if (!matching.covers(u) || hierarchy.reach_vertices.contains(u)) ++deg;
    }
    r.rest_degrees.emplace_back(v, deg);
  }

  const double R = static_cast<double>(r.reach_colours);
  const double n = static_cast<double>(graph.num_colours());
  const double Vp = static_cast<double>(r.rest_vertices);
  r.min_reach_edges = R * (1.0 + params.epsilon) * n;
  r.star_cap = (R + 2.0 * params.alpha * n) * R;
  r.rest_lower_bound = R * (Vp + params.epsilon * n) / 2.0;
  r.rest_inside_lower_bound = r.rest_lower_bound - params.alpha * R * Vp;
  r.rest_inside_capacity = R * Vp / 2.0;
  r.contradiction_fires = r.reach_colours > 0 && r.rest_inside_lower_bound > r.rest_inside_capacity;
  return r;
}

}  // namespace rainbow
