#include "rainbow/matching.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "rng.hpp"

namespace rainbow {

RainbowMatching::RainbowMatching(const ColouredMultigraph& graph) : RainbowMatching(graph, {}) {}

RainbowMatching::RainbowMatching(const ColouredMultigraph& graph, std::vector<EdgeId> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  index(graph);
}

void RainbowMatching::index(const ColouredMultigraph& graph) {
  colour_edge_.assign(graph.num_colours(), kNone);
  vertex_edge_.assign(graph.num_vertices(), kNone);
  mate_.assign(graph.num_vertices(), kNone);
  used_colours_ = 0;
  // First claimant wins; verify() reports any conflict.
  for (EdgeId id : edges_) {
    if (!graph.contains(id)) continue;
    const Edge& e = graph.edge(id);
    if (colour_edge_[e.colour] == kNone) {
      colour_edge_[e.colour] = id.index;
      ++used_colours_;
    }
    if (vertex_edge_[e.u] == kNone && vertex_edge_[e.v] == kNone) {
      vertex_edge_[e.u] = vertex_edge_[e.v] = id.index;
      mate_[e.u] = e.v;
      mate_[e.v] = e.u;
    }
  }
}

bool RainbowMatching::contains(EdgeId id) const { return std::binary_search(edges_.begin(), edges_.end(), id); }

std::optional<EdgeId> RainbowMatching::edge_of_colour(Colour c) const {
  if (!uses_colour(c)) return std::nullopt;
  return EdgeId{colour_edge_[c]};
}

std::optional<EdgeId> RainbowMatching::edge_covering(Vertex v) const {
  if (!covers(v)) return std::nullopt;
  return EdgeId{vertex_edge_[v]};
}

std::optional<Vertex> RainbowMatching::twin(Vertex v) const {
  if (!covers(v)) return std::nullopt;
  return mate_[v];
}

std::vector<Vertex> RainbowMatching::free_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_edge_.size(); ++v)
    if (vertex_edge_[v] == kNone) out.push_back(v);
  return out;
}

std::vector<Colour> RainbowMatching::free_colours() const {
  std::vector<Colour> out;
  for (Colour c = 0; c < colour_edge_.size(); ++c)
    if (colour_edge_[c] == kNone) out.push_back(c);
  return out;
}

RainbowMatching RainbowMatching::exchanged(const ColouredMultigraph& graph, std::span<const EdgeId> removed,
                                           std::span<const EdgeId> added) const {
  std::vector<EdgeId> drop(removed.begin(), removed.end());
  std::sort(drop.begin(), drop.end());
  std::vector<EdgeId> next;
  next.reserve(edges_.size() + added.size());
  std::set_difference(edges_.begin(), edges_.end(), drop.begin(), drop.end(), std::back_inserter(next));
  next.insert(next.end(), added.begin(), added.end());
  return RainbowMatching(graph, std::move(next));
}

Closeness closeness(const RainbowMatching& a, const RainbowMatching& b) {
  auto ea = a.edges();
  auto eb = b.edges();
  std::size_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i] < eb[j]) {
      ++i;
    } else if (eb[j] < ea[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return {ea.size() + eb.size() - 2 * common, ea.size() == eb.size()};
}

ValidationReport verify(const ColouredMultigraph& graph, const RainbowMatching& matching) {
  ValidationReport report;
  std::vector<std::int64_t> vertex_owner(graph.num_vertices(), -1);
  std::vector<std::int64_t> colour_owner(graph.num_colours(), -1);
  EdgeId previous{UINT32_MAX};
  for (EdgeId id : matching.edges()) {
    if (id == previous) {
      report.issues.push_back({IssueKind::shared_vertex, fmt::format("edge {} listed twice", id.index), std::nullopt,
                               std::nullopt, {id}});
      continue;
    }
    previous = id;
    if (!graph.contains(id)) {
      report.issues.push_back(
          {IssueKind::unknown_edge, fmt::format("edge {} does not exist", id.index), std::nullopt, std::nullopt, {id}});
      continue;
    }
    const Edge& e = graph.edge(id);
    for (Vertex x : {e.u, e.v}) {
      if (vertex_owner[x] >= 0) {
        const EdgeId other{static_cast<std::uint32_t>(vertex_owner[x])};
        if (other != id)
          report.issues.push_back({IssueKind::shared_vertex,
                                   fmt::format("disjointness violated at vertex {} by edges {} and {}", x,
                                               other.index, id.index),
                                   x, std::nullopt, {other, id}});
      } else {
        vertex_owner[x] = id.index;
      }
    }
    if (colour_owner[e.colour] >= 0) {
      const EdgeId other{static_cast<std::uint32_t>(colour_owner[e.colour])};
      report.issues.push_back({IssueKind::repeated_colour,
                               fmt::format("rainbow violated: colour {} on edges {} and {}", e.colour, other.index,
                                           id.index),
                               std::nullopt, e.colour, {other, id}});
    } else {
      colour_owner[e.colour] = id.index;
    }
  }
  if (!report.ok()) return report;

  for (Vertex v = 0; v < graph.num_vertices(); ++v) {
    const bool owned = vertex_owner[v] >= 0;
    if (owned != matching.covers(v)) {
      report.issues.push_back({IssueKind::derived_mismatch, fmt::format("coverage of vertex {} inconsistent", v), v,
                               std::nullopt, {}});
      continue;
    }
    if (owned) {
      auto t = matching.twin(v);
      if (!t || matching.twin(*t) != v)
        report.issues.push_back(
            {IssueKind::derived_mismatch, fmt::format("twin map not an involution at {}", v), v, std::nullopt, {}});
    }
  }
  for (Colour c = 0; c < graph.num_colours(); ++c) {
    const bool owned = colour_owner[c] >= 0;
    if (owned != matching.uses_colour(c) ||
        (owned && matching.edge_of_colour(c)->index != static_cast<std::uint32_t>(colour_owner[c])))
      report.issues.push_back(
          {IssueKind::derived_mismatch, fmt::format("colour lookup of {} inconsistent", c), std::nullopt, c, {}});
  }
  return report;
}

RainbowMatching greedy(const ColouredMultigraph& graph, Seed seed) {
  std::vector<EdgeId> order(graph.num_edges());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = EdgeId{i};
  detail::Rng rng(seed.value);
  rng.shuffle(order);

  std::vector<std::uint8_t> vertex_used(graph.num_vertices()), colour_used(graph.num_colours());
  std::vector<EdgeId> chosen;
  for (EdgeId id : order) {
    const Edge& e = graph.edge(id);
    if (e.u == e.v || vertex_used[e.u] || vertex_used[e.v] || colour_used[e.colour]) continue;
    vertex_used[e.u] = vertex_used[e.v] = colour_used[e.colour] = 1;
    chosen.push_back(id);
  }
  return RainbowMatching(graph, std::move(chosen));
}

bool is_external(const ColouredMultigraph& graph, const RainbowMatching& matching, EdgeId id) {
  const Edge& e = graph.edge(id);
  return matching.covers(e.u) != matching.covers(e.v);
}

std::vector<EdgeId> external_edges(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                   const ColourSet& colours) {
  std::vector<EdgeId> out;
  for (Colour c : colours.items())
    for (EdgeId id : graph.colour_class(c))
      if (is_external(graph, matching, id)) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rainbow
