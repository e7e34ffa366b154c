#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rainbow/matching.hpp"
#include "rainbow/multigraph.hpp"

namespace rainbow {

/// max(1, ceil(fraction * count)). A small tolerance keeps exact products
/// such as (1/4)*8 from rounding up through floating-point noise.
std::size_t fraction_threshold(double fraction, std::size_t count);

/// A matching edge with a chosen direction; head = twin(tail).
struct OrientedEdge {
  EdgeId edge;
  Vertex tail = 0;
  Vertex head = 0;

  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

/// E0, S0 and F for a matching. When both endpoints of a matching edge meet
/// enough external free-colour edges, the smaller vertex index becomes the
/// tail.
struct FlexibleStructure {
  std::vector<OrientedEdge> e0;
  VertexSet heads;    // S0
  ColourSet colours;  // F
  std::size_t threshold = 0;
  std::size_t num_free_colours = 0;
  /// Number of external free-colour edges at each vertex.
  std::vector<std::uint32_t> external_free_degree;
  /// C0 is empty: the matching already uses every colour. Nothing else is
  /// populated in that case.
  bool all_colours_used = false;
};

FlexibleStructure compute_flexible(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                   const InstanceParams& params);

/// Classification of one external F-edge t(v)w (w free).
struct FlexibleEdgeClass {
  EdgeId edge;
  Vertex matched_end = 0;
  Vertex free_end = 0;
  Colour colour = 0;
  bool good = false;
  /// Endpoint of m_c with the most external free-colour edges avoiding w.
  Vertex pivot = 0;
  std::size_t pivot_count = 0;
};

/// An external F-edge e of colour c is good when some endpoint of m_c meets at
/// least half_threshold external free-colour edges that share no endpoint
/// with e.
struct GoodBadReport {
  std::vector<FlexibleEdgeClass> edges;  // ascending by edge id
  std::vector<std::size_t> bad_count;    // per colour; zero outside F
  std::size_t half_threshold = 0;
  std::vector<std::uint8_t> good_flag;   // per edge id

  bool is_good(EdgeId id) const { return id.index < good_flag.size() && good_flag[id.index] != 0; }
  std::size_t num_good() const;
};

GoodBadReport classify_good_bad(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                const FlexibleStructure& flex, const InstanceParams& params);

struct HierarchyLevel {
  std::vector<OrientedEdge> edges;  // E_i
  /// Per edge: the lower level j whose colours certified it (0 for level 1,
  /// which is certified by good F-edges).
  std::vector<std::size_t> certifier;
  VertexSet heads;    // V_i
  ColourSet colours;  // R_i
};

struct Hierarchy {
  std::vector<HierarchyLevel> levels;  // levels[0] is E_1
  /// The candidate set whose size fell below the stop threshold (E_{m+1}).
  std::vector<OrientedEdge> stopped_candidates;
  std::size_t stop_threshold = 0;
  VertexSet reach_vertices;  // V_reach
  ColourSet reach_colours;   // R
  /// Level (1-based) of each colour / head vertex; 0 when unreached.
  std::vector<std::uint32_t> colour_level;
  std::vector<std::uint32_t> head_level;
  std::vector<std::size_t> certifier_of_colour;
  std::vector<Vertex> head_of_colour;

  std::size_t m() const { return levels.size(); }
  std::size_t level_of_colour(Colour c) const { return c < colour_level.size() ? colour_level[c] : 0; }
  std::size_t level_of_head(Vertex v) const { return v < head_level.size() ? head_level[v] : 0; }
};

Hierarchy build_hierarchy(const ColouredMultigraph& graph, const RainbowMatching& matching,
                          const FlexibleStructure& flex, const GoodBadReport& good_bad, const InstanceParams& params);

enum class ViolationKind {
  direct_extension,  // free-colour edge with both ends free
  external_reach,    // C1: v in V_reach, w free, colour in R
  reach_pair,        // C2: u, v in V_reach, colour in R
  free_pair,         // C3: R-edge with both ends free
  flexible_swap,     // c-edge inside V0 plus a disjoint free-colour edge at m_c
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  EdgeId edge;  // the edge that will be added
  Colour colour = 0;
  /// external_reach: first = reach head, second = free vertex.
  /// reach_pair: both reach heads, first < second.
  /// free_pair / direct_extension / flexible_swap: endpoints, first < second.
  Vertex first = 0;
  Vertex second = 0;
  /// flexible_swap only: m_c and the free-colour external edge at one of its
  /// endpoints.
  std::optional<EdgeId> matched_edge;
  std::optional<EdgeId> free_colour_edge;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// All violations, ordered by kind (direct, C1, C2, C3, swap) then by
/// (first, second, edge).
std::vector<Violation> find_violations(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                       const Hierarchy& hierarchy);

struct CountReport {
  std::size_t reach_colours = 0;       // |R|
  std::size_t reach_vertices = 0;      // |V_reach|
  std::size_t star_vertices = 0;       // |V*|
  std::size_t rest_vertices = 0;       // |V'|
  std::size_t reach_edges = 0;         // number of R-edges
  std::size_t reach_edges_at_star = 0;
  std::size_t reach_edges_rest_not_star = 0;  // incident to V' but not V*
  std::size_t reach_edges_inside_rest = 0;
  std::size_t max_colour_inside_rest = 0;     // most R-edges of one colour inside V'
  /// Per v in V' (ascending): number of R-edges from v into V0 ∪ V_reach.
  std::vector<std::pair<Vertex, std::size_t>> rest_degrees;

  // Both sides of each step of the counting chain at the given epsilon/alpha.
  double min_reach_edges = 0;            // |R|(1+eps)n
  double star_cap = 0;                   // (|R| + 2 alpha n)|R|
  double rest_lower_bound = 0;           // |R|(|V'| + eps n)/2
  double rest_inside_lower_bound = 0;    // |R|(|V'| + eps n)/2 - alpha|R||V'|
  double rest_inside_capacity = 0;       // |R||V'|/2
  bool contradiction_fires = false;      // rest_inside_lower_bound > rest_inside_capacity
};

CountReport counting_diagnostics(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                 const Hierarchy& hierarchy, const InstanceParams& params);

}  // namespace rainbow
