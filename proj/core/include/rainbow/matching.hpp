#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rainbow/instances.hpp"
#include "rainbow/multigraph.hpp"

namespace rainbow {

/// A set of edges together with colour and vertex lookups. Construction does
/// not validate; run verify() on anything not produced by this library.
/// Values are never mutated in place: exchanged() returns a new matching.
class RainbowMatching {
 public:
  RainbowMatching() = default;
  /// Empty matching sized for `graph`.
  explicit RainbowMatching(const ColouredMultigraph& graph);
  RainbowMatching(const ColouredMultigraph& graph, std::vector<EdgeId> edges);

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  /// Sorted by id.
  std::span<const EdgeId> edges() const { return edges_; }
  bool contains(EdgeId id) const;

  bool covers(Vertex v) const { return v < vertex_edge_.size() && vertex_edge_[v] != kNone; }
  bool uses_colour(Colour c) const { return c < colour_edge_.size() && colour_edge_[c] != kNone; }
  /// m_c: the matching edge of colour c.
  std::optional<EdgeId> edge_of_colour(Colour c) const;
  std::optional<EdgeId> edge_covering(Vertex v) const;
  /// t(v): the other endpoint of v's matching edge.
  std::optional<Vertex> twin(Vertex v) const;

  /// V0: vertices not covered, ascending.
  std::vector<Vertex> free_vertices() const;
  /// C0: colours not used, ascending.
  std::vector<Colour> free_colours() const;
  std::size_t num_free_colours() const { return colour_edge_.size() - used_colours_; }

  RainbowMatching exchanged(const ColouredMultigraph& graph, std::span<const EdgeId> removed,
                            std::span<const EdgeId> added) const;

  friend bool operator==(const RainbowMatching& a, const RainbowMatching& b) { return a.edges_ == b.edges_; }

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;
  void index(const ColouredMultigraph& graph);

  std::vector<EdgeId> edges_;
  std::vector<std::uint32_t> colour_edge_;
  std::vector<std::uint32_t> vertex_edge_;
  std::vector<std::uint32_t> mate_;
  std::size_t used_colours_ = 0;
};

/// |a △ b| and whether |a| = |b|.
struct Closeness {
  std::size_t lambda = 0;
  bool sizes_equal = true;
};

Closeness closeness(const RainbowMatching& a, const RainbowMatching& b);

/// Empty iff the edges exist, are pairwise vertex-disjoint, carry distinct
/// colours, and the derived lookups agree with the edge list.
ValidationReport verify(const ColouredMultigraph& graph, const RainbowMatching& matching);

/// Maximal rainbow matching by a seeded shuffled edge scan.
RainbowMatching greedy(const ColouredMultigraph& graph, Seed seed);

/// Edges with one endpoint free and one covered whose colour lies in
/// `colours`, ascending by id.
std::vector<EdgeId> external_edges(const ColouredMultigraph& graph, const RainbowMatching& matching,
                                   const ColourSet& colours);

bool is_external(const ColouredMultigraph& graph, const RainbowMatching& matching, EdgeId id);

}  // namespace rainbow
