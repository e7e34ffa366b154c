#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rainbow {

using Vertex = std::uint32_t;
using Colour = std::uint32_t;

/// Identity of one parallel edge. Dense, 0-based, stable for the lifetime of
/// the graph that issued it.
struct EdgeId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(EdgeId, EdgeId) = default;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Colour colour = 0;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }
};

/// Dense membership set over a fixed universe [0, universe). Keeps insertion
/// order so iteration is deterministic.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : mask_(universe, 0) {}

  bool insert(std::uint32_t x);
  bool contains(std::uint32_t x) const { return x < mask_.size() && mask_[x] != 0; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t universe() const { return mask_.size(); }
  std::span<const std::uint32_t> items() const { return items_; }
  std::vector<std::uint32_t> sorted() const;

 private:
  std::vector<std::uint8_t> mask_;
  std::vector<std::uint32_t> items_;
};

using VertexSet = IndexSet;
using ColourSet = IndexSet;

/// A multigraph whose edges carry colours. Immutable after construction; the
/// constructor only rejects out-of-range ids. Loops and improper colourings
/// are representable so that validate() can report them.
class ColouredMultigraph {
 public:
  ColouredMultigraph() = default;
  ColouredMultigraph(std::size_t num_vertices, std::size_t num_colours, std::vector<Edge> edges);

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_colours() const { return num_colours_; }
  std::size_t num_edges() const { return edges_.size(); }

  bool contains(EdgeId id) const { return id.index < edges_.size(); }
  const Edge& edge(EdgeId id) const { return edges_.at(id.index); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const EdgeId> colour_class(Colour c) const { return by_colour_.at(c); }
  /// Incident edges of v, sorted by (colour, id).
  std::span<const EdgeId> incident(Vertex v) const { return incidence_.at(v); }
  /// Edges of colour c at v; length <= 1 in a properly coloured graph.
  std::span<const EdgeId> edges_at(Vertex v, Colour c) const;
  std::optional<EdgeId> edge_at(Vertex v, Colour c) const;

  std::size_t multiplicity(Vertex a, Vertex b) const;
  std::size_t max_multiplicity() const { return max_multiplicity_; }

  /// Rebuilds every index from the edge list and compares. Returns a
  /// description of the first mismatch, if any.
  std::optional<std::string> index_audit() const;

 private:
  struct Indexes {
    std::vector<std::vector<EdgeId>> by_colour;
    std::vector<std::vector<EdgeId>> incidence;
    std::unordered_map<std::uint64_t, std::uint32_t> multiplicity;
  };
  Indexes build_indexes() const;

  std::size_t num_vertices_ = 0;
  std::size_t num_colours_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> by_colour_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::unordered_map<std::uint64_t, std::uint32_t> multiplicity_;
  std::size_t max_multiplicity_ = 0;
};

enum class IssueKind {
  loop,
  improper_colouring,
  index_mismatch,
  unknown_edge,
  record_mismatch,
  shared_vertex,
  repeated_colour,
  derived_mismatch,
};

std::string_view to_string(IssueKind kind);

struct Issue {
  IssueKind kind;
  std::string message;
  std::optional<Vertex> vertex;
  std::optional<Colour> colour;
  std::vector<EdgeId> edges;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const ColouredMultigraph& graph);

/// Theorem-style thresholds. k is never materialised; the multiplicity cap
/// and minimum class size stand in for it.
struct InstanceParams {
  double epsilon = 0.5;
  double alpha = 0.5 / 12.0;
  std::size_t multiplicity_cap = 1;
  std::size_t min_colour_count = 0;

  /// Defaults: alpha = epsilon/12, min_colour_count = ceil((1+epsilon)n),
  /// multiplicity_cap = max(1, floor(n/16)).
  static InstanceParams defaults(std::size_t num_colours, double epsilon,
                                 std::optional<double> alpha = std::nullopt);

  /// True when alpha exceeds epsilon/12. Reported, never enforced.
  bool alpha_flagged() const;
};

struct ColourDeficit {
  Colour colour;
  std::size_t count;
};

struct HypothesisReport {
  std::vector<ColourDeficit> deficits;
  std::size_t max_multiplicity = 0;
  bool colour_counts_ok = true;
  bool multiplicity_ok = true;
  bool alpha_flagged = false;

  bool satisfied() const { return colour_counts_ok && multiplicity_ok; }
};

HypothesisReport hypothesis_check(const ColouredMultigraph& graph, const InstanceParams& params);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Reads the "V C" / "u v c" text format. Throws ParseError with a 1-based
/// line number, or InvalidInstance when the parsed graph fails validate().
ColouredMultigraph load_graph(std::istream& in);
ColouredMultigraph load_graph_file(const std::string& path);
void save_graph(const ColouredMultigraph& graph, std::ostream& out);

}  // namespace rainbow

template <>
struct std::hash<rainbow::EdgeId> {
  std::size_t operator()(rainbow::EdgeId id) const noexcept { return std::hash<std::uint32_t>{}(id.index); }
};
