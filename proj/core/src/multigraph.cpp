#include "rainbow/multigraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace rainbow {

namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

bool IndexSet::insert(std::uint32_t x) {
  if (x >= mask_.size()) throw std::out_of_range(fmt::format("index {} outside set universe {}", x, mask_.size()));
  if (mask_[x] != 0) return false;
  mask_[x] = 1;
  items_.push_back(x);
  return true;
}

std::vector<std::uint32_t> IndexSet::sorted() const {
  std::vector<std::uint32_t> out(items_);
  std::sort(out.begin(), out.end());
  return out;
}

ColouredMultigraph::ColouredMultigraph(std::size_t num_vertices, std::size_t num_colours, std::vector<Edge> edges)
    : num_vertices_(num_vertices), num_colours_(num_colours), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u >= num_vertices_ || e.v >= num_vertices_)
      throw std::invalid_argument(fmt::format("edge {} has an endpoint outside [0, {})", i, num_vertices_));
    if (e.colour >= num_colours_)
      throw std::invalid_argument(fmt::format("edge {} has colour {} outside [0, {})", i, e.colour, num_colours_));
  }
  Indexes idx = build_indexes();
  by_colour_ = std::move(idx.by_colour);
  incidence_ = std::move(idx.incidence);
  multiplicity_ = std::move(idx.multiplicity);
  for (const auto& [key, count] : multiplicity_) max_multiplicity_ = std::max<std::size_t>(max_multiplicity_, count);
}

ColouredMultigraph::Indexes ColouredMultigraph::build_indexes() const {
  Indexes idx;
  idx.by_colour.resize(num_colours_);
  idx.incidence.resize(num_vertices_);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    idx.by_colour[e.colour].push_back(EdgeId{i});
    idx.incidence[e.u].push_back(EdgeId{i});
    if (e.v != e.u) idx.incidence[e.v].push_back(EdgeId{i});
    ++idx.multiplicity[pair_key(e.u, e.v)];
  }
  for (auto& list : idx.incidence) {
    std::sort(list.begin(), list.end(), [this](EdgeId a, EdgeId b) {
      const Colour ca = edges_[a.index].colour;
      const Colour cb = edges_[b.index].colour;
      return ca != cb ? ca < cb : a < b;
    });
  }
  return idx;
}

std::span<const EdgeId> ColouredMultigraph::edges_at(Vertex v, Colour c) const {
  const auto& list = incidence_.at(v);
  auto lo = std::partition_point(list.begin(), list.end(), [&](EdgeId id) { return edges_[id.index].colour < c; });
  auto hi = std::partition_point(lo, list.end(), [&](EdgeId id) { return edges_[id.index].colour == c; });
  return {lo, hi};
}

std::optional<EdgeId> ColouredMultigraph::edge_at(Vertex v, Colour c) const {
  auto span = edges_at(v, c);
  if (span.empty()) return std::nullopt;
  return span.front();
}

std::size_t ColouredMultigraph::multiplicity(Vertex a, Vertex b) const {
  auto it = multiplicity_.find(pair_key(a, b));
  return it == multiplicity_.end() ? 0 : it->second;
}

std::optional<std::string> ColouredMultigraph::index_audit() const {
  const Indexes fresh = build_indexes();
  if (fresh.by_colour != by_colour_) return "colour index disagrees with edge list";
  if (fresh.incidence != incidence_) return "incidence index disagrees with edge list";
  if (fresh.multiplicity != multiplicity_) return "multiplicity index disagrees with edge list";
  return std::nullopt;
}

std::string_view to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::loop: return "loop";
    case IssueKind::improper_colouring: return "improper_colouring";
    case IssueKind::index_mismatch: return "index_mismatch";
    case IssueKind::unknown_edge: return "unknown_edge";
    case IssueKind::record_mismatch: return "record_mismatch";
    case IssueKind::shared_vertex: return "disjointness_violated";
    case IssueKind::repeated_colour: return "rainbow_violated";
    case IssueKind::derived_mismatch: return "derived_mismatch";
  }
  return "unknown";
}

ValidationReport validate(const ColouredMultigraph& graph) {
  ValidationReport report;
  for (std::uint32_t i = 0; i < graph.num_edges(); ++i) {
    const Edge& e = graph.edge(EdgeId{i});
    if (e.u == e.v) {
      report.issues.push_back({IssueKind::loop, fmt::format("edge {} is a loop at vertex {}", i, e.u), e.u, e.colour,
                               {EdgeId{i}}});
    }
  }
  for (Vertex v = 0; v < graph.num_vertices(); ++v) {
    auto inc = graph.incident(v);
    for (std::size_t i = 0; i < inc.size();) {
      const Colour c = graph.edge(inc[i]).colour;
      std::size_t j = i;
      while (j < inc.size() && graph.edge(inc[j]).colour == c) ++j;
      if (j - i > 1) {
        std::vector<EdgeId> clash(inc.begin() + static_cast<std::ptrdiff_t>(i), inc.begin() + static_cast<std::ptrdiff_t>(j));
        report.issues.push_back({IssueKind::improper_colouring,
                                 fmt::format("vertex {} meets {} edges of colour {}", v, j - i, c), v, c,
                                 std::move(clash)});
      }
      i = j;
    }
  }
  if (auto mismatch = graph.index_audit()) {
    report.issues.push_back({IssueKind::index_mismatch, *mismatch, std::nullopt, std::nullopt, {}});
  }
  return report;
}

InstanceParams InstanceParams::defaults(std::size_t num_colours, double epsilon, std::optional<double> alpha) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  InstanceParams p;
  p.epsilon = epsilon;
  p.alpha = alpha.value_or(epsilon / 12.0);
  if (!(p.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const double n = static_cast<double>(num_colours);
  p.min_colour_count = static_cast<std::size_t>(std::ceil((1.0 + epsilon) * n - 1e-9));
  p.multiplicity_cap = std::max<std::size_t>(1, num_colours / 16);
  return p;
}

bool InstanceParams::alpha_flagged() const { return alpha > epsilon / 12.0 + 1e-12; }

HypothesisReport hypothesis_check(const ColouredMultigraph& graph, const InstanceParams& params) {
  HypothesisReport report;
  report.alpha_flagged = params.alpha_flagged();
  for (Colour c = 0; c < graph.num_colours(); ++c) {
    const std::size_t count = graph.colour_class(c).size();
    if (count < params.min_colour_count) {
      report.deficits.push_back({c, count});
      report.colour_counts_ok = false;
    }
  }
  report.max_multiplicity = graph.max_multiplicity();
  report.multiplicity_ok = report.max_multiplicity <= params.multiplicity_cap;
  return report;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(fmt::format("line {}: {}", line, what)), line_(line) {}

namespace {

std::string summarise(const ValidationReport& report) {
  std::string out = "instance failed validation";
  for (const Issue& issue : report.issues) out += "; " + issue.message;
  return out;
}

// Splits a line into integer tokens, ignoring everything after '#'.
std::optional<std::vector<long long>> tokens(const std::string& raw, std::size_t line_no) {
  std::string line = raw.substr(0, raw.find('#'));
  std::istringstream ss(line);
  std::vector<long long> out;
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(line_no, fmt::format("expected an integer, found '{}'", tok));
    }
    if (used != tok.size()) throw ParseError(line_no, fmt::format("expected an integer, found '{}'", tok));
    out.push_back(value);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace

InvalidInstance::InvalidInstance(ValidationReport report)
    : std::runtime_error(summarise(report)), report_(std::move(report)) {}

ColouredMultigraph load_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<long long, long long>> header;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto toks = tokens(line, line_no);
    if (!toks) continue;
    if (toks->size() != (header ? 3u : 2u))
      throw ParseError(line_no, header ? "expected 'u v c'" : "expected header 'V C'");
    if (!header) {
      if ((*toks)[0] < 0 || (*toks)[1] < 0) throw ParseError(line_no, "negative count in header");
      header = std::pair{(*toks)[0], (*toks)[1]};
      continue;
    }
    const long long u = (*toks)[0], v = (*toks)[1], c = (*toks)[2];
    if (u < 0 || u >= header->first || v < 0 || v >= header->first)
      throw ParseError(line_no, fmt::format("vertex out of range [0, {})", header->first));
    if (c < 0 || c >= header->second) throw ParseError(line_no, fmt::format("colour out of range [0, {})", header->second));
    if (u == v) throw ParseError(line_no, fmt::format("loop at vertex {}", u));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Colour>(c)});
  }
  if (!header) throw ParseError(line_no + 1, "missing header 'V C'");
  ColouredMultigraph graph(static_cast<std::size_t>(header->first), static_cast<std::size_t>(header->second),
                           std::move(edges));
  ValidationReport report = validate(graph);
  if (!report.ok()) throw InvalidInstance(std::move(report));
  return graph;
}

ColouredMultigraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  return load_graph(in);
}

void save_graph(const ColouredMultigraph& graph, std::ostream& out) {
  out << graph.num_vertices() << ' ' << graph.num_colours() << '\n';
  for (const Edge& e : graph.edges()) out << e.u << ' ' << e.v << ' ' << e.colour << '\n';
}

}  // namespace rainbow
