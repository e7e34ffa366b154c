#include "rainbow/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace rainbow {

std::string_view to_string(OracleStatus status) {
  return status == OracleStatus::optimal ? "optimal" : "cap_exceeded";
}

namespace {

using Clock = std::chrono::steady_clock;

class Budget {
 public:
  explicit Budget(const OracleLimits& limits) : limits_(limits), deadline_(Clock::now() + limits.time_limit) {}

  // False once either cap is hit; the clock is sampled every 4096 nodes.
  bool step() {
    ++nodes_;
    if (nodes_ > limits_.max_nodes) blown_ = true;
    if ((nodes_ & 4095u) == 0 && Clock::now() > deadline_) blown_ = true;
    return !blown_;
  }
  bool blown() const { return blown_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  OracleLimits limits_;
  Clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
  bool blown_ = false;
};

struct MatchingSearch {
  const ColouredMultigraph& graph;
  std::vector<Colour> order;  // colours with a non-empty class, smallest first
  std::vector<std::uint8_t> vertex_used;
  std::vector<EdgeId> chosen;
  std::vector<EdgeId> best;
  std::size_t free_vertices;
  std::size_t ceiling;
  Budget budget;

  void run(std::size_t k) {
    if (chosen.size() > best.size()) best = chosen;
    if (best.size() >= ceiling || !budget.step()) return;
    if (k == order.size()) return;
    const std::size_t bound = chosen.size() + std::min(order.size() - k, free_vertices / 2);
    if (bound <= best.size()) return;

    for (EdgeId id : graph.colour_class(order[k])) {
      const Edge& e = graph.edge(id);
      if (e.u == e.v || vertex_used[e.u] || vertex_used[e.v]) continue;
      vertex_used[e.u] = vertex_used[e.v] = 1;
      free_vertices -= 2;
      chosen.push_back(id);
      run(k + 1);
      chosen.pop_back();
      free_vertices += 2;
      vertex_used[e.u] = vertex_used[e.v] = 0;
      if (budget.blown() || best.size() >= ceiling) return;
    }
    run(k + 1);
  }
};

}  // namespace

OracleResult max_rainbow_matching(const ColouredMultigraph& graph, const OracleLimits& limits) {
  MatchingSearch s{graph, {}, std::vector<std::uint8_t>(graph.num_vertices(), 0), {}, {}, graph.num_vertices(), 0,
                   Budget(limits)};
  for (Colour c = 0; c < graph.num_colours(); ++c)
    if (!graph.colour_class(c).empty()) s.order.push_back(c);
  std::stable_sort(s.order.begin(), s.order.end(), [&](Colour a, Colour b) {
    return graph.colour_class(a).size() < graph.colour_class(b).size();
  });
  s.ceiling = std::min(s.order.size(), graph.num_vertices() / 2);
  s.run(0);

  OracleResult r;
  r.status = s.budget.blown() ? OracleStatus::cap_exceeded : OracleStatus::optimal;
  r.optimum = s.best.size();
  r.witness = std::move(s.best);
  std::sort(r.witness.begin(), r.witness.end());
  r.nodes_explored = s.budget.nodes();
  return r;
}

namespace {

struct TransversalSearch {
  const LatinSquare& square;
  std::vector<std::uint8_t> col_used;
  std::vector<std::uint8_t> symbol_used;
  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  std::vector<std::pair<std::size_t, std::size_t>> best;
  Budget budget;

  void run(std::size_t row) {
    const std::size_t n = square.order;
    if (chosen.size() > best.size()) best = chosen;
    if (best.size() == n || !budget.step()) return;
    if (row == n || chosen.size() + (n - row) <= best.size()) return;
    for (std::size_t col = 0; col < n; ++col) {
      const auto s = square.at(row, col);
      if (col_used[col] || symbol_used[s]) continue;
      col_used[col] = symbol_used[s] = 1;
      chosen.emplace_back(row, col);
      run(row + 1);
      chosen.pop_back();
      col_used[col] = symbol_used[s] = 0;
      if (budget.blown() || best.size() == n) return;
    }
    run(row + 1);
  }
};

}  // namespace

TransversalResult max_partial_transversal(const LatinSquare& square, const OracleLimits& limits) {
  check_latin(square);
  TransversalSearch s{square, std::vector<std::uint8_t>(square.order, 0), std::vector<std::uint8_t>(square.order, 0),
                      {}, {}, Budget(limits)};
  s.run(0);
  TransversalResult r;
  r.status = s.budget.blown() ? OracleStatus::cap_exceeded : OracleStatus::optimal;
  r.optimum = s.best.size();
  r.cells = std::move(s.best);
  r.nodes_explored = s.budget.nodes();
  return r;
}

}  // namespace rainbow
