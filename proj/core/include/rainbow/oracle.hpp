#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "rainbow/instances.hpp"
#include "rainbow/matching.hpp"

namespace rainbow {

struct OracleLimits {
  std::uint64_t max_nodes = 100'000'000;
  std::chrono::milliseconds time_limit{60'000};
};

enum class OracleStatus { optimal, cap_exceeded };

std::string_view to_string(OracleStatus status);

/// When status is cap_exceeded, `optimum` is the best size found so far
/// (a lower bound) and `witness` realises it.
struct OracleResult {
  OracleStatus status = OracleStatus::optimal;
  std::size_t optimum = 0;
  std::vector<EdgeId> witness;
  std::uint64_t nodes_explored = 0;

  bool exact() const { return status == OracleStatus::optimal; }
};

/// Exact maximum rainbow matching by depth-first branch and bound. Colours
/// are branched smallest class first; each branch takes one edge of the
/// colour or skips it, pruned by current + remaining colours and by the
/// number of free vertices.
OracleResult max_rainbow_matching(const ColouredMultigraph& graph, const OracleLimits& limits = {});

struct TransversalResult {
  OracleStatus status = OracleStatus::optimal;
  std::size_t optimum = 0;
  std::vector<std::pair<std::size_t, std::size_t>> cells;  // (row, column)
  std::uint64_t nodes_explored = 0;

  bool exact() const { return status == OracleStatus::optimal; }
};

/// Largest partial transversal, searched directly over cells row by row.
/// Independent of the graph reduction.
TransversalResult max_partial_transversal(const LatinSquare& square, const OracleLimits& limits = {});

}  // namespace rainbow
