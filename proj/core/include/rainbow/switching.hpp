#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/matching.hpp"
#include "rainbow/reachability.hpp"

namespace rainbow {

/// Stated closeness growth per level: 3 * 2^(i-1) - 2, so 1, 4, 10, 22, ...
std::size_t closeness_growth(std::size_t level);

/// Growth the recursion actually guarantees: a level-1 exchange swaps two
/// edges for two (distance 4) and each level above adds at most twice the
/// level below plus 2, giving 6 * 2^(i-1) - 2 = 4, 10, 22, 46, ...
std::size_t switch_closeness_bound(std::size_t level);

/// The a-bound on constraint set sizes for a request at `level` when the
/// hierarchy has m levels: 2(m - level + 1).
std::size_t constraint_bound(std::size_t m, std::size_t level);

struct SwitchLimits {
  /// Largest budget a top-level request may carry.
  std::size_t max_budget = 64;
  /// Candidate configurations examined per top-level request.
  std::size_t max_nodes = 200000;
  /// When set, candidates are tried in a seeded shuffled order instead of
  /// lexicographic order.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Remove m_c (colour `target_colour`, head `target_vertex`) from `current`
/// while keeping `fix`, staying off `avoid_vertices` and `avoid_colours`.
struct SwitchRequest {
  RainbowMatching current;
  Colour target_colour = 0;
  Vertex target_vertex = 0;
  std::vector<EdgeId> fix;
  std::vector<Vertex> avoid_vertices;
  std::vector<Colour> avoid_colours;
  std::size_t budget = 0;
  std::size_t level = 0;
};

struct Exchange {
  std::vector<EdgeId> removed;
  std::vector<EdgeId> added;
  std::size_t depth = 0;
};

struct SwitchOutcome {
  RainbowMatching result;
  std::vector<Exchange> trace;
  std::size_t lambda = 0;  // closeness to the base matching
  std::size_t used_level = 0;
};

enum class SwitchFailure { none, not_found, budget_exceeded, depth_exceeded, effort_exhausted };

std::string_view to_string(SwitchFailure failure);

/// Rejections per filter family. The first five mirror the constraints on a
/// level-1 configuration (w, z, the pivot matching edge, the colour of the
/// F-edge, the colour of the free-colour edge); the rest count level > 1
/// candidates.
struct FilterCounters {
  std::size_t configurations = 0;
  std::size_t w_rejected = 0;
  std::size_t z_rejected = 0;
  std::size_t pivot_edge_rejected = 0;
  std::size_t f_colour_rejected = 0;
  std::size_t free_colour_rejected = 0;
  std::size_t candidates = 0;
  std::size_t candidate_rejected = 0;
  std::size_t recursion_failed = 0;

  FilterCounters& operator+=(const FilterCounters& o);
};

struct SwitchResult {
  std::optional<SwitchOutcome> outcome;
  SwitchFailure failure = SwitchFailure::none;
  FilterCounters filters;
  std::size_t nodes = 0;

  bool ok() const { return outcome.has_value(); }
};

/// Passed to the observer for every successful switch, recursive ones
/// included.
struct SwitchRecord {
  const SwitchRequest& request;
  const SwitchOutcome& outcome;
  std::size_t depth = 0;
};

/// Which parts of the robustness contract an outcome meets.
struct ContractCheck {
  bool valid_matching = false;
  bool same_size = false;
  bool target_removed = false;   // colour and vertex gone
  bool fixes_kept = false;
  bool avoids_respected = false;
  std::size_t lambda = 0;

  bool clauses_hold() const { return valid_matching && same_size && target_removed && fixes_kept && avoids_respected; }
};

ContractCheck check_contract(const ColouredMultigraph& graph, const RainbowMatching& base, const SwitchRequest& request,
                             const RainbowMatching& result);

/// Runs robust switches against one base matching and the hierarchy built
/// from it. Holds references: the graph, base and analysis objects must
/// outlive the Switcher.
class Switcher {
 public:
  Switcher(const ColouredMultigraph& graph, const RainbowMatching& base, const FlexibleStructure& flex,
           const GoodBadReport& good_bad, const Hierarchy& hierarchy, SwitchLimits limits = {});

  /// Throws std::invalid_argument if the request breaks its preconditions
  /// (target not in current, constraint sets too large or overlapping the
  /// current matching, current farther than budget from the base).
  SwitchResult robust_switch(const SwitchRequest& request);

  void set_observer(std::function<void(const SwitchRecord&)> observer) { observer_ = std::move(observer); }

  const ColouredMultigraph& graph() const { return graph_; }
  const RainbowMatching& base() const { return base_; }
  const Hierarchy& hierarchy() const { return hierarchy_; }
  std::size_t switches_performed() const { return switches_; }

 private:
  struct Search;

  void check_request(const SwitchRequest& request) const;
  std::optional<SwitchOutcome> run(const SwitchRequest& request, std::size_t depth, Search& search);
  std::optional<SwitchOutcome> base_case(const SwitchRequest& request, Vertex tail, EdgeId target, std::size_t depth,
                                         Search& search);
  std::optional<SwitchOutcome> inductive_case(const SwitchRequest& request, std::size_t level, Vertex tail,
                                              EdgeId target, std::size_t depth, Search& search);
  SwitchOutcome finish(const SwitchRequest& request, SwitchOutcome outcome, std::size_t depth);

  const ColouredMultigraph& graph_;
  const RainbowMatching& base_;
  const FlexibleStructure& flex_;
  const GoodBadReport& good_bad_;
  const Hierarchy& hierarchy_;
  SwitchLimits limits_;
  std::function<void(const SwitchRecord&)> observer_;
  std::size_t switches_ = 0;
};

struct AugmentResult {
  std::optional<RainbowMatching> matching;
  std::vector<Exchange> trace;
  std::size_t switches = 0;
  SwitchFailure failure = SwitchFailure::none;
  FilterCounters filters;
  std::string note;

  bool ok() const { return matching.has_value(); }
};

/// Turns a violation into a matching one edge larger by chaining robust
/// switches on the Switcher's base matching, then adding the violating edge.
AugmentResult augment(Switcher& switcher, const Violation& violation);

}  // namespace rainbow
