#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/instances.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/reachability.hpp"
#include "rainbow/switching.hpp"

namespace rainbow {

enum class SolveStatus { target_reached, stalled, iteration_cap };

std::string_view to_string(SolveStatus status);

struct SolveOptions {
  InstanceParams params;
  std::size_t target_deficit = 0;
  Seed seed;
  SwitchLimits limits;
  std::size_t max_iterations = 10000;
  /// Called for every successful robust switch, recursive ones included.
  std::function<void(const SwitchRecord&, const RainbowMatching& base)> on_switch;
};

struct IterationRecord {
  std::size_t size_before = 0;
  std::size_t size_after = 0;
  std::size_t levels = 0;          // m
  std::size_t flexible_colours = 0;  // |F|
  std::size_t reach_colours = 0;     // |R|
  std::size_t violations = 0;
  std::size_t attempts = 0;
  std::size_t switches = 0;
  std::optional<Violation> applied;
  std::vector<Exchange> trace;
  FilterCounters filters;
};

struct SolveReport {
  RainbowMatching matching;
  SolveStatus status = SolveStatus::stalled;
  std::size_t target_size = 0;
  std::vector<IterationRecord> iterations;
  std::size_t total_switches = 0;
  std::size_t greedy_size = 0;
  /// Structure at the final matching, when it leaves a colour unused.
  std::optional<Hierarchy> final_hierarchy;
  std::optional<CountReport> final_counts;
  double wall_ms = 0;
};

/// Greedy start, then repeatedly: flexible structure, good/bad split,
/// hierarchy, violations, and augmentation of the first violation that
/// yields one, until the matching reaches n - target_deficit, nothing
/// augments, or the iteration cap is hit.
SolveReport solve(const ColouredMultigraph& graph, const SolveOptions& options);

/// Full analysis of one matching: the pieces solve() rebuilds each round.
struct Analysis {
  FlexibleStructure flex;
  GoodBadReport good_bad;
  Hierarchy hierarchy;
};

Analysis analyse(const ColouredMultigraph& graph, const RainbowMatching& matching, const InstanceParams& params);

}  // namespace rainbow
