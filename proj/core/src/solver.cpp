#include "rainbow/solver.hpp"

#include <chrono>
#include <stdexcept>

namespace rainbow {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::target_reached: return "target_reached";
    case SolveStatus::stalled: return "stalled";
    case SolveStatus::iteration_cap: return "iteration_cap";
  }
  return "unknown";
}

Analysis analyse(const ColouredMultigraph& graph, const RainbowMatching& matching, const InstanceParams& params) {
  Analysis a;
  a.flex = compute_flexible(graph, matching, params);
  a.good_bad = classify_good_bad(graph, matching, a.flex, params);
  a.hierarchy = build_hierarchy(graph, matching, a.flex, a.good_bad, params);
  return a;
}

SolveReport solve(const ColouredMultigraph& graph, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  const std::size_t n = graph.num_colours();
  report.target_size = options.target_deficit >= n ? 0 : n - options.target_deficit;

  RainbowMatching current = greedy(graph, options.seed);
  report.greedy_size = current.size();
  report.status = SolveStatus::iteration_cap;

  for (std::size_t iter = 0;; ++iter) {
    if (current.size() >= report.target_size) {
      report.status = SolveStatus::target_reached;
      break;
    }
    if (iter >= options.max_iterations) break;

    Analysis analysis = analyse(graph, current, options.params);
    const std::vector<Violation> violations = find_violations(graph, current, analysis.hierarchy);

    IterationRecord rec;
    rec.size_before = current.size();
    rec.levels = analysis.hierarchy.m();
    rec.flexible_colours = analysis.flex.colours.size();
    rec.reach_colours = analysis.hierarchy.reach_colours.size();
    rec.violations = violations.size();

    Switcher switcher(graph, current, analysis.flex, analysis.good_bad, analysis.hierarchy, options.limits);
    if (options.on_switch) {
      switcher.set_observer([&](const SwitchRecord& r) { options.on_switch(r, current); });
    }
    std::optional<RainbowMatching> next;
    for (const Violation& v : violations) {
      ++rec.attempts;
      AugmentResult result = augment(switcher, v);
      rec.switches += result.switches;
      rec.filters += result.filters;
      if (result.ok()) {
        if (result.matching->size() <= current.size()) throw std::logic_error("augmentation did not grow the matching");
        rec.applied = v;
        rec.trace = std::move(result.trace);
        next = std::move(result.matching);
        break;
      }
    }
    report.total_switches += rec.switches;
    rec.size_after = next ? next->size() : current.size();
    report.iterations.push_back(std::move(rec));
    if (!next) {
      report.status = SolveStatus::stalled;
      break;
    }
    current = std::move(*next);
  }

  if (current.num_free_colours() > 0) {
    Analysis analysis = analyse(graph, current, options.params);
    report.final_counts = counting_diagnostics(graph, current, analysis.hierarchy, options.params);
    report.final_hierarchy = std::move(analysis.hierarchy);
  }
  report.matching = std::move(current);
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace rainbow
