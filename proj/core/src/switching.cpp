#include "rainbow/switching.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "rng.hpp"

namespace rainbow {

std::size_t closeness_growth(std::size_t level) {
  if (level == 0) throw std::invalid_argument("levels start at 1");
  return 3 * (std::size_t{1} << (level - 1)) - 2;
}

std::size_t switch_closeness_bound(std::size_t level) {
  if (level == 0) throw std::invalid_argument("levels start at 1");
  return 6 * (std::size_t{1} << (level - 1)) - 2;
}

std::size_t constraint_bound(std::size_t m, std::size_t level) {
  if (level == 0 || level > m) throw std::invalid_argument(fmt::format("level {} outside [1, {}]", level, m));
  return 2 * (m - level + 1);
}

std::string_view to_string(SwitchFailure failure) {
  switch (failure) {
    case SwitchFailure::none: return "none";
    case SwitchFailure::not_found: return "not_found";
    case SwitchFailure::budget_exceeded: return "budget_exceeded";
    case SwitchFailure::depth_exceeded: return "depth_exceeded";
    case SwitchFailure::effort_exhausted: return "effort_exhausted";
  }
  return "unknown";
}

FilterCounters& FilterCounters::operator+=(const FilterCounters& o) {
  configurations += o.configurations;
  w_rejected += o.w_rejected;
  z_rejected += o.z_rejected;
  pivot_edge_rejected += o.pivot_edge_rejected;
  f_colour_rejected += o.f_colour_rejected;
  free_colour_rejected += o.free_colour_rejected;
  candidates += o.candidates;
  candidate_rejected += o.candidate_rejected;
  recursion_failed += o.recursion_failed;
  return *this;
}

ContractCheck check_contract(const ColouredMultigraph& graph, const RainbowMatching& base, const SwitchRequest& request,
                             const RainbowMatching& result) {
  ContractCheck check;
  check.valid_matching = verify(graph, result).ok();
  check.same_size = result.size() == base.size();
  check.target_removed = !result.uses_colour(request.target_colour) && !result.covers(request.target_vertex);
  check.fixes_kept = std::all_of(request.fix.begin(), request.fix.end(), [&](EdgeId id) { return result.contains(id); });
  check.avoids_respected =
      std::none_of(request.avoid_vertices.begin(), request.avoid_vertices.end(),
                   [&](Vertex v) { return result.covers(v); }) &&
      std::none_of(request.avoid_colours.begin(), request.avoid_colours.end(),
                   [&](Colour c) { return result.uses_colour(c); });
  check.lambda = closeness(base, result).lambda;
  return check;
}

struct Switcher::Search {
  std::size_t max_nodes = 0;
  std::size_t top_level = 0;
  std::size_t nodes = 0;
  bool exhausted = false;
  bool depth_breach = false;
  FilterCounters filters;
  std::optional<detail::Rng> rng;

  bool tick() {
    if (++nodes > max_nodes) exhausted = true;
    return !exhausted;
  }
};

Switcher::Switcher(const ColouredMultigraph& graph, const RainbowMatching& base, const FlexibleStructure& flex,
                   const GoodBadReport& good_bad, const Hierarchy& hierarchy, SwitchLimits limits)
    : graph_(graph), base_(base), flex_(flex), good_bad_(good_bad), hierarchy_(hierarchy), limits_(limits) {}

void Switcher::check_request(const SwitchRequest& r) const {
  const std::size_t m = hierarchy_.m();
  if (r.level == 0 || r.level > m) throw std::invalid_argument(fmt::format("request level {} outside [1, {}]", r.level, m));
  const std::size_t level = hierarchy_.level_of_colour(r.target_colour);
  if (level == 0 || level > r.level)
    throw std::invalid_argument(fmt::format("colour {} is not reachable within level {}", r.target_colour, r.level));
  if (hierarchy_.head_of_colour[r.target_colour] != r.target_vertex)
    throw std::invalid_argument(fmt::format("vertex {} is not the head of colour {}", r.target_vertex, r.target_colour));
  const auto target = base_.edge_of_colour(r.target_colour);
  if (!target || !r.current.contains(*target))
    throw std::invalid_argument(fmt::format("m_c for colour {} is not in the current matching", r.target_colour));
  const std::size_t a = constraint_bound(m, r.level);
  if (r.fix.size() > a || r.avoid_vertices.size() > a || r.avoid_colours.size() > a)
    throw std::invalid_argument(fmt::format("constraint sets exceed the bound {}", a));
  for (EdgeId id : r.fix)
    if (id == *target || !r.current.contains(id))
      throw std::invalid_argument(fmt::format("fixed edge {} must lie in the current matching minus m_c", id.index));
  for (Vertex v : r.avoid_vertices)
    if (r.current.covers(v)) throw std::invalid_argument(fmt::format("avoided vertex {} is covered", v));
  for (Colour c : r.avoid_colours)
    if (r.current.uses_colour(c)) throw std::invalid_argument(fmt::format("avoided colour {} is used", c));
  if (closeness(base_, r.current).lambda > r.budget || r.current.size() != base_.size())
    throw std::invalid_argument("current matching is not budget-close to the base");
}

SwitchResult Switcher::robust_switch(const SwitchRequest& request) {
  check_request(request);
  SwitchResult result;
  if (request.budget > limits_.max_budget) {
    result.failure = SwitchFailure::budget_exceeded;
    return result;
  }
  Search search;
  search.max_nodes = limits_.max_nodes;
  search.top_level = request.level;
  if (limits_.shuffle_seed) search.rng.emplace(*limits_.shuffle_seed);
  result.outcome = run(request, 0, search);
  result.filters = search.filters;
  result.nodes = search.nodes;
  if (!result.outcome) {
    result.failure = search.depth_breach ? SwitchFailure::depth_exceeded
                     : search.exhausted  ? SwitchFailure::effort_exhausted
                                         : SwitchFailure::not_found;
  }
  return result;
}

std::optional<SwitchOutcome> Switcher::run(const SwitchRequest& request, std::size_t depth, Search& search) {
  if (depth >= search.top_level) {
    search.depth_breach = true;
    return std::nullopt;
  }
  const std::size_t level = hierarchy_.level_of_colour(request.target_colour);
  const EdgeId target = *base_.edge_of_colour(request.target_colour);
  const Vertex tail = *base_.twin(request.target_vertex);
  if (level == 1) return base_case(request, tail, target, depth, search);
  return inductive_case(request, level, tail, target, depth, search);
}

namespace {

template <class T>
bool listed(const std::vector<T>& xs, T x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

template <class T>
std::vector<T> with(std::vector<T> xs, std::initializer_list<T> extra) {
  xs.insert(xs.end(), extra);
  return xs;
}

}  // namespace

std::optional<SwitchOutcome> Switcher::base_case(const SwitchRequest& req, Vertex tail, EdgeId target,
                                                 std::size_t depth, Search& search) {
  struct Config {
    Vertex w, z;
    EdgeId f_edge, pivot_edge, free_edge;
  };
  std::vector<Config> survivors;
  const RainbowMatching& cur = req.current;
  FilterCounters& k = search.filters;

  for (EdgeId fe : graph_.incident(tail)) {
    if (!good_bad_.is_good(fe)) continue;
    const Edge& f = graph_.edge(fe);
    const Vertex w = f.other(tail);
    const EdgeId pivot_edge = *base_.edge_of_colour(f.colour);
    if (cur.covers(w) || listed(req.avoid_vertices, w)) {
      ++k.w_rejected;
      continue;
    }
    if (!cur.contains(pivot_edge) || listed(req.fix, pivot_edge)) {
      ++k.pivot_edge_rejected;
      continue;
    }
    if (cur.edge_of_colour(f.colour) != pivot_edge) {
      ++k.f_colour_rejected;
      continue;
    }
    const Edge& pe = graph_.edge(pivot_edge);
    for (Vertex x : {pe.u, pe.v}) {
      for (EdgeId ze : graph_.incident(x)) {
        const Edge& zedge = graph_.edge(ze);
        const Vertex z = zedge.other(x);
        if (base_.uses_colour(zedge.colour) || base_.covers(z)) continue;
        ++k.configurations;
        if (!search.tick()) return std::nullopt;
        if (z == w || cur.covers(z) || listed(req.avoid_vertices, z)) {
          ++k.z_rejected;
          continue;
        }
        if (cur.uses_colour(zedge.colour) || listed(req.avoid_colours, zedge.colour)) {
          ++k.free_colour_rejected;
          continue;
        }
        survivors.push_back({w, z, fe, pivot_edge, ze});
      }
    }
  }
  if (survivors.empty()) return std::nullopt;

  if (search.rng) {
    search.rng->shuffle(survivors);
  } else {
    std::sort(survivors.begin(), survivors.end(), [](const Config& a, const Config& b) {
      return std::tie(a.w, a.z, a.f_edge, a.pivot_edge, a.free_edge) <
             std::tie(b.w, b.z, b.f_edge, b.pivot_edge, b.free_edge);
    });
  }
  const Config& pick = survivors.front();
  const EdgeId removed[] = {target, pick.pivot_edge};
  const EdgeId added[] = {pick.f_edge, pick.free_edge};
  SwitchOutcome out;
  out.result = cur.exchanged(graph_, removed, added);
  out.trace.push_back({{target, pick.pivot_edge}, {pick.f_edge, pick.free_edge}, depth});
  out.used_level = 1;
  return finish(req, std::move(out), depth);
}

std::optional<SwitchOutcome> Switcher::inductive_case(const SwitchRequest& req, std::size_t level, Vertex tail,
                                                      EdgeId target, std::size_t depth, Search& search) {
  struct Candidate {
    Vertex w;
    EdgeId edge;
  };
  std::vector<Candidate> candidates;
  for (EdgeId id : graph_.incident(tail)) {
    const Edge& e = graph_.edge(id);
    const std::size_t j = hierarchy_.level_of_colour(e.colour);
    if (j == 0 || j >= level) continue;
    const Vertex w = e.other(tail);
    const std::size_t wl = hierarchy_.level_of_head(w);
    if (base_.covers(w) && (wl == 0 || wl >= level)) continue;
    candidates.push_back({w, id});
  }
  if (search.rng) {
    search.rng->shuffle(candidates);
  } else {
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return std::tie(a.w, a.edge) < std::tie(b.w, b.edge); });
  }

  const RainbowMatching& cur = req.current;
  FilterCounters& k = search.filters;
  for (const Candidate& cand : candidates) {
    if (!search.tick()) return std::nullopt;
    ++k.candidates;
    const Edge& e = graph_.edge(cand.edge);
    const Colour c1 = e.colour;
    const std::size_t j = hierarchy_.level_of_colour(c1);
    const EdgeId m1 = *base_.edge_of_colour(c1);
    if (!cur.contains(m1) || listed(req.fix, m1)) {
      ++k.candidate_rejected;
      continue;
    }

    if (!base_.covers(cand.w)) {
      // t(v)w with w free: clear colour c1 and vertex w, then swap vt(v) for t(v)w.
      if (cur.covers(cand.w) || listed(req.avoid_vertices, cand.w)) {
        ++k.candidate_rejected;
        continue;
      }
      SwitchRequest sub{cur,
                        c1,
                        hierarchy_.head_of_colour[c1],
                        with(req.fix, {target}),
                        with(req.avoid_vertices, {cand.w}),
                        req.avoid_colours,
                        req.budget,
                        j};
      auto first = run(sub, depth + 1, search);
      if (!first) {
        if (search.exhausted || search.depth_breach) return std::nullopt;
        ++k.recursion_failed;
        continue;
      }
      SwitchOutcome out;
      const EdgeId removed[] = {target};
      const EdgeId added[] = {cand.edge};
      out.result = first->result.exchanged(graph_, removed, added);
      out.trace = std::move(first->trace);
      out.trace.push_back({{target}, {cand.edge}, depth});
      out.used_level = level;
      return finish(req, std::move(out), depth);
    }

    // t(v)u with u a lower-level head: clear c1 keeping ut(u), then clear
    // ut(u) itself, then swap vt(v) for t(v)u.
    const Vertex u = cand.w;
    const EdgeId mu = *base_.edge_covering(u);
    const Colour c2 = graph_.edge(mu).colour;
    if (!cur.contains(mu) || listed(req.fix, mu)) {
      ++k.candidate_rejected;
      continue;
    }
    SwitchRequest sub1{cur,
                       c1,
                       hierarchy_.head_of_colour[c1],
                       with(req.fix, {target, mu}),
                       req.avoid_vertices,
                       req.avoid_colours,
                       req.budget,
                       j};
    auto first = run(sub1, depth + 1, search);
    if (!first) {
      if (search.exhausted || search.depth_breach) return std::nullopt;
      ++k.recursion_failed;
      continue;
    }
    SwitchRequest sub2{first->result,
                       c2,
                       u,
                       with(req.fix, {target}),
                       req.avoid_vertices,
                       with(req.avoid_colours, {c1}),
                       req.budget + switch_closeness_bound(j),
                       hierarchy_.level_of_head(u)};
    auto second = run(sub2, depth + 1, search);
    if (!second) {
      if (search.exhausted || search.depth_breach) return std::nullopt;
      ++k.recursion_failed;
      continue;
    }
    SwitchOutcome out;
    const EdgeId removed[] = {target};
    const EdgeId added[] = {cand.edge};
    out.result = second->result.exchanged(graph_, removed, added);
    out.trace = std::move(first->trace);
    out.trace.insert(out.trace.end(), second->trace.begin(), second->trace.end());
    out.trace.push_back({{target}, {cand.edge}, depth});
    out.used_level = level;
    return finish(req, std::move(out), depth);
  }
  return std::nullopt;
}

SwitchOutcome Switcher::finish(const SwitchRequest& request, SwitchOutcome outcome, std::size_t depth) {
  const ContractCheck check = check_contract(graph_, base_, request, outcome.result);
  outcome.lambda = check.lambda;
  if (!check.clauses_hold() || outcome.lambda > request.budget + switch_closeness_bound(outcome.used_level))
    throw std::logic_error(fmt::format("robust switch on colour {} broke its contract", request.target_colour));
  ++switches_;
  if (observer_) observer_(SwitchRecord{request, outcome, depth});
  return outcome;
}

AugmentResult augment(Switcher& switcher, const Violation& violation) {
  const ColouredMultigraph& graph = switcher.graph();
  const RainbowMatching& base = switcher.base();
  const Hierarchy& hierarchy = switcher.hierarchy();
  AugmentResult out;

  auto finish = [&](const RainbowMatching& before, std::vector<EdgeId> removed, EdgeId added) {
    std::vector<EdgeId> add{added};
    if (violation.kind == ViolationKind::flexible_swap) add.push_back(*violation.free_colour_edge);
    RainbowMatching next = before.exchanged(graph, removed, add);
    if (!verify(graph, next).ok() || next.size() != base.size() + 1) {
      out.note = "final insertion does not yield a larger rainbow matching";
      out.failure = SwitchFailure::not_found;
      return;
    }
    out.trace.push_back({std::move(removed), std::move(add), 0});
    out.matching = std::move(next);
  };

  // Runs one switch of a chain, accumulating diagnostics. Returns the new
  // current matching on success.
  auto step = [&](const RainbowMatching& current, Colour colour, std::vector<EdgeId> fix, std::vector<Vertex> avoid_v,
                  std::vector<Colour> avoid_c) -> std::optional<RainbowMatching> {
    SwitchRequest req{current,
                      colour,
                      hierarchy.head_of_colour[colour],
                      std::move(fix),
                      std::move(avoid_v),
                      std::move(avoid_c),
                      closeness(base, current).lambda,
                      hierarchy.m()};
    SwitchResult r = switcher.robust_switch(req);
    out.filters += r.filters;
    if (!r.ok()) {
      out.failure = r.failure;
      out.note = fmt::format("switch on colour {} failed: {}", colour, to_string(r.failure));
      return std::nullopt;
    }
    ++out.switches;
    out.trace.insert(out.trace.end(), r.outcome->trace.begin(), r.outcome->trace.end());
    return std::move(r.outcome->result);
  };

  const Edge& e = graph.edge(violation.edge);
  switch (violation.kind) {
    case ViolationKind::direct_extension:
      finish(base, {}, violation.edge);
      break;
    case ViolationKind::flexible_swap:
      finish(base, {*violation.matched_edge}, violation.edge);
      break;
    case ViolationKind::external_reach: {
      const Vertex v = violation.first, w = violation.second;
      const Colour cv = graph.edge(*base.edge_covering(v)).colour;
      const EdgeId mc = *base.edge_of_colour(e.colour);
      auto m1 = step(base, cv, {mc}, {w}, {});
      if (!m1) break;
      auto m2 = step(*m1, e.colour, {}, {v, w}, {});
      if (!m2) break;
      finish(*m2, {}, violation.edge);
      break;
    }
    case ViolationKind::reach_pair: {
      const Vertex v = violation.first, u = violation.second;
      const EdgeId mv = *base.edge_covering(v), mu = *base.edge_covering(u);
      const EdgeId m3 = *base.edge_of_colour(e.colour);
      auto m1 = step(base, graph.edge(mv).colour, {mu, m3}, {}, {});
      if (!m1) break;
      auto m2 = step(*m1, graph.edge(mu).colour, {m3}, {v}, {});
      if (!m2) break;
      auto m3r = step(*m2, e.colour, {}, {u, v}, {});
      if (!m3r) break;
      finish(*m3r, {}, violation.edge);
      break;
    }
    case ViolationKind::free_pair: {
      auto m1 = step(base, e.colour, {}, {e.u, e.v}, {});
      if (!m1) break;
      finish(*m1, {}, violation.edge);
      break;
    }
  }
  return out;
}

}  // namespace rainbow
