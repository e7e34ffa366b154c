#include <doctest.h>

#include <algorithm>

#include "brute.hpp"
#include "fixtures.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/solver.hpp"
#include "rainbow/switching.hpp"

using namespace rainbow;

namespace {

struct Setup {
  ColouredMultigraph graph;
  RainbowMatching base;
  InstanceParams params;
  Analysis analysis;

  Setup(fixtures::Fixture fx, double epsilon = 0.5)
      : graph(std::move(fx.graph)),
        base(graph, fx.matching),
        params(InstanceParams::defaults(graph.num_colours(), epsilon)),
        analysis(analyse(graph, base, params)) {}
};

}  // namespace

TEST_SUITE("switching") {
  TEST_CASE("closeness schedules") {
    CHECK(closeness_growth(1) == 1);
    CHECK(closeness_growth(2) == 4);
    CHECK(closeness_growth(3) == 10);
    CHECK(closeness_growth(4) == 22);
    CHECK(switch_closeness_bound(1) == 4);
    CHECK(switch_closeness_bound(2) == 10);
    CHECK(switch_closeness_bound(3) == 22);
    CHECK(switch_closeness_bound(4) == 46);
    for (std::size_t i = 2; i <= 8; ++i)
      CHECK(switch_closeness_bound(i) == 2 * switch_closeness_bound(i - 1) + 2);
    CHECK(constraint_bound(3, 1) == 6);
    CHECK(constraint_bound(3, 3) == 2);
  }

  TEST_CASE("base case on the two-edge fixture") {
    Setup s(fixtures::single_switch());
    Switcher sw(s.graph, s.base, s.analysis.flex, s.analysis.good_bad, s.analysis.hierarchy);
    SwitchRequest req;
    req.current = s.base;
    req.target_colour = 0;
    req.target_vertex = 0;
    req.level = 1;

    SUBCASE("swaps both edges") {
      const SwitchResult r = sw.robust_switch(req);
      REQUIRE(r.ok());
      const RainbowMatching& out = r.outcome->result;
      CHECK(std::vector<EdgeId>(out.edges().begin(), out.edges().end()) == std::vector<EdgeId>{EdgeId{2}, EdgeId{3}});
      CHECK(r.outcome->lambda == 4);
      CHECK(r.outcome->used_level == 1);
      CHECK_FALSE(out.uses_colour(0));
      CHECK_FALSE(out.covers(0));
      REQUIRE(r.outcome->trace.size() == 1);
      CHECK(r.outcome->trace[0].removed == std::vector<EdgeId>{EdgeId{0}, EdgeId{1}});
      CHECK(r.outcome->trace[0].added == std::vector<EdgeId>{EdgeId{2}, EdgeId{3}});
      const ContractCheck c = check_contract(s.graph, s.base, req, out);
      CHECK(c.clauses_hold());
      CHECK(c.lambda == 4);
      CHECK(sw.switches_performed() == 1);
    }
    SUBCASE("avoiding z leaves nothing") {
      req.avoid_vertices = {5};
      const SwitchResult r = sw.robust_switch(req);
      CHECK_FALSE(r.ok());
      CHECK(r.failure == SwitchFailure::not_found);
      CHECK(r.filters.z_rejected == 1);
    }
    SUBCASE("avoiding the only free colour leaves nothing") {
      req.avoid_colours = {2};
      const SwitchResult r = sw.robust_switch(req);
      CHECK_FALSE(r.ok());
      CHECK(r.filters.free_colour_rejected == 1);
    }
    SUBCASE("fixing the pivot edge leaves nothing") {
      req.fix = {EdgeId{1}};
      const SwitchResult r = sw.robust_switch(req);
      CHECK_FALSE(r.ok());
      CHECK(r.filters.pivot_edge_rejected == 1);
    }
    SUBCASE("preconditions") {
      SwitchRequest bad = req;
      bad.level = 2;
      CHECK_THROWS_AS(sw.robust_switch(bad), std::invalid_argument);
      bad = req;
      bad.target_vertex = 1;  // the tail, not the head
      CHECK_THROWS_AS(sw.robust_switch(bad), std::invalid_argument);
      bad = req;
      bad.avoid_vertices = {1};  // covered
      CHECK_THROWS_AS(sw.robust_switch(bad), std::invalid_argument);
      bad = req;
      bad.avoid_vertices = {4, 5, 2};  // more than 2(m - i + 1)
      CHECK_THROWS_AS(sw.robust_switch(bad), std::invalid_argument);
      bad = req;
      bad.fix = {EdgeId{0}};  // fixes the target
      CHECK_THROWS_AS(sw.robust_switch(bad), std::invalid_argument);
      bad = req;
      bad.target_colour = 1;  // not reachable
      CHECK_THROWS_AS(sw.robust_switch(bad), std::invalid_argument);
      bad = req;
      bad.budget = 1000;
      const SwitchResult r = sw.robust_switch(bad);
      CHECK(r.failure == SwitchFailure::budget_exceeded);
    }
    SUBCASE("observer sees the switch") {
      std::size_t seen = 0;
      sw.set_observer([&](const SwitchRecord& rec) {
        ++seen;
        CHECK(rec.depth == 0);
        CHECK(rec.outcome.lambda == 4);
      });
      CHECK(sw.robust_switch(req).ok());
      CHECK(seen == 1);
    }
  }

  TEST_CASE("augment") {
    SUBCASE("direct extension") {
      const ColouredMultigraph g(4, 2, {{0, 1, 0}, {2, 3, 1}});
      const RainbowMatching m(g, {EdgeId{0}});
      const InstanceParams p = InstanceParams::defaults(2, 0.5);
      const Analysis a = analyse(g, m, p);
      Switcher sw(g, m, a.flex, a.good_bad, a.hierarchy);
      const auto vs = find_violations(g, m, a.hierarchy);
      REQUIRE_FALSE(vs.empty());
      const AugmentResult r = augment(sw, vs[0]);
      REQUIRE(r.ok());
      CHECK(r.matching->size() == 2);
      CHECK(verify(g, *r.matching).ok());
      CHECK(r.switches == 0);
    }
    SUBCASE("C1 fixture grows by one") {
      Setup s(fixtures::external_reach());
      CHECK(max_rainbow_matching(s.graph).optimum == 5);
      Switcher sw(s.graph, s.base, s.analysis.flex, s.analysis.good_bad, s.analysis.hierarchy);
      const auto vs = find_violations(s.graph, s.base, s.analysis.hierarchy);
      REQUIRE(vs.size() == 1);
      const AugmentResult r = augment(sw, vs[0]);
      REQUIRE(r.ok());
      CHECK(r.matching->size() == 5);
      CHECK(verify(s.graph, *r.matching).ok());
      CHECK(r.matching->contains(EdgeId{8}));
      CHECK(r.switches == 2);
    }
    SUBCASE("C2 fixture grows by one") {
      Setup s(fixtures::reach_pair());
      Switcher sw(s.graph, s.base, s.analysis.flex, s.analysis.good_bad, s.analysis.hierarchy);
      const auto vs = find_violations(s.graph, s.base, s.analysis.hierarchy);
      REQUIRE(vs.size() == 1);
      const AugmentResult r = augment(sw, vs[0]);
      REQUIRE(r.ok());
      CHECK(r.matching->size() == 7);
      CHECK(verify(s.graph, *r.matching).ok());
      CHECK(r.matching->contains(EdgeId{12}));
      CHECK(r.switches == 3);
    }
    SUBCASE("flexible swap") {
      // m_0 = (0,1); the colour-0 edge (2,3) sits inside V0 and vertex 1
      // has a free-colour edge to 4.
      const ColouredMultigraph g(5, 2, {{0, 1, 0}, {2, 3, 0}, {1, 4, 1}});
      const RainbowMatching m(g, {EdgeId{0}});
      const Analysis a = analyse(g, m, InstanceParams::defaults(2, 0.5));
      Switcher sw(g, m, a.flex, a.good_bad, a.hierarchy);
      const auto vs = find_violations(g, m, a.hierarchy);
      REQUIRE(vs.size() == 1);
      CHECK(vs[0].kind == ViolationKind::flexible_swap);
      CHECK(vs[0].matched_edge == EdgeId{0});
      CHECK(vs[0].free_colour_edge == EdgeId{2});
      const AugmentResult r = augment(sw, vs[0]);
      REQUIRE(r.ok());
      CHECK(r.matching->size() == 2);
      CHECK(verify(g, *r.matching).ok());
    }
  }

  TEST_CASE("augment never succeeds from a maximum matching") {
    std::size_t attempts = 0;
    for (std::uint64_t seed = 0; seed < 600; ++seed) {
      const ColouredMultigraph g = fixtures::tiny_instance(seed, 14);
      const OracleResult best = max_rainbow_matching(g);
      const RainbowMatching m(g, best.witness);
      REQUIRE(verify(g, m).ok());
      for (double alpha : {0.05, 0.3}) {
        InstanceParams p;
        p.alpha = alpha;
        const Analysis a = analyse(g, m, p);
        Switcher sw(g, m, a.flex, a.good_bad, a.hierarchy);
        for (const Violation& v : find_violations(g, m, a.hierarchy)) {
          ++attempts;
          CHECK_FALSE(augment(sw, v).ok());
        }
      }
    }
    MESSAGE("augment attempts from maximum matchings: " << attempts);
  }

  TEST_CASE("every switch during solve meets its contract") {
    std::size_t calls = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const ColouredMultigraph g =
          seed % 2 ? fixtures::family_instance(4 + seed % 6, seed) : latin_to_graph(random_latin_square(3 + seed % 5, Seed{seed}));
      SolveOptions o;
      o.params = InstanceParams::defaults(g.num_colours(), 0.5);
      o.seed = Seed{seed};
      o.on_switch = [&](const SwitchRecord& rec, const RainbowMatching& base) {
        ++calls;
        const ContractCheck c = check_contract(g, base, rec.request, rec.outcome.result);
        CHECK(c.clauses_hold());
        CHECK(c.lambda == rec.outcome.lambda);
        CHECK(c.lambda <= rec.request.budget + switch_closeness_bound(rec.request.level));
        CHECK(rec.request.level >= 1);
        // Each recursion drops at least one level.
        CHECK(static_cast<double>(rec.depth + rec.request.level) < 1.0 / o.params.alpha);
        CHECK(verify(g, rec.outcome.result).ok());
      };
      solve(g, o);
    }
    MESSAGE("switches checked: " << calls);
    CHECK(calls > 0);
  }

  TEST_CASE("shuffled candidate order still yields valid switches") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const ColouredMultigraph g = fixtures::family_instance(6 + seed % 4, seed);
      SolveOptions o;
      o.params = InstanceParams::defaults(g.num_colours(), 0.5);
      o.seed = Seed{seed};
      o.limits.shuffle_seed = seed;
      o.on_switch = [&](const SwitchRecord& rec, const RainbowMatching& base) {
        CHECK(check_contract(g, base, rec.request, rec.outcome.result).clauses_hold());
      };
      const SolveReport r = solve(g, o);
      CHECK(verify(g, r.matching).ok());
    }
  }
}
