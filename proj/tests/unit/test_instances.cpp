#include <doctest.h>

#include <set>
#include <sstream>

#include "brute.hpp"
#include "rainbow/instances.hpp"
#include "rainbow/oracle.hpp"

using namespace rainbow;

TEST_SUITE("instances") {
  TEST_CASE("cyclic squares") {
    CHECK(cyclic_square(1).cells == std::vector<std::uint32_t>{0});
    CHECK(cyclic_square(2).cells == std::vector<std::uint32_t>{0, 1, 1, 0});
    const LatinSquare s4 = cyclic_square(4);
    CHECK(std::vector<std::uint32_t>(s4.cells.begin() + 8, s4.cells.begin() + 12) ==
          std::vector<std::uint32_t>{2, 3, 0, 1});
    for (std::size_t n = 1; n <= 9; ++n) CHECK(is_latin(cyclic_square(n)));
  }

  TEST_CASE("latin_to_graph") {
    SUBCASE("order 1") {
      const ColouredMultigraph g = latin_to_graph(cyclic_square(1));
      REQUIRE(g.num_edges() == 1);
      CHECK(g.edge(EdgeId{0}).u == 0);
      CHECK(g.edge(EdgeId{0}).v == 1);
      CHECK(g.edge(EdgeId{0}).colour == 0);
    }
    SUBCASE("Z2 gives K22 with best rainbow matching 1") {
      const ColouredMultigraph g = latin_to_graph(cyclic_square(2));
      CHECK(g.num_vertices() == 4);
      CHECK(g.num_edges() == 4);
      CHECK(brute::max_rainbow_by_subsets(g) == 1);
    }
    SUBCASE("Z3 has a full rainbow matching on the diagonal") {
      const ColouredMultigraph g = latin_to_graph(cyclic_square(3));
      CHECK(brute::max_rainbow_by_subsets(g) == 3);
      const std::vector<EdgeId> diagonal{EdgeId{0}, EdgeId{4}, EdgeId{8}};
      CHECK(brute::is_rainbow_matching(g, diagonal));
      CHECK(g.edge(EdgeId{4}).colour == 2);
      CHECK(g.edge(EdgeId{8}).colour == 1);
    }
    SUBCASE("every symbol class of a cyclic square has n edges") {
      for (std::size_t n = 1; n <= 7; ++n) {
        const ColouredMultigraph g = latin_to_graph(cyclic_square(n));
        CHECK(validate(g).ok());
        for (Colour c = 0; c < n; ++c) CHECK(g.colour_class(c).size() == n);
      }
    }
  }

  TEST_CASE("reduced squares catalogue") {
    const std::vector<std::size_t> expected{1, 1, 1, 4, 56};
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto squares = reduced_latin_squares(n);
      CHECK(squares.size() == expected[n - 1]);
      std::set<std::vector<std::uint32_t>> distinct;
      for (const LatinSquare& s : squares) {
        CHECK(is_latin(s));
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(s.at(0, i) == i);
          CHECK(s.at(i, 0) == i);
        }
        distinct.insert(s.cells);
      }
      CHECK(distinct.size() == squares.size());
    }
  }

  TEST_CASE("check_latin names the offending cell") {
    LatinSquare bad{3, {0, 1, 2, 1, 1, 0, 2, 0, 1}};
    try {
      check_latin(bad);
      FAIL("expected InvalidLatinSquare");
    } catch (const InvalidLatinSquare& e) {
      CHECK(e.row() == 1);
      CHECK(e.col() == 1);
    }
    CHECK_FALSE(is_latin(LatinSquare{2, {0, 2, 1, 0}}));
    CHECK_FALSE(is_latin(LatinSquare{2, {0, 1, 1}}));
  }

  TEST_CASE("random squares are Latin and seeded") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const LatinSquare s = random_latin_square(6, Seed{seed});
      CHECK(is_latin(s));
      CHECK(s == random_latin_square(6, Seed{seed}));
    }
    CHECK(random_latin_square(6, Seed{1}) != random_latin_square(6, Seed{2}));
  }

  TEST_CASE("latin text format round-trips") {
    const LatinSquare s = random_latin_square(5, Seed{9});
    std::ostringstream out;
    save_latin(s, out);
    std::istringstream in(out.str());
    CHECK(load_latin(in) == s);
    std::istringstream broken("2\n0 1\n0 1\n");
    CHECK_THROWS_AS(load_latin(broken), InvalidLatinSquare);
    std::istringstream short_rows("3\n0 1 2\n1 2 0\n");
    CHECK_THROWS(load_latin(short_rows));
  }

  TEST_CASE("generate_random") {
    SUBCASE("small seeded example passes validate and hypothesis_check") {
      const ColouredMultigraph g = generate_random({2, 3, 1, 8}, Seed{7});
      CHECK(validate(g).ok());
      InstanceParams p;
      p.min_colour_count = 3;
      p.multiplicity_cap = 1;
      CHECK(hypothesis_check(g, p).satisfied());
    }
    SUBCASE("a colour class larger than half the vertices is infeasible") {
      CHECK_THROWS_AS(generate_random({2, 5, 1, 8}, Seed{0}), std::invalid_argument);
      CHECK_THROWS_AS(generate_random({2, 1, 0, 8}, Seed{0}), std::invalid_argument);
      // 4 colours x 2 edges cannot fit simply on 4 vertices (6 pairs).
      CHECK_THROWS_AS(generate_random({4, 2, 1, 4}, Seed{0}), std::invalid_argument);
      CHECK_NOTHROW(generate_random({3, 2, 1, 4}, Seed{0}));
    }
    SUBCASE("same seed, identical output") {
      auto text = [](std::uint64_t seed) {
        std::ostringstream out;
        save_graph(generate_random({6, 9, 1, 18}, Seed{seed}), out);
        return out.str();
      };
      CHECK(text(11) == text(11));
      CHECK(text(11) != text(12));
    }
    SUBCASE("class sizes and multiplicities hold across seeds") {
      for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const RandomInstanceSpec spec{1 + seed % 8, 1 + seed % 5, 1 + seed % 3, 12};
        const ColouredMultigraph g = generate_random(spec, Seed{seed});
        REQUIRE(validate(g).ok());
        for (Colour c = 0; c < spec.num_colours; ++c) CHECK(g.colour_class(c).size() == spec.colour_count);
        CHECK(g.max_multiplicity() <= spec.multiplicity_cap);
      }
    }
  }

  TEST_CASE("transversals match rainbow matchings of the graph on the catalogue") {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (const LatinSquare& s : reduced_latin_squares(n)) {
        const ColouredMultigraph g = latin_to_graph(s);
        CHECK(max_partial_transversal(s).optimum == brute::max_rainbow_by_subsets(g));
      }
    }
  }
}
