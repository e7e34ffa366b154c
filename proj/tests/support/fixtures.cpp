#include "fixtures.hpp"

#include <cmath>
#include <random>

#include <unistd.h>

namespace rainbow::fixtures {

Fixture single_switch() {
  // v=0 t(v)=1 u=2 t(u)=3 w=4 z=5; colours c1=0 c2=1, colour 2 free.
  std::vector<Edge> edges{{0, 1, 0}, {2, 3, 1}, {1, 4, 1}, {3, 5, 2}};
  return {ColouredMultigraph(6, 3, std::move(edges)), {EdgeId{0}, EdgeId{1}}};
}

Fixture external_reach() {
  std::vector<Edge> edges{
      {0, 1, 0},    // 0: A, level 1 via (1,4)
      {2, 3, 1},    // 1: B, flexible via (3,5)
      {6, 7, 2},    // 2: C, level 1 via (7,13)
      {10, 11, 4},  // 3: D, flexible via (11,12)
      {1, 4, 1},    // 4: good F-edge at t(0)
      {3, 5, 3},    // 5: free colour 3
      {7, 13, 4},   // 6: good F-edge at t(6)
      {11, 12, 5},  // 7: free colour 5
      {0, 9, 2},    // 8: the C1 edge
  };
  return {ColouredMultigraph(14, 6, std::move(edges)), {EdgeId{0}, EdgeId{1}, EdgeId{2}, EdgeId{3}}};
}

Fixture reach_pair() {
  std::vector<Edge> edges{
      {0, 1, 0},    // 0: A, level 1 via (1,4)
      {2, 3, 1},    // 1: B, flexible via (3,5)
      {6, 7, 2},    // 2: C, level 1 via (7,13)
      {10, 11, 4},  // 3: D, flexible via (11,12)
      {14, 15, 6},  // 4: E, level 1 via (15,16)
      {18, 19, 7},  // 5: G, flexible via (19,20)
      {1, 4, 1},    // 6
      {3, 5, 3},    // 7
      {7, 13, 4},   // 8
      {11, 12, 5},  // 9
      {15, 16, 7},  // 10
      {19, 20, 8},  // 11
      {0, 6, 6},    // 12: the C2 edge
  };
  return {ColouredMultigraph(21, 9, std::move(edges)),
          {EdgeId{0}, EdgeId{1}, EdgeId{2}, EdgeId{3}, EdgeId{4}, EdgeId{5}}};
}

ColouredMultigraph family_instance(std::size_t n, std::uint64_t seed) {
  RandomInstanceSpec spec;
  spec.num_colours = n;
  spec.colour_count = static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(n)));
  spec.multiplicity_cap = 1;
  spec.num_vertices = 2 * spec.colour_count;
  return generate_random(spec, Seed{seed});
}

ColouredMultigraph tiny_instance(std::uint64_t seed, std::size_t max_edges) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 1);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };
  while (true) {
    RandomInstanceSpec spec;
    spec.num_vertices = pick(2, 8);
    spec.num_colours = pick(1, 5);
    spec.colour_count = pick(1, spec.num_vertices / 2);
    spec.multiplicity_cap = pick(1, 2);
    if (spec.num_colours * spec.colour_count > max_edges) continue;
    try {
      return generate_random(spec, Seed{rng()});
    } catch (const std::exception&) {
      continue;
    }
  }
}

std::filesystem::path temp_dir(const std::string& tag) {
  static std::uint64_t counter = 0;
  auto dir = std::filesystem::temp_directory_path() /
             ("rainbow-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace rainbow::fixtures
