#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rainbow/instances.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/multigraph.hpp"

namespace rainbow::fixtures {

struct Fixture {
  ColouredMultigraph graph;
  std::vector<EdgeId> matching;
};

/// M = {v t(v), u t(u)} = {(0,1) colour 0, (2,3) colour 1}; a good F-edge
/// t(v)w = (1,4) of colour 1 and a free-colour edge t(u)z = (3,5) of colour 2.
/// With default thresholds the only level is E1 = {(0,1)}, head 0, tail 1.
Fixture single_switch();

/// Three matching edges reachable at level 1 plus one more flexible edge;
/// (0,9) of a reach colour leaves head 0 for the free vertex 9.
Fixture external_reach();

/// Three level-1 heads 0, 6, 14, each with its own flexible pivot, and one
/// edge (0,6) whose colour is in R.
Fixture reach_pair();

/// Seeded random instance from the n-colour family used across tests:
/// ceil(1.5 n) edges per colour on 2 * that many vertices, simple.
ColouredMultigraph family_instance(std::size_t n, std::uint64_t seed);

/// Seeded random instance with at most `max_edges` edges.
ColouredMultigraph tiny_instance(std::uint64_t seed, std::size_t max_edges);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& tag);

}  // namespace rainbow::fixtures
