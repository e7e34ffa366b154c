#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rainbow/multigraph.hpp"

namespace rainbow {

struct Seed {
  std::uint64_t value = 0;
};

/// n x n array over symbols 0..n-1, row-major.
struct LatinSquare {
  std::size_t order = 0;
  std::vector<std::uint32_t> cells;

  std::uint32_t at(std::size_t row, std::size_t col) const { return cells[row * order + col]; }
  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;
};

class InvalidLatinSquare : public std::invalid_argument {
 public:
  InvalidLatinSquare(std::size_t row, std::size_t col, const std::string& what)
      : std::invalid_argument(what), row_(row), col_(col) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// Throws InvalidLatinSquare naming the first offending cell.
void check_latin(const LatinSquare& square);
bool is_latin(const LatinSquare& square);

/// Addition table of Z_n: cells[i][j] = (i + j) mod n.
LatinSquare cyclic_square(std::size_t n);

/// Bipartite K_{n,n}: rows are vertices 0..n-1, columns n..2n-1, and cell
/// (i, j) becomes the edge (i, n+j) coloured by its symbol. EdgeId of cell
/// (i, j) is i*n + j.
ColouredMultigraph latin_to_graph(const LatinSquare& square);

/// Every reduced Latin square of order n (first row and column in natural
/// order), in lexicographic order of cells. Practical for n <= 6.
std::vector<LatinSquare> reduced_latin_squares(std::size_t n);

/// A Latin square filled by seeded randomised backtracking. Not uniform.
LatinSquare random_latin_square(std::size_t n, Seed seed);

LatinSquare load_latin(std::istream& in);
LatinSquare load_latin_file(const std::string& path);
void save_latin(const LatinSquare& square, std::ostream& out);

struct RandomInstanceSpec {
  std::size_t num_colours = 0;
  std::size_t colour_count = 0;
  std::size_t multiplicity_cap = 1;
  std::size_t num_vertices = 0;
};

/// Each colour class is drawn as a random partial matching of exactly
/// colour_count edges on num_vertices vertices; pairs already at the
/// multiplicity cap are rejected and the draw retried. Approximately uniform.
/// Throws std::invalid_argument on infeasible parameters before drawing and
/// std::runtime_error if the retry budget runs out.
ColouredMultigraph generate_random(const RandomInstanceSpec& spec, Seed seed);

}  // namespace rainbow
