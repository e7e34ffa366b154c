#include "rainbow/instances.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "rng.hpp"

namespace rainbow {

void check_latin(const LatinSquare& square) {
  const std::size_t n = square.order;
  if (square.cells.size() != n * n)
    throw InvalidLatinSquare(0, 0, fmt::format("expected {} cells, found {}", n * n, square.cells.size()));
  std::vector<std::uint8_t> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto s = square.at(i, j);
      if (s >= n) throw InvalidLatinSquare(i, j, fmt::format("symbol {} at ({}, {}) outside [0, {})", s, i, j, n));
      if (seen[s]++) throw InvalidLatinSquare(i, j, fmt::format("symbol {} repeated in row {} at column {}", s, i, j));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = square.at(i, j);
      if (seen[s]++) throw InvalidLatinSquare(i, j, fmt::format("symbol {} repeated in column {} at row {}", s, j, i));
    }
  }
}

bool is_latin(const LatinSquare& square) {
  try {
    check_latin(square);
    return true;
  } catch (const InvalidLatinSquare&) {
    return false;
  }
}

LatinSquare cyclic_square(std::size_t n) {
  if (n == 0) throw std::invalid_argument("order must be at least 1");
  LatinSquare sq{n, std::vector<std::uint32_t>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sq.cells[i * n + j] = static_cast<std::uint32_t>((i + j) % n);
  return sq;
}

ColouredMultigraph latin_to_graph(const LatinSquare& square) {
  check_latin(square);
  const std::size_t n = square.order;
  std::vector<Edge> edges;
  edges.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(n + j), square.at(i, j)});
  return ColouredMultigraph(2 * n, n, std::move(edges));
}

namespace {

struct SquareFiller {
  std::size_t n;
  std::vector<std::uint32_t> cells;
  std::vector<std::uint8_t> row_used;  // n*n: row, symbol
  std::vector<std::uint8_t> col_used;  // n*n: col, symbol

  explicit SquareFiller(std::size_t order)
      : n(order), cells(order * order, 0), row_used(order * order, 0), col_used(order * order, 0) {}

  bool fits(std::size_t i, std::size_t j, std::uint32_t s) const { return !row_used[i * n + s] && !col_used[j * n + s]; }
  void place(std::size_t i, std::size_t j, std::uint32_t s) {
    cells[i * n + j] = s;
    row_used[i * n + s] = col_used[j * n + s] = 1;
  }
  void clear(std::size_t i, std::size_t j, std::uint32_t s) { row_used[i * n + s] = col_used[j * n + s] = 0; }
};

void enumerate_reduced(SquareFiller& f, std::size_t cell, std::vector<LatinSquare>& out) {
  const std::size_t n = f.n;
  if (cell == n * n) {
    out.push_back({n, f.cells});
    return;
  }
  const std::size_t i = cell / n, j = cell % n;
  if (i == 0 || j == 0) {
    const auto s = static_cast<std::uint32_t>(i == 0 ? j : i);
    if (!f.fits(i, j, s)) return;
    f.place(i, j, s);
    enumerate_reduced(f, cell + 1, out);
    f.clear(i, j, s);
    return;
  }
  for (std::uint32_t s = 0; s < n; ++s) {
    if (!f.fits(i, j, s)) continue;
    f.place(i, j, s);
    enumerate_reduced(f, cell + 1, out);
    f.clear(i, j, s);
  }
}

bool fill_random(SquareFiller& f, std::size_t cell, detail::Rng& rng) {
  const std::size_t n = f.n;
  if (cell == n * n) return true;
  const std::size_t i = cell / n, j = cell % n;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(order);
  for (std::uint32_t s : order) {
    if (!f.fits(i, j, s)) continue;
    f.place(i, j, s);
    if (fill_random(f, cell + 1, rng)) return true;
    f.clear(i, j, s);
  }
  return false;
}

}  // namespace

std::vector<LatinSquare> reduced_latin_squares(std::size_t n) {
  if (n == 0) throw std::invalid_argument("order must be at least 1");
  std::vector<LatinSquare> out;
  SquareFiller f(n);
  enumerate_reduced(f, 0, out);
  return out;
}

LatinSquare random_latin_square(std::size_t n, Seed seed) {
  if (n == 0) throw std::invalid_argument("order must be at least 1");
  detail::Rng rng(seed.value);
  SquareFiller f(n);
  fill_random(f, 0, rng);
  LatinSquare sq{n, std::move(f.cells)};
  check_latin(sq);
  return sq;
}

LatinSquare load_latin(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<long long> values;
  std::optional<std::size_t> order;
  while (std::getline(in, line)) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    std::istringstream ss(line);
    long long x = 0;
    std::vector<long long> row;
    while (ss >> x) row.push_back(x);
    if (!ss.eof()) throw ParseError(line_no, "expected integers");
    if (row.empty()) continue;
    if (!order) {
      if (row.size() != 1 || row[0] <= 0) throw ParseError(line_no, "expected the order n >= 1");
      order = static_cast<std::size_t>(row[0]);
      continue;
    }
    if (row.size() != *order) throw ParseError(line_no, fmt::format("expected {} symbols", *order));
    for (long long s : row) {
      if (s < 0 || s >= static_cast<long long>(*order)) throw ParseError(line_no, fmt::format("symbol {} out of range", s));
      values.push_back(s);
    }
  }
  if (!order) throw ParseError(line_no + 1, "missing order line");
  if (values.size() != *order * *order) throw ParseError(line_no + 1, fmt::format("expected {} rows", *order));
  LatinSquare sq{*order, std::vector<std::uint32_t>(values.begin(), values.end())};
  check_latin(sq);
  return sq;
}

LatinSquare load_latin_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  return load_latin(in);
}

void save_latin(const LatinSquare& square, std::ostream& out) {
  out << square.order << '\n';
  for (std::size_t i = 0; i < square.order; ++i) {
    for (std::size_t j = 0; j < square.order; ++j) out << (j ? " " : "") << square.at(i, j);
    out << '\n';
  }
}

ColouredMultigraph generate_random(const RandomInstanceSpec& spec, Seed seed) {
  const std::size_t V = spec.num_vertices;
  if (spec.multiplicity_cap < 1) throw std::invalid_argument("multiplicity cap must be at least 1");
  if (spec.colour_count > V / 2)
    throw std::invalid_argument(
        fmt::format("colour_count {} exceeds floor({}/2): a colour class is a matching", spec.colour_count, V));
  const std::size_t pair_slots = V < 2 ? 0 : spec.multiplicity_cap * V * (V - 1) / 2;
  if (spec.num_colours * spec.colour_count > pair_slots)
    throw std::invalid_argument("multiplicity cap leaves too few vertex pairs for the requested edges");

  constexpr int kAttemptsPerColour = 256;
  detail::Rng rng(seed.value);
  std::unordered_map<std::uint64_t, std::size_t> used_pairs;
  auto key = [](Vertex a, Vertex b) { return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b); };

  std::vector<Edge> edges;
  edges.reserve(spec.num_colours * spec.colour_count);
  std::vector<Vertex> order(V);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::vector<std::uint8_t> taken(V);

  for (Colour c = 0; c < spec.num_colours; ++c) {
    bool placed = false;
    for (int attempt = 0; attempt < kAttemptsPerColour && !placed; ++attempt) {
      rng.shuffle(order);
      std::fill(taken.begin(), taken.end(), 0);
      std::vector<Edge> draw;
      for (std::size_t a = 0; a < V && draw.size() < spec.colour_count; ++a) {
        const Vertex x = order[a];
        if (taken[x]) continue;
        for (std::size_t b = a + 1; b < V; ++b) {
          const Vertex y = order[b];
          if (taken[y]) continue;
          auto it = used_pairs.find(key(x, y));
          if (it != used_pairs.end() && it->second >= spec.multiplicity_cap) continue;
          taken[x] = taken[y] = 1;
          draw.push_back({std::min(x, y), std::max(x, y), c});
          break;
        }
      }
      if (draw.size() == spec.colour_count) {
        for (const Edge& e : draw) ++used_pairs[key(e.u, e.v)];
        edges.insert(edges.end(), draw.begin(), draw.end());
        placed = true;
      }
    }
    if (!placed) throw std::runtime_error(fmt::format("could not place colour {} under the multiplicity cap", c));
  }
  return ColouredMultigraph(V, spec.num_colours, std::move(edges));
}

}  // namespace rainbow
