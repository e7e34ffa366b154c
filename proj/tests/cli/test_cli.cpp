#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "rainbow/cli.hpp"
#include "rainbow/serialize.hpp"

using namespace rainbow;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run rainbow_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> words{"rainbow"};
  words.insert(words.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& w : words) argv.push_back(w.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Drops the trailing ms column.
std::string without_ms(const std::string& csv) {
  std::string out;
  for (const std::string& line : lines(csv)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    ::setenv(name, value, 1);
  }
  ~ScopedEnv() {
    if (old_.empty()) ::unsetenv(name_);
    else ::setenv(name_, old_.c_str(), 1);
  }

 private:
  const char* name_;
  std::string old_;
};

}  // namespace

TEST_CASE("generate latin, solve, verify") {
  const auto dir = fixtures::temp_dir("cli");
  const std::string graph = (dir / "z4.txt").string();
  const std::string matching = (dir / "m.json").string();

  REQUIRE(rainbow_cli({"generate", "latin", "--cyclic", "4", "-o", graph}).code == cli::kOk);
  CHECK(slurp(graph).rfind("8 4\n0 4 0\n", 0) == 0);

  SUBCASE("deficit one is reached") {
    const Run r = rainbow_cli({"solve", "-i", graph, "--target-deficit", "1", "--matching-out", matching});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("status target_reached\n") != std::string::npos);
    CHECK(r.out.find("size 3\n") != std::string::npos);
    CHECK(r.out.find("wall_ms") == std::string::npos);
    const Run v = rainbow_cli({"verify", "-i", graph, "-m", matching});
    CHECK(v.code == cli::kOk);
    CHECK(v.out == "ok: rainbow matching of size 3\n");
  }

  SUBCASE("a full matching does not exist, so solve stalls") {
    const Run r = rainbow_cli({"solve", "-i", graph});
    CHECK(r.code == cli::kStalled);
    CHECK(r.out.find("status stalled\n") != std::string::npos);
  }

  SUBCASE("JSON report is byte-identical across runs and has no timing") {
    const Run a = rainbow_cli({"solve", "-i", graph, "--json", "--seed", "5"});
    const Run b = rainbow_cli({"solve", "-i", graph, "--json", "--seed", "5"});
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    CHECK(j["size"] == 3);
    CHECK_FALSE(j.contains("wall_ms"));
    CHECK(Json::parse(rainbow_cli({"solve", "-i", graph, "--json", "--timing"}).out).contains("wall_ms"));
  }

  SUBCASE("tampered matchings are rejected with the violation named") {
    // Row 0 of Z4 is edges 0..3 at vertex 0; edge 7 = (1,7) repeats colour 0.
    auto rec = [](int id, int u, int v, int c) {
      return Json{{"u", u}, {"v", v}, {"colour", c}, {"edge_id", id}};
    };
    write(matching, Json{{"size", 2}, {"edges", {rec(0, 0, 4, 0), rec(1, 0, 5, 1)}}}.dump());
    Run v = rainbow_cli({"verify", "-i", graph, "-m", matching});
    CHECK(v.code == cli::kStalled);
    CHECK(v.out.find("disjointness_violated") != std::string::npos);

    write(matching, Json{{"size", 2}, {"edges", {rec(0, 0, 4, 0), rec(7, 1, 7, 0)}}}.dump());
    v = rainbow_cli({"verify", "-i", graph, "-m", matching});
    CHECK(v.code == cli::kStalled);
    CHECK(v.out.find("rainbow_violated") != std::string::npos);

    write(matching, Json{{"size", 1}, {"edges", {rec(0, 0, 4, 3)}}}.dump());
    v = rainbow_cli({"verify", "-i", graph, "-m", matching, "--json"});
    CHECK(v.code == cli::kStalled);
    const Json j = Json::parse(v.out);
    CHECK(j["valid"] == false);
    CHECK(j["issues"][0]["kind"] == "record_mismatch");

    write(matching, "{\"edges\": [");
    CHECK(rainbow_cli({"verify", "-i", graph, "-m", matching}).code == cli::kUsage);
  }

  SUBCASE("stats reports the hierarchy") {
    const Run r = rainbow_cli({"stats", "-i", graph, "--solve"});
    REQUIRE(r.code == cli::kOk);
    const Json j = Json::parse(r.out);
    for (const char* key : {"matching_size", "levels", "m", "F_size", "R_size", "good_edges", "bad_edges", "counting"})
      CHECK_MESSAGE(j.contains(key), key);
    CHECK(j["matching_size"] == 3);
  }
}

TEST_CASE("generate random is seeded") {
  const Run a = rainbow_cli({"generate", "random", "--colours", "6", "--seed", "3"});
  const Run b = rainbow_cli({"generate", "random", "--colours", "6", "--seed", "3"});
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("18 6\n", 0) == 0);
  CHECK(a.out != rainbow_cli({"generate", "random", "--colours", "6", "--seed", "4"}).out);
  CHECK(rainbow_cli({"generate", "random", "--colours", "6", "--colour-count", "5", "--vertices", "8"}).code ==
        cli::kUsage);
}

TEST_CASE("oracle") {
  const auto dir = fixtures::temp_dir("cli-oracle");
  const std::string square = (dir / "z4.sq").string();
  const std::string graph = (dir / "z4.txt").string();
  REQUIRE(rainbow_cli({"generate", "latin", "--cyclic", "4", "--square-output", square, "-o", graph}).code ==
          cli::kOk);

  const Run g = rainbow_cli({"oracle", "-i", graph});
  CHECK(g.code == cli::kOk);
  CHECK(g.out.rfind("optimum 3 (optimal)\n", 0) == 0);

  const Run l = rainbow_cli({"oracle", "-i", square, "--latin", "--json"});
  REQUIRE(l.code == cli::kOk);
  const Json j = Json::parse(l.out);
  CHECK(j["order"] == 4);
  CHECK(j["transversal"]["optimum"] == 3);
  CHECK(j["graph"]["optimum"] == 3);

  const Run capped = rainbow_cli({"oracle", "-i", graph, "--max-nodes", "1"});
  CHECK(capped.code == cli::kIterationCap);
  CHECK(capped.err.find("lower bound") != std::string::npos);
}

TEST_CASE("bench") {
  SUBCASE("one row per seed, deterministic apart from timing") {
    const Run a = rainbow_cli({"bench", "--seeds", "0..99", "--colours", "8"});
    REQUIRE(a.code == cli::kOk);
    const auto rows = lines(a.out);
    REQUIRE(rows.size() == 101);
    CHECK(rows[0] == "seed,n,found,optimum,iterations,switches,ms");
    CHECK(rows[1].rfind("0,8,", 0) == 0);
    CHECK(rows[100].rfind("99,8,", 0) == 0);
    const Run b = rainbow_cli({"bench", "--seeds", "0..99", "--colours", "8", "-j", "2"});
    CHECK(without_ms(a.out) == without_ms(b.out));
  }
  SUBCASE("small instances carry the oracle optimum and never beat it") {
    const Run r = rainbow_cli({"bench", "--seeds", "0..9", "--colours", "3"});
    REQUIRE(r.code == cli::kOk);
    const auto rows = lines(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      std::istringstream in(rows[i]);
      std::vector<std::string> cells;
      for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
      REQUIRE(cells.size() == 7);
      REQUIRE_FALSE(cells[3].empty());
      CHECK(std::stoul(cells[2]) <= std::stoul(cells[3]));
    }
  }
  SUBCASE("bad ranges are usage errors") {
    CHECK(rainbow_cli({"bench", "--seeds", "9..2", "--colours", "4"}).code == cli::kUsage);
    CHECK(rainbow_cli({"bench", "--seeds", "x", "--colours", "4"}).code == cli::kUsage);
  }
}

TEST_CASE("usage errors exit 1") {
  CHECK(rainbow_cli({}).code == cli::kUsage);
  CHECK(rainbow_cli({"solve"}).code == cli::kUsage);
  CHECK(rainbow_cli({"solve", "-i", "/nonexistent/graph.txt"}).code == cli::kUsage);
  CHECK(rainbow_cli({"frobnicate"}).code == cli::kUsage);
  CHECK(rainbow_cli({"generate", "latin"}).code == cli::kUsage);
  CHECK(rainbow_cli({"generate", "latin", "--cyclic", "3", "--random", "3"}).code == cli::kUsage);
  CHECK(rainbow_cli({"--help"}).code == cli::kOk);

  const auto dir = fixtures::temp_dir("cli-bad");
  const std::string graph = (dir / "bad.txt").string();
  write(graph, "3 1 2\n0 1 0\n1 2 0\n");
  const Run r = rainbow_cli({"solve", "-i", graph});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.rfind("error: ", 0) == 0);
}

TEST_CASE("RAINBOW_LOG sets the level") {
  const auto dir = fixtures::temp_dir("cli-log");
  const std::string graph = (dir / "z3.txt").string();
  REQUIRE(rainbow_cli({"generate", "latin", "--cyclic", "3", "-o", graph}).code == cli::kOk);
  {
    const Run r = rainbow_cli({"solve", "-i", graph});
    CHECK(r.err.find("[info]") != std::string::npos);
    CHECK(r.err.find("[debug]") == std::string::npos);
  }
  {
    ScopedEnv env("RAINBOW_LOG", "debug");
    CHECK(rainbow_cli({"solve", "-i", graph}).err.find("[debug]") != std::string::npos);
  }
  {
    ScopedEnv env("RAINBOW_LOG", "error");
    CHECK(rainbow_cli({"solve", "-i", graph}).err.empty());
  }
}
