#include "rainbow/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "rainbow/instances.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/multigraph.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/serialize.hpp"
#include "rainbow/solver.hpp"

namespace rainbow::cli {

namespace {

using Logger = std::shared_ptr<spdlog::logger>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Logger make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  auto log = std::make_shared<spdlog::logger>("rainbow", sink);
  log->set_pattern("[%l] %v");
  spdlog::level::level_enum level = spdlog::level::info;
  if (const char* env = std::getenv("RAINBOW_LOG")) {
    const std::string v = env;
    if (v == "error") level = spdlog::level::err;
    else if (v == "info") level = spdlog::level::info;
    else if (v == "debug") level = spdlog::level::debug;
    else if (v == "trace") level = spdlog::level::trace;
    else log->warn("ignoring RAINBOW_LOG={}; expected error, info, debug or trace", v);
  }
  log->set_level(level);
  return log;
}

// Writes to the named file, or to `out` when the path is empty or "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  fn(file);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(fmt::format("{}: {}", path, e.what()));
  }
}

struct ParamFlags {
  double epsilon = 0.5;
  std::optional<double> alpha;

  void attach(CLI::App* app) {
    app->add_option("--epsilon", epsilon, "Slack in the colour class size bound")->capture_default_str();
    app->add_option("--alpha", alpha, "Threshold fraction (default epsilon/12)");
  }
  InstanceParams resolve(const ColouredMultigraph& graph, const Logger& log) const {
    InstanceParams p = InstanceParams::defaults(graph.num_colours(), epsilon, alpha);
    log->debug("epsilon {} alpha {} min colour count {} cap {}", p.epsilon, p.alpha, p.min_colour_count,
               p.multiplicity_cap);
    if (p.alpha_flagged()) log->warn("alpha {} exceeds epsilon/12 = {}", p.alpha, epsilon / 12.0);
    const HypothesisReport h = hypothesis_check(graph, p);
    if (!h.colour_counts_ok)
      log->info("{} colour classes are smaller than {}", h.deficits.size(), p.min_colour_count);
    if (!h.multiplicity_ok)
      log->info("edge multiplicity {} exceeds cap {}", h.max_multiplicity, p.multiplicity_cap);
    return p;
  }
};

// ---- generate --------------------------------------------------------------

struct GenerateRandomArgs {
  std::size_t colours = 0;
  std::optional<std::size_t> colour_count;
  std::size_t cap = 1;
  std::optional<std::size_t> vertices;
  std::uint64_t seed = 0;
  std::string output;
};

RandomInstanceSpec random_spec(std::size_t colours, std::optional<std::size_t> colour_count, std::size_t cap,
                               std::optional<std::size_t> vertices) {
  RandomInstanceSpec spec;
  spec.num_colours = colours;
  spec.colour_count = colour_count.value_or(static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(colours))));
  spec.multiplicity_cap = cap;
  spec.num_vertices = vertices.value_or(2 * spec.colour_count);
  return spec;
}

int generate_random_cmd(const GenerateRandomArgs& a, std::ostream& out, const Logger& log) {
  const RandomInstanceSpec spec = random_spec(a.colours, a.colour_count, a.cap, a.vertices);
  ColouredMultigraph graph;
  try {
    graph = generate_random(spec, Seed{a.seed});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  log->info("generated {} vertices, {} colours, {} edges", graph.num_vertices(), graph.num_colours(),
            graph.num_edges());
  emit(a.output, out, [&](std::ostream& o) { save_graph(graph, o); });
  return kOk;
}

struct GenerateLatinArgs {
  std::optional<std::size_t> cyclic;
  std::string square;
  std::optional<std::size_t> random;
  std::uint64_t seed = 0;
  std::string output;
  std::string square_output;
};

int generate_latin_cmd(const GenerateLatinArgs& a, std::ostream& out, const Logger& log) {
  const int sources = int(a.cyclic.has_value()) + int(!a.square.empty()) + int(a.random.has_value());
  if (sources != 1) throw UsageError("give exactly one of --cyclic, --square, --random");
  LatinSquare square;
  if (a.cyclic) square = cyclic_square(*a.cyclic);
  else if (a.random) square = random_latin_square(*a.random, Seed{a.seed});
  else square = load_latin_file(a.square);
  log->info("latin square of order {}", square.order);
  if (!a.square_output.empty()) emit(a.square_output, out, [&](std::ostream& o) { save_latin(square, o); });
  emit(a.output, out, [&](std::ostream& o) { save_graph(latin_to_graph(square), o); });
  return kOk;
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string input;
  ParamFlags params;
  std::size_t target_deficit = 0;
  std::uint64_t seed = 0;
  std::size_t max_budget = SwitchLimits{}.max_budget;
  std::size_t max_iterations = SolveOptions{}.max_iterations;
  bool json = false;
  bool timing = false;
  std::string matching_out;
};

int exit_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::target_reached: return kOk;
    case SolveStatus::stalled: return kStalled;
    case SolveStatus::iteration_cap: return kIterationCap;
  }
  return kStalled;
}

int solve_cmd(const SolveArgs& a, std::ostream& out, const Logger& log) {
  const ColouredMultigraph graph = load_graph_file(a.input);
  SolveOptions opts;
  opts.params = a.params.resolve(graph, log);
  opts.target_deficit = a.target_deficit;
  opts.seed = Seed{a.seed};
  opts.limits.max_budget = a.max_budget;
  opts.max_iterations = a.max_iterations;
  if (log->should_log(spdlog::level::trace)) {
    opts.on_switch = [&](const SwitchRecord& rec, const RainbowMatching&) {
      log->trace("switch level {} colour {} depth {} lambda {}", rec.outcome.used_level, rec.request.target_colour,
                 rec.depth, rec.outcome.lambda);
    };
  }
  const SolveReport report = solve(graph, opts);
  for (const IterationRecord& it : report.iterations) {
    log->debug("{} -> {}: m={} |F|={} |R|={} violations={} switches={}", it.size_before, it.size_after, it.levels,
               it.flexible_colours, it.reach_colours, it.violations, it.switches);
  }
  log->info("{}: size {} of target {} after {} iterations", to_string(report.status), report.matching.size(),
            report.target_size, report.iterations.size());
  if (!a.matching_out.empty())
    emit(a.matching_out, out, [&](std::ostream& o) { o << matching_to_json(graph, report.matching).dump(2) << '\n'; });
  if (a.json) {
    out << solve_report_to_json(graph, report, a.timing).dump(2) << '\n';
  } else {
    out << fmt::format("status {}\nsize {}\ntarget {}\ngreedy {}\niterations {}\nswitches {}\n",
                       to_string(report.status), report.matching.size(), report.target_size, report.greedy_size,
                       report.iterations.size(), report.total_switches);
    if (a.timing) out << fmt::format("wall_ms {:.3f}\n", report.wall_ms);
  }
  return exit_for(report.status);
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string input;
  std::string matching;
  bool json = false;
};

int verify_cmd(const VerifyArgs& a, std::ostream& out) {
  const ColouredMultigraph graph = load_graph_file(a.input);
  const Json doc = read_json_file(a.matching);
  ParsedMatching parsed;
  try {
    parsed = matching_from_json(graph, doc);
  } catch (const Json::exception& e) {
    throw UsageError(fmt::format("{}: {}", a.matching, e.what()));
  }
  ValidationReport report = std::move(parsed.record_issues);
  bool unknown = false;
  for (const Issue& i : report.issues) unknown = unknown || i.kind == IssueKind::unknown_edge;
  if (!unknown) {
    ValidationReport more = verify(graph, parsed.matching);
    for (Issue& i : more.issues) report.issues.push_back(std::move(i));
  }
  if (a.json) {
    Json j = to_json(report);
    j["size"] = parsed.matching.size();
    out << j.dump(2) << '\n';
  } else if (report.ok()) {
    out << fmt::format("ok: rainbow matching of size {}\n", parsed.matching.size());
  } else {
    for (const Issue& i : report.issues) out << fmt::format("{}: {}\n", to_string(i.kind), i.message);
  }
  return report.ok() ? kOk : kStalled;
}

// ---- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string input;
  bool latin = false;
  std::uint64_t max_nodes = OracleLimits{}.max_nodes;
  double time_limit = 60.0;
  bool json = false;
};

int oracle_cmd(const OracleArgs& a, std::ostream& out, const Logger& log) {
  OracleLimits limits;
  limits.max_nodes = a.max_nodes;
  limits.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(a.time_limit * 1000.0)));
  bool exact = true;
  Json doc;
  std::string text;
  if (a.latin) {
    const LatinSquare square = load_latin_file(a.input);
    const TransversalResult t = max_partial_transversal(square, limits);
    const ColouredMultigraph graph = latin_to_graph(square);
    const OracleResult g = max_rainbow_matching(graph, limits);
    exact = t.exact() && g.exact();
    doc = Json{{"order", square.order}, {"transversal", transversal_to_json(t)}, {"graph", oracle_to_json(graph, g)}};
    text = fmt::format("order {}\ntransversal {} ({})\ngraph {} ({})\n", square.order, t.optimum,
                       to_string(t.status), g.optimum, to_string(g.status));
    if (t.exact() && g.exact() && t.optimum != g.optimum)
      log->error("transversal search and graph oracle disagree: {} vs {}", t.optimum, g.optimum);
  } else {
    const ColouredMultigraph graph = load_graph_file(a.input);
    const OracleResult r = max_rainbow_matching(graph, limits);
    exact = r.exact();
    doc = oracle_to_json(graph, r);
    text = fmt::format("optimum {} ({})\nnodes {}\n", r.optimum, to_string(r.status), r.nodes_explored);
  }
  if (!exact) log->warn("search capped; optimum is a lower bound");
  out << (a.json ? doc.dump(2) + "\n" : text);
  return exact ? kOk : kIterationCap;
}

// ---- stats -----------------------------------------------------------------

struct StatsArgs {
  std::string input;
  ParamFlags params;
  std::uint64_t seed = 0;
  std::string matching;
  bool solve = false;
};

int stats_cmd(const StatsArgs& a, std::ostream& out, const Logger& log) {
  const ColouredMultigraph graph = load_graph_file(a.input);
  const InstanceParams params = a.params.resolve(graph, log);
  RainbowMatching matching;
  if (!a.matching.empty()) {
    ParsedMatching parsed = matching_from_json(graph, read_json_file(a.matching));
    ValidationReport report = verify(graph, parsed.matching);
    if (!parsed.record_issues.ok() || !report.ok())
      throw UsageError(fmt::format("'{}' is not a rainbow matching of this graph", a.matching));
    matching = std::move(parsed.matching);
  } else if (a.solve) {
    SolveOptions opts;
    opts.params = params;
    opts.seed = Seed{a.seed};
    matching = solve(graph, opts).matching;
  } else {
    matching = greedy(graph, Seed{a.seed});
  }
  const Analysis an = analyse(graph, matching, params);
  const CountReport counts = counting_diagnostics(graph, matching, an.hierarchy, params);
  out << stats_to_json(graph, matching, an.flex, an.good_bad, an.hierarchy, counts).dump(2) << '\n';
  return kOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string seeds;
  std::size_t colours = 0;
  std::optional<std::size_t> colour_count;
  std::optional<std::size_t> vertices;
  std::size_t cap = 1;
  double epsilon = 0.5;
  std::size_t oracle_max_edges = 60;
  std::size_t jobs = 1;
  std::string output;
};

struct BenchRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t found = 0;
  std::optional<std::size_t> optimum;
  std::size_t iterations = 0;
  std::size_t switches = 0;
  double ms = 0;
};

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoull(text);
      return {v, v};
    }
    const auto lo = std::stoull(text.substr(0, dots));
    const auto hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw UsageError(fmt::format("empty seed range '{}'", text));
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(fmt::format("bad seed range '{}'; expected A..B", text));
  }
}

BenchRow bench_one(const BenchArgs& a, const RandomInstanceSpec& spec, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const ColouredMultigraph graph = generate_random(spec, Seed{seed});
  SolveOptions opts;
  opts.params = InstanceParams::defaults(graph.num_colours(), a.epsilon);
  opts.seed = Seed{seed};
  const SolveReport report = solve(graph, opts);
  BenchRow row{seed, graph.num_colours(), report.matching.size(), std::nullopt, report.iterations.size(),
               report.total_switches, 0};
  if (graph.num_edges() <= a.oracle_max_edges) {
    const OracleResult r = max_rainbow_matching(graph);
    if (r.exact()) row.optimum = r.optimum;
  }
  row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

int bench_cmd(const BenchArgs& a, std::ostream& out, const Logger& log) {
  const auto [lo, hi] = parse_seed_range(a.seeds);
  const RandomInstanceSpec spec = random_spec(a.colours, a.colour_count, a.cap, a.vertices);
  // Fail on bad parameters before spawning workers.
  try {
    (void)generate_random(spec, Seed{lo});
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::size_t count = hi - lo + 1;
  std::vector<BenchRow> rows(count);
  std::vector<std::string> failures(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        rows[i] = bench_one(a, spec, lo + i);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(a.jobs, 1, count);
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < count; ++i)
    if (!failures[i].empty()) throw std::runtime_error(fmt::format("seed {}: {}", lo + i, failures[i]));

  std::size_t below = 0;
  emit(a.output, out, [&](std::ostream& o) {
    o << "seed,n,found,optimum,iterations,switches,ms\n";
    for (const BenchRow& r : rows) {
      o << fmt::format("{},{},{},{},{},{},{:.3f}\n", r.seed, r.n, r.found,
                       r.optimum ? std::to_string(*r.optimum) : std::string(), r.iterations, r.switches, r.ms);
      if (r.found < r.n) ++below;
    }
  });
  log->info("{} seeds, {} below n", count, below);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const Logger log = make_logger(err);

  CLI::App app{"Rainbow matchings in properly edge-coloured multigraphs", "rainbow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rainbow 0.1.0");

  auto* gen = app.add_subcommand("generate", "Write an instance in the text format");
  gen->require_subcommand(1);
  GenerateRandomArgs gr;
  auto* gen_random = gen->add_subcommand("random", "Random properly coloured multigraph");
  gen_random->add_option("--colours", gr.colours, "Number of colours n")->required();
  gen_random->add_option("--colour-count", gr.colour_count, "Edges per colour (default ceil(1.5n))");
  gen_random->add_option("--cap", gr.cap, "Multiplicity cap")->capture_default_str();
  gen_random->add_option("--vertices", gr.vertices, "Vertex count (default 2 * colour count)");
  gen_random->add_option("--seed", gr.seed)->capture_default_str();
  gen_random->add_option("--output,-o", gr.output, "Output file (default stdout)");

  GenerateLatinArgs gl;
  auto* gen_latin = gen->add_subcommand("latin", "Bipartite graph of a Latin square");
  gen_latin->add_option("--cyclic", gl.cyclic, "Addition table of Z_n");
  gen_latin->add_option("--square", gl.square, "Latin square file")->check(CLI::ExistingFile);
  gen_latin->add_option("--random", gl.random, "Random square of this order");
  gen_latin->add_option("--seed", gl.seed)->capture_default_str();
  gen_latin->add_option("--output,-o", gl.output, "Graph output file (default stdout)");
  gen_latin->add_option("--square-output", gl.square_output, "Also write the square");

  SolveArgs sa;
  auto* solve_app = app.add_subcommand("solve", "Grow a rainbow matching");
  solve_app->add_option("--input,-i", sa.input, "Instance file")->required()->check(CLI::ExistingFile);
  sa.params.attach(solve_app);
  solve_app->add_option("--target-deficit", sa.target_deficit, "Stop at size n - K")->capture_default_str();
  solve_app->add_option("--seed", sa.seed)->capture_default_str();
  solve_app->add_option("--max-budget", sa.max_budget, "Closeness budget cap for switches")->capture_default_str();
  solve_app->add_option("--max-iterations", sa.max_iterations)->capture_default_str();
  solve_app->add_flag("--json", sa.json, "Print the report as JSON");
  solve_app->add_flag("--timing", sa.timing, "Include wall-clock time");
  solve_app->add_option("--matching-out", sa.matching_out, "Write the matching as JSON");

  VerifyArgs va;
  auto* verify_app = app.add_subcommand("verify", "Check a matching file against an instance");
  verify_app->add_option("--input,-i", va.input, "Instance file")->required()->check(CLI::ExistingFile);
  verify_app->add_option("--matching,-m", va.matching, "Matching JSON")->required()->check(CLI::ExistingFile);
  verify_app->add_flag("--json", va.json);

  OracleArgs oa;
  auto* oracle_app = app.add_subcommand("oracle", "Exact maximum rainbow matching");
  oracle_app->add_option("--input,-i", oa.input, "Instance or Latin square file")->required()->check(CLI::ExistingFile);
  oracle_app->add_flag("--latin", oa.latin, "Input is a Latin square");
  oracle_app->add_option("--max-nodes", oa.max_nodes)->capture_default_str();
  oracle_app->add_option("--time-limit", oa.time_limit, "Seconds")->capture_default_str();
  oracle_app->add_flag("--json", oa.json);

  StatsArgs st;
  auto* stats_app = app.add_subcommand("stats", "Hierarchy and counting diagnostics as JSON");
  stats_app->add_option("--input,-i", st.input, "Instance file")->required()->check(CLI::ExistingFile);
  st.params.attach(stats_app);
  stats_app->add_option("--seed", st.seed)->capture_default_str();
  auto* stats_matching =
      stats_app->add_option("--matching,-m", st.matching, "Analyse this matching")->check(CLI::ExistingFile);
  stats_app->add_flag("--solve", st.solve, "Analyse the solver's final matching")->excludes(stats_matching);

  BenchArgs ba;
  auto* bench_app = app.add_subcommand("bench", "Seed sweep of generate, solve and oracle; CSV output");
  bench_app->add_option("--seeds", ba.seeds, "Inclusive range A..B")->required();
  bench_app->add_option("--colours", ba.colours, "Number of colours n")->required();
  bench_app->add_option("--colour-count", ba.colour_count);
  bench_app->add_option("--vertices", ba.vertices);
  bench_app->add_option("--cap", ba.cap)->capture_default_str();
  bench_app->add_option("--epsilon", ba.epsilon)->capture_default_str();
  bench_app->add_option("--oracle-max-edges", ba.oracle_max_edges, "Run the oracle up to this many edges")
      ->capture_default_str();
  bench_app->add_option("--jobs,-j", ba.jobs)->capture_default_str();
  bench_app->add_option("--output,-o", ba.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen_random->parsed()) return generate_random_cmd(gr, out, log);
    if (gen_latin->parsed()) return generate_latin_cmd(gl, out, log);
    if (solve_app->parsed()) return solve_cmd(sa, out, log);
    if (verify_app->parsed()) return verify_cmd(va, out);
    if (oracle_app->parsed()) return oracle_cmd(oa, out, log);
    if (stats_app->parsed()) return stats_cmd(st, out, log);
    if (bench_app->parsed()) return bench_cmd(ba, out, log);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rainbow::cli
