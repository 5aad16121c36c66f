#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbfs/graph.hpp"
#include "qbfs/harness.hpp"
#include "qbfs/maxflow.hpp"
#include "qbfs/qsearch_sim.hpp"
#include "qbfs/quantum_cost.hpp"
#include "qbfs/report.hpp"

namespace qbfs::cli {
namespace {

namespace fs = std::filesystem;

unsigned default_workers() {
  if (const char* env = std::getenv("QBFS_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

int cmd_solve(const std::string& file, std::ostream& out, std::ostream& err) {
  const FlowNetwork network = read_dimacs_file(file);
  const MaxFlowResult result = dinic_max_flow(network);
  out << "max flow = " << result.flow_value << '\n';
  out << "vertices = " << network.vertex_count() << ", edges = " << network.edge_count() << '\n';
  out << "phase  sink_level  pushed  bfs_ns  layer_sizes\n";
  for (std::size_t p = 0; p < result.phases.size(); ++p) {
    const auto& rec = result.phases[p];
    out << rec.phase_index << "  " << (rec.sink_level ? std::to_string(*rec.sink_level) : "-")
        << "  " << (p < result.phase_flows.size() ? std::to_string(result.phase_flows[p]) : "-")
        << "  " << rec.bfs_wall_time.count() << "  [";
    for (std::size_t i = 0; i < rec.layer_sizes.size(); ++i)
      out << (i ? "," : "") << rec.layer_sizes[i];
    out << "]\n";
  }
  if (!verify_min_cut_certificate(network, result.final_residual, result.flow_value)) {
    err << "error: min-cut certificate check failed\n";
    return kExitPartial;
  }
  return kExitOk;
}

int cmd_estimate(std::uint64_t list_size, std::uint64_t marked, double epsilon, bool as_json,
                 std::ostream& out) {
  const QSearchParams params = make_qsearch_params(list_size, marked, epsilon);
  const auto all = expected_iterations_all_detailed(list_size, marked);
  const double gates = gate_count(list_size, marked);
  const CycleModel cycles = cycles_per_iteration(list_size);
  const std::optional<double> n_q =
      marked >= 1 ? std::optional(expected_iterations_one(list_size, marked)) : std::nullopt;

  if (as_json) {
    nlohmann::json j = {
        {"list_size", list_size},
        {"marked", marked},
        {"epsilon", epsilon},
        {"k_max", params.k_max},
        {"s_max", params.s_max},
        {"theta", params.theta},
        {"n_q", n_q ? nlohmann::json(*n_q) : nlohmann::json(nullptr)},
        {"N_q", all.value},
        {"G_q", gates},
        {"cycles_per_iteration", cycles.total_per_iteration},
        {"guard_applied", all.guard_applied},
    };
    out << j.dump() << '\n';
    return kExitOk;
  }
  out << "|L| = " << list_size << ", t = " << marked << ", k_max = " << params.k_max
      << ", s_max = " << params.s_max << '\n';
  out << "cycles per Grover iteration = " << cycles.oracle_cycles << " + "
      << cycles.hadamard_cycles / 2 << " + " << cycles.multicontrolled_z_cycles << " + "
      << cycles.hadamard_cycles / 2 << " = " << cycles.total_per_iteration << '\n';
  out << "n_Q = " << (n_q ? format_double(*n_q) : std::string("n/a (t = 0)")) << '\n';
  out << "N_Q = " << format_double(all.value) << (all.guard_applied ? " (guarded)" : "") << '\n';
  out << "G_Q = " << format_double(gates) << '\n';
  return kExitOk;
}

int cmd_simulate(std::uint64_t list_size, std::uint64_t marked, std::uint64_t trials,
                 std::uint64_t seed, double epsilon, bool all, unsigned workers,
                 std::ostream& out) {
  const McOptions options{workers};
  const McEstimate mc =
      all ? mc_expected_iterations_all(list_size, marked, epsilon, trials, seed, options)
          : mc_expected_iterations(list_size, marked, epsilon, trials, seed, options);
  const double closed =
      all ? expected_iterations_all(list_size, marked) : expected_iterations_one(list_size, marked);
  const double deviation = std::fabs(mc.mean - closed) / closed;
  out << (all ? "N_Q" : "n_Q") << " Monte Carlo = " << format_double(mc.mean) << " +/- "
      << format_double(mc.standard_error) << " (trials " << trials << ", seed " << seed << ")\n";
  out << (all ? "N_Q" : "n_Q") << " closed form = " << format_double(closed) << '\n';
  char buf[160];
  std::snprintf(buf, sizeof buf, "relative deviation = %.3f%%, z = %.2f\n", 100.0 * deviation,
                mc.standard_error > 0 ? (mc.mean - closed) / mc.standard_error : 0.0);
  out << buf;
  out << "success rate = " << format_double(mc.success_rate)
      << ", full-schedule mean on success = " << format_double(mc.mean_full_schedule) << '\n';
  return kExitOk;
}

struct BenchFlags {
  std::string dir;
  std::string pattern = "*";
  std::string out_dir = ".";
  std::string aggregation = "both";
  RunConfig config;
};

int cmd_bench(BenchFlags flags, std::ostream& out, std::ostream& err) {
  flags.config.aggregation = parse_aggregation(flags.aggregation);
  DirectoryRun run;
  try {
    run = run_directory(flags.dir, flags.pattern, flags.config);
  } catch (const HarnessError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const auto& s : run.skipped) err << "skipped " << s.instance_id << ": " << s.reason << '\n';

  const fs::path out_dir(flags.out_dir);
  fs::create_directories(out_dir);
  write_file_atomic(out_dir / "results.csv", write_csv(run.results, flags.config.aggregation));
  write_file_atomic(out_dir / "results.jsonl", write_jsonl(run.results));

  if (run.results.empty()) {
    err << "warning: no instances processed in " << flags.dir << '\n';
    return kExitPartial;
  }
  const Summary summary = summarize(run.results);
  write_file_atomic(out_dir / "summary.json", summary_json(summary, flags.config));
  out << format_summary(summary, flags.config.threshold);
  return run.skipped.empty() ? kExitOk : kExitPartial;
}

int cmd_report(const std::string& jsonl, const std::string& svg_path, bool per_phase,
               double threshold, std::ostream& out, std::ostream& err) {
  std::ifstream in(jsonl, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << jsonl << '\n';
    return kExitUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();
  const auto results = read_jsonl(text.str());
  const auto points = scatter_points(results, per_phase);
  if (points.empty()) {
    err << "error: no plottable points in " << jsonl << '\n';
    return kExitPartial;
  }
  write_file_atomic(svg_path, emit_svg_scatter(points, Seconds(threshold)));
  out << "wrote " << points.size() << " points to " << svg_path << '\n';
  if (!results.empty()) out << format_summary(summarize(results), Seconds(threshold));
  return kExitOk;
}

int cmd_generate(const std::string& kind, std::uint32_t n, std::uint32_t m, std::uint32_t rows,
                 std::uint32_t cols, std::int64_t cmax, std::uint64_t seed, std::size_t count,
                 std::uint32_t min_v, std::uint32_t max_v, const std::string& output,
                 std::ostream& out) {
  if (kind == "corpus") {
    const fs::path dir(output);
    fs::create_directories(dir);
    const auto corpus = make_benchmark_corpus(count, min_v, max_v, seed);
    for (const auto& entry : corpus)
      write_file_atomic(dir / entry.instance_id, write_dimacs(entry.network));
    out << "wrote " << corpus.size() << " instances to " << dir.string() << '\n';
    return kExitOk;
  }
  const FlowNetwork network = kind == "grid" ? generate_grid_network(rows, cols, cmax, seed)
                                             : generate_random_network(n, m, cmax, seed);
  const std::string text = write_dimacs(network);
  if (output.empty() || output == "-") {
    out << text;
  } else {
    write_file_atomic(output, text);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid benchmark of quantum BFS inside Dinic's max-flow algorithm", "qbfs"};
  app.require_subcommand(1);

  std::string solve_file;
  auto* solve = app.add_subcommand("solve", "Solve a DIMACS max-flow instance");
  solve->add_option("file", solve_file, "DIMACS file")->required();

  std::uint64_t list_size = 0;
  std::uint64_t marked = 0;
  double epsilon = kDefaultEpsilon;
  bool as_json = false;
  auto* estimate = app.add_subcommand("estimate", "Evaluate n_Q, N_Q and G_Q");
  estimate->add_option("--list-size", list_size, "|L|")->required();
  estimate->add_option("--marked", marked, "t")->required();
  estimate->add_option("--epsilon", epsilon, "QSearch failure bound");
  estimate->add_flag("--json", as_json, "Machine-readable output");

  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  bool sim_all = false;
  unsigned workers = default_workers();
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the closed form");
  simulate->add_option("--list-size", list_size, "|L|")->required();
  simulate->add_option("--marked", marked, "t")->required();
  simulate->add_option("--trials", trials, "Number of trials (>= 1000)");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--epsilon", epsilon, "QSearch failure bound");
  simulate->add_option("--workers", workers, "Worker threads");
  simulate->add_flag("--all", sim_all, "Find all marked items (N_Q) instead of one (n_Q)");

  BenchFlags bench_flags;
  bench_flags.config.parallel_workers = default_workers();
  double bench_threshold = kGateTimeRecord.count();
  auto* bench = app.add_subcommand("bench", "Run the hybrid benchmark over a directory");
  bench->add_option("dir", bench_flags.dir, "Directory of DIMACS files")->required();
  bench->add_option("--pattern", bench_flags.pattern, "File name glob");
  bench->add_option("--workers", bench_flags.config.parallel_workers, "Parallel instances")
      ->check(CLI::PositiveNumber);
  bench->add_option("--reps", bench_flags.config.timing_repetitions, "Timed repetitions")
      ->check(CLI::PositiveNumber);
  bench->add_option("--aggregation", bench_flags.aggregation, "per_phase|per_instance|both")
      ->check(CLI::IsMember({"per_phase", "per_instance", "both"}));
  bench->add_flag("--include-terminal-bfs", bench_flags.config.include_terminal_bfs,
                  "Price the final BFS that misses the sink");
  bench->add_flag("--strict-t0", bench_flags.config.strict_t0_cost,
                  "Charge empty searches a full failing run");
  bench->add_option("--threshold", bench_threshold, "Reference gate time in seconds")
      ->check(CLI::PositiveNumber);
  bench->add_option("--epsilon", bench_flags.config.epsilon, "QSearch failure bound");
  bench->add_option("--seed", bench_flags.config.seed, "Recorded seed");
  bench->add_option("--out", bench_flags.out_dir, "Output directory");

  std::string report_input;
  std::string svg_path;
  bool per_phase = false;
  double report_threshold = kGateTimeRecord.count();
  auto* report = app.add_subcommand("report", "Render results.jsonl as an SVG scatter plot");
  report->add_option("results", report_input, "results.jsonl")->required();
  report->add_option("--svg", svg_path, "Output SVG file")->required();
  report->add_flag("--per-phase", per_phase, "Plot every priced phase instead of instances");
  report->add_option("--threshold", report_threshold, "Reference gate time in seconds")
      ->check(CLI::PositiveNumber);

  std::string gen_kind = "random";
  std::uint32_t gen_n = 30, gen_m = 90, gen_rows = 3, gen_cols = 4;
  std::int64_t gen_cmax = 20;
  std::size_t gen_count = 200;
  std::uint32_t gen_min = 50, gen_max = 10000;
  std::string gen_output;
  auto* generate = app.add_subcommand("generate", "Write generated instances as DIMACS");
  generate->add_option("kind", gen_kind, "random|grid|corpus")
      ->check(CLI::IsMember({"random", "grid", "corpus"}));
  generate->add_option("--n", gen_n, "Vertices (random)");
  generate->add_option("--m", gen_m, "Edges (random)");
  generate->add_option("--rows", gen_rows, "Rows (grid)");
  generate->add_option("--cols", gen_cols, "Columns (grid)");
  generate->add_option("--cmax", gen_cmax, "Maximum capacity");
  generate->add_option("--seed", seed, "Generator seed");
  generate->add_option("--count", gen_count, "Instances (corpus)");
  generate->add_option("--min-vertices", gen_min, "Smallest instance (corpus)");
  generate->add_option("--max-vertices", gen_max, "Largest instance (corpus)");
  generate->add_option("-o,--output", gen_output, "Output file, or directory for corpus");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_file, out, err);
    if (*estimate) return cmd_estimate(list_size, marked, epsilon, as_json, out);
    if (*simulate) {
      if (trials < 1000) {
        err << "error: --trials must be at least 1000\n";
        return kExitUsage;
      }
      return cmd_simulate(list_size, marked, trials, seed, epsilon, sim_all, workers, out);
    }
    if (*bench) {
      bench_flags.config.threshold = Seconds(bench_threshold);
      return cmd_bench(bench_flags, out, err);
    }
    if (*report) return cmd_report(report_input, svg_path, per_phase, report_threshold, out, err);
    if (*generate)
      return cmd_generate(gen_kind, gen_n, gen_m, gen_rows, gen_cols, gen_cmax, seed, gen_count,
                          gen_min, gen_max, gen_output, out);
  } catch (const std::exception& e) {
    // DimacsError, domain violations and unreadable files all land here.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qbfs::cli
