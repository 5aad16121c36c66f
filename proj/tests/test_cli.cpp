#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "qbfs/graph.hpp"
#include "qbfs/report.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qbfs");
  std::ostringstream out, err;
  const int code = qbfs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kExample = std::string(QBFS_TEST_DATA_DIR) + "/worked_example.max";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qbfs_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Blanks the bfs_time_ns, tau_seconds and verdict columns.
std::string non_timing_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    for (std::size_t i = 5; i < cols.size(); ++i)
      if (i != 6) cols[i].clear();
    for (const auto& c : cols) out += c + ',';
    out += '\n';
  }
  return out;
}

}  // namespace

TEST(Cli, SolveWorkedExample) {
  const CliRun r = cli({"solve", kExample});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("max flow = 35"), std::string::npos);
  EXPECT_NE(r.out.find("[3,3,2,2]"), std::string::npos);
}

TEST(Cli, SolveExampleFileMatchesBuiltIn) {
  EXPECT_EQ(qbfs::read_dimacs_file(kExample), qbfs::test::worked_example_network());
}

TEST(Cli, SolveMissingFile) {
  const CliRun r = cli({"solve", "/nonexistent.max"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"estimate", "--list-size", "64"}).code, 2);
}

TEST(Cli, EstimateNoMarked) {
  const CliRun r = cli({"estimate", "--list-size", "64", "--marked", "0", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["N_q"].get<double>(), 0.0);
  EXPECT_EQ(j["G_q"].get<double>(), 0.0);
  EXPECT_TRUE(j["n_q"].is_null());
}

TEST(Cli, EstimateAllMarked) {
  const CliRun r = cli({"estimate", "--list-size", "64", "--marked", "64", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n_q"].get<double>(), 0.5);
  EXPECT_EQ(j["k_max"].get<int>(), 12);
  EXPECT_EQ(j["cycles_per_iteration"].get<int>(), 128);
}

TEST(Cli, EstimateText) {
  const CliRun r = cli({"estimate", "--list-size", "64", "--marked", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("n_Q = 2.01118931002748"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("k_max = 12"), std::string::npos);
}

TEST(Cli, EstimateRejectsBadInput) {
  EXPECT_EQ(cli({"estimate", "--list-size", "1", "--marked", "0"}).code, 2);
  EXPECT_EQ(cli({"estimate", "--list-size", "4", "--marked", "5"}).code, 2);
}

TEST(Cli, SimulateNeedsThousandTrials) {
  const CliRun r = cli({"simulate", "--list-size", "64", "--marked", "1", "--trials", "999"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1000"), std::string::npos);
}

TEST(Cli, SimulateReportsBothEstimates) {
  const CliRun r = cli({"simulate", "--list-size", "64", "--marked", "64", "--trials", "2000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("n_Q closed form = 0.5"), std::string::npos) << r.out;
}

TEST(Cli, BenchEmptyDirectory) {
  const fs::path in = scratch("empty_in");
  const fs::path out = scratch("empty_out");
  const CliRun r = cli({"bench", in.string(), "--out", out.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(slurp(out / "results.csv"), std::string(qbfs::kCsvHeader) + "\n");
  fs::remove_all(in);
  fs::remove_all(out);
}

TEST(Cli, BenchMissingDirectory) {
  EXPECT_EQ(cli({"bench", "/nonexistent/dir"}).code, 2);
}

TEST(Cli, BenchRerunIsStableAndReportRenders) {
  const fs::path in = scratch("bench_in");
  const fs::path out1 = scratch("bench_out1");
  const fs::path out2 = scratch("bench_out2");
  ASSERT_EQ(cli({"generate", "corpus", "--count", "4", "--min-vertices", "20", "--max-vertices", "200",
                 "--seed", "5", "-o", in.string()}).code, 0);
  fs::copy_file(kExample, in / "example.max");

  const CliRun a = cli({"bench", in.string(), "--out", out1.string(), "--reps", "2", "--workers", "2"});
  const CliRun b = cli({"bench", in.string(), "--out", out2.string(), "--reps", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  const std::string csv = slurp(out1 / "results.csv");
  EXPECT_EQ(non_timing_columns(csv), non_timing_columns(slurp(out2 / "results.csv")));
  EXPECT_NE(csv.find("example.max,11,15,35,0,"), std::string::npos);
  EXPECT_TRUE(fs::exists(out1 / "summary.json"));
  EXPECT_NE(a.out.find("instances: 5"), std::string::npos) << a.out;

  const fs::path svg = out1 / "plot.svg";
  const CliRun rep = cli({"report", (out1 / "results.jsonl").string(), "--svg", svg.string()});
  ASSERT_EQ(rep.code, 0) << rep.err;
  const std::string text = slurp(svg);
  EXPECT_EQ(text.rfind("<?xml", 0), 0u);
  EXPECT_NE(text.find("class=\"threshold\""), std::string::npos);
  EXPECT_EQ(cli({"report", (out1 / "results.jsonl").string(), "--svg", svg.string(), "--per-phase"}).code, 0);

  for (const auto& p : {in, out1, out2}) fs::remove_all(p);
}

TEST(Cli, GenerateRandomToStdout) {
  const CliRun r = cli({"generate", "random", "--n", "5", "--m", "7", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(qbfs::parse_dimacs(r.out), qbfs::generate_random_network(5, 7, 20, 1));
}
