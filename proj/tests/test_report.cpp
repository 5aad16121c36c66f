#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "qbfs/report.hpp"
#include "test_support.hpp"

using namespace qbfs;

namespace {

const std::string kGoldenSvg = std::string(QBFS_TEST_DATA_DIR) + "/scatter_golden.svg";

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Minimal well-formedness check: every element closes in order.
bool tags_balanced(const std::string& xml) {
  std::vector<std::string> stack;
  for (std::size_t pos = xml.find('<'); pos != std::string::npos; pos = xml.find('<', pos + 1)) {
    const std::size_t end = xml.find('>', pos);
    if (end == std::string::npos) return false;
    const std::string tag = xml.substr(pos + 1, end - pos - 1);
    if (tag.empty()) return false;
    if (tag.front() == '?' || tag.front() == '!') continue;
    if (tag.back() == '/') continue;
    if (tag.front() == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
  }
  return stack.empty();
}

double attr(const std::string& element, const std::string& name) {
  const std::regex re(name + "=\"([-0-9.]+)\"");
  std::smatch m;
  if (!std::regex_search(element, m, re)) return NAN;
  return std::stod(m[1]);
}

std::vector<std::string> elements(const std::string& svg, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t pos = svg.find(prefix); pos != std::string::npos; pos = svg.find(prefix, pos + 1))
    out.push_back(svg.substr(pos, svg.find('>', pos) - pos + 1));
  return out;
}

InstanceResult sample_result() {
  RunConfig c;
  c.timing_repetitions = 1;
  return run_instance(test::worked_example_network(), c, "example.max", test::fake_clock());
}

}  // namespace

TEST(Csv, HeaderIsFrozen) {
  EXPECT_EQ(write_csv({}, Aggregation::both),
            "instance_id,vertex_count,edge_count,flow_value,phase_index,bfs_time_ns,gates,"
            "tau_seconds,verdict\n");
}

TEST(Csv, RowsPerAggregation) {
  const InstanceResult r = sample_result();
  EXPECT_EQ(csv_rows(r, Aggregation::per_phase).size(), 2u);
  const auto inst = csv_rows(r, Aggregation::per_instance);
  ASSERT_EQ(inst.size(), 1u);
  EXPECT_EQ(inst[0].rfind("example.max,11,15,35,aggregate,200,", 0), 0u) << inst[0];
  EXPECT_NE(inst[0].find(",infeasible"), std::string::npos);
  EXPECT_EQ(csv_rows(r, Aggregation::both).size(), 3u);
}

TEST(Csv, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 6.5e-9, 237.60666038091027}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(Jsonl, RoundTrip) {
  const InstanceResult r = sample_result();
  const auto back = read_jsonl(write_jsonl({r, r}));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(to_jsonl_line(back[0]), to_jsonl_line(r));
  EXPECT_EQ(back[1].phases.size(), r.phases.size());
  EXPECT_EQ(back[0].phases[0].record.layer_sizes, (std::vector<std::uint32_t>{3, 3, 2, 2}));
}

TEST(Jsonl, ReportsBadLine) {
  const std::string text = to_jsonl_line(sample_result()) + "\n{\"instance_id\": 3}\n";
  try {
    (void)read_jsonl(text);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Scatter, PointSelection) {
  InstanceResult r = sample_result();
  EXPECT_EQ(scatter_points({r}).size(), 1u);
  EXPECT_EQ(scatter_points({r}, true).size(), 2u);
  r.aggregate_tau.reset();
  EXPECT_TRUE(scatter_points({r}).empty());
}

TEST(Svg, MatchesGoldenFile) {
  const std::string svg = emit_svg_scatter(test::golden_scatter_points());
  if (std::getenv("QBFS_UPDATE_GOLDEN")) write_file_atomic(kGoldenSvg, svg);
  EXPECT_EQ(svg, slurp(kGoldenSvg));
}

TEST(Svg, WellFormed) {
  EXPECT_TRUE(tags_balanced(emit_svg_scatter(test::golden_scatter_points())));
  EXPECT_TRUE(tags_balanced(emit_svg_scatter({{12, 1e-9}})));
  EXPECT_FALSE(tags_balanced("<svg><g></svg>"));
}

TEST(Svg, ThresholdLineAtLogPosition) {
  const std::string svg = emit_svg_scatter(test::golden_scatter_points());
  const auto lines = elements(svg, "<line class=\"threshold\"");
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_NE(lines[0].find("stroke-dasharray=\"6,4\""), std::string::npos);
  // Decades 1e-14 .. 1e-8 over a 490 px plot starting at y = 40.
  const double expected = 40.0 + (-8.0 - std::log10(6.5e-9)) / 6.0 * 490.0;
  EXPECT_NEAR(attr(lines[0], "y1"), expected, 0.006);
  EXPECT_EQ(attr(lines[0], "y1"), attr(lines[0], "y2"));
}

TEST(Svg, SmallerTauIsLowerOnThePage) {
  const std::string svg = emit_svg_scatter({{100, 1e-12}, {1000, 1e-10}});
  const auto circles = elements(svg, "<circle");
  ASSERT_EQ(circles.size(), 2u);
  EXPECT_GT(attr(circles[0], "cy"), attr(circles[1], "cy"));
  EXPECT_LT(attr(circles[0], "cx"), attr(circles[1], "cx"));
  const double threshold_y = attr(elements(svg, "<line class=\"threshold\"")[0], "y1");
  EXPECT_GT(attr(circles[0], "cy"), threshold_y);
}

TEST(Svg, RejectsEmpty) {
  EXPECT_THROW((void)emit_svg_scatter({}), std::invalid_argument);
}

TEST(Summary, JsonCarriesConfig) {
  RunConfig c;
  c.seed = 17;
  const std::string j = summary_json(summarize({sample_result()}), c);
  EXPECT_NE(j.find("\"seed\": 17"), std::string::npos);
  EXPECT_NE(j.find("\"infeasible_count\": 1"), std::string::npos);
}
