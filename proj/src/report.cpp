#include "qbfs/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qbfs {
namespace {

using nlohmann::json;

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string verdict_name(const std::optional<ThresholdVerdict>& v) {
  if (!v) return "";
  return v->feasible ? "feasible" : "infeasible";
}

json optional_seconds(const std::optional<Seconds>& s) {
  return s ? json(s->count()) : json(nullptr);
}

std::optional<Seconds> seconds_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return Seconds(j.get<double>());
}

json verdict_json(const std::optional<ThresholdVerdict>& v) {
  if (!v) return nullptr;
  return json{{"feasible", v->feasible}, {"margin", v->margin}};
}

std::optional<ThresholdVerdict> verdict_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return ThresholdVerdict{j.at("feasible").get<bool>(), j.at("margin").get<double>()};
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<std::string> csv_rows(const InstanceResult& r, Aggregation aggregation) {
  std::vector<std::string> rows;
  const std::string prefix = r.instance_id + ',' + std::to_string(r.vertex_count) + ',' +
                             std::to_string(r.edge_count) + ',' + std::to_string(r.flow_value) +
                             ',';
  auto row = [&](const std::string& phase, std::chrono::nanoseconds time, double gates,
                 const std::optional<Seconds>& tau, const std::optional<ThresholdVerdict>& v) {
    rows.push_back(prefix + phase + ',' + std::to_string(time.count()) + ',' +
                   format_double(gates) + ',' + (tau ? format_double(tau->count()) : "") + ',' +
                   verdict_name(v));
  };
  if (aggregation != Aggregation::per_instance) {
    for (const auto& p : r.phases) {
      if (p.priced)
        row(std::to_string(p.record.phase_index), p.record.bfs_wall_time, p.gates, p.tau,
            p.verdict);
    }
  }
  if (aggregation != Aggregation::per_phase)
    row("aggregate", r.total_bfs_time, r.total_gates, r.aggregate_tau, r.verdict);
  return rows;
}

std::string write_csv(const std::vector<InstanceResult>& results, Aggregation aggregation) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : results) {
    for (const auto& line : csv_rows(r, aggregation)) {
      out += line;
      out += '\n';
    }
  }
  return out;
}

std::string to_jsonl_line(const InstanceResult& r) {
  json phases = json::array();
  for (const auto& p : r.phases) {
    phases.push_back({
        {"phase_index", p.record.phase_index},
        {"total_vertices", p.record.total_vertices},
        {"layer_sizes", p.record.layer_sizes},
        {"sink_reached", p.record.sink_reached},
        {"sink_level", p.record.sink_level ? json(*p.record.sink_level) : json(nullptr)},
        {"bfs_time_ns", p.record.bfs_wall_time.count()},
        {"priced", p.priced},
        {"gates", p.gates},
        {"tau_seconds", optional_seconds(p.tau)},
        {"verdict", verdict_json(p.verdict)},
    });
  }
  json per_phase_tau = json::array();
  for (const auto& t : r.per_phase_tau) per_phase_tau.push_back(optional_seconds(t));

  const json j = {
      {"instance_id", r.instance_id},
      {"vertex_count", r.vertex_count},
      {"edge_count", r.edge_count},
      {"flow_value", r.flow_value},
      {"phases", phases},
      {"per_phase_gates", r.per_phase_gates},
      {"per_phase_tau_seconds", per_phase_tau},
      {"total_bfs_time_ns", r.total_bfs_time.count()},
      {"total_gates", r.total_gates},
      {"aggregate_tau_seconds", optional_seconds(r.aggregate_tau)},
      {"verdict", verdict_json(r.verdict)},
      {"guard_applied", r.guard_applied},
  };
  return j.dump();
}

std::string write_jsonl(const std::vector<InstanceResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += to_jsonl_line(r);
    out += '\n';
  }
  return out;
}

std::vector<InstanceResult> read_jsonl(std::string_view text) {
  std::vector<InstanceResult> results;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      InstanceResult r;
      r.instance_id = j.at("instance_id").get<std::string>();
      r.vertex_count = j.at("vertex_count").get<std::uint32_t>();
      r.edge_count = j.at("edge_count").get<std::size_t>();
      r.flow_value = j.at("flow_value").get<Capacity>();
      for (const auto& p : j.at("phases")) {
        PhaseResult phase;
        phase.record.phase_index = p.at("phase_index").get<std::uint32_t>();
        phase.record.total_vertices = p.at("total_vertices").get<std::uint32_t>();
        phase.record.layer_sizes = p.at("layer_sizes").get<std::vector<std::uint32_t>>();
        phase.record.sink_reached = p.at("sink_reached").get<bool>();
        if (!p.at("sink_level").is_null())
          phase.record.sink_level = p.at("sink_level").get<std::uint32_t>();
        phase.record.bfs_wall_time = std::chrono::nanoseconds(p.at("bfs_time_ns").get<std::int64_t>());
        phase.priced = p.at("priced").get<bool>();
        phase.gates = p.at("gates").get<double>();
        phase.tau = seconds_from(p.at("tau_seconds"));
        phase.verdict = verdict_from(p.at("verdict"));
        r.phases.push_back(std::move(phase));
      }
      r.per_phase_gates = j.at("per_phase_gates").get<std::vector<double>>();
      for (const auto& t : j.at("per_phase_tau_seconds")) r.per_phase_tau.push_back(seconds_from(t));
      r.total_bfs_time = std::chrono::nanoseconds(j.at("total_bfs_time_ns").get<std::int64_t>());
      r.total_gates = j.at("total_gates").get<double>();
      r.aggregate_tau = seconds_from(j.at("aggregate_tau_seconds"));
      r.verdict = verdict_from(j.at("verdict"));
      r.guard_applied = j.at("guard_applied").get<bool>();
      results.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw std::runtime_error("results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return results;
}

std::string summary_json(const Summary& s, const RunConfig& config) {
  auto opt = [](const std::optional<Seconds>& v) { return v ? json(v->count()) : json(nullptr); };
  const json j = {
      {"instance_count", s.instance_count},
      {"priced_instance_count", s.priced_instance_count},
      {"min_tau_seconds", s.min_tau.count()},
      {"max_tau_seconds", s.max_tau.count()},
      {"median_tau_seconds", s.median_tau.count()},
      {"min_phase_tau_seconds", opt(s.min_phase_tau)},
      {"max_phase_tau_seconds", opt(s.max_phase_tau)},
      {"infeasible_count", s.infeasible_count},
      {"min_vertices", s.min_vertices},
      {"max_vertices", s.max_vertices},
      {"threshold_seconds", config.threshold.count()},
      {"timing_repetitions", config.timing_repetitions},
      {"aggregation", to_string(config.aggregation)},
      {"include_terminal_bfs", config.include_terminal_bfs},
      {"strict_t0_cost", config.strict_t0_cost},
      {"epsilon", config.epsilon},
      {"seed", config.seed},
  };
  return j.dump(2) + '\n';
}

std::string format_summary(const Summary& s, Seconds threshold) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "instances: %zu (priced %zu), vertices %u..%u\n"
                "required gate time: min %.3e s, median %.3e s, max %.3e s\n"
                "below %.3g s threshold (infeasible): %zu of %zu\n",
                s.instance_count, s.priced_instance_count, s.min_vertices, s.max_vertices,
                s.min_tau.count(), s.median_tau.count(), s.max_tau.count(), threshold.count(),
                s.infeasible_count, s.priced_instance_count);
  return buf;
}

std::vector<ScatterPoint> scatter_points(const std::vector<InstanceResult>& results,
                                         bool per_phase) {
  std::vector<ScatterPoint> points;
  for (const auto& r : results) {
    const auto v = static_cast<double>(r.vertex_count);
    if (per_phase) {
      for (const auto& tau : r.per_phase_tau)
        if (tau && tau->count() > 0) points.push_back({v, tau->count()});
    } else if (r.aggregate_tau && r.aggregate_tau->count() > 0) {
      points.push_back({v, r.aggregate_tau->count()});
    }
  }
  return points;
}

std::string emit_svg_scatter(const std::vector<ScatterPoint>& points, Seconds threshold) {
  if (points.empty()) throw std::invalid_argument("no plottable points");

  constexpr double width = 800, height = 600;
  constexpr double left = 100, right = 30, top = 40, bottom = 70;
  constexpr double plot_w = width - left - right;
  constexpr double plot_h = height - top - bottom;

  double x_min = points.front().vertices, x_max = x_min;
  double y_min = threshold.count(), y_max = y_min;
  for (const auto& p : points) {
    x_min = std::min(x_min, p.vertices);
    x_max = std::max(x_max, p.vertices);
    y_min = std::min(y_min, p.tau_seconds);
    y_max = std::max(y_max, p.tau_seconds);
  }
  const int x_lo = static_cast<int>(std::floor(std::log10(x_min)));
  int x_hi = static_cast<int>(std::ceil(std::log10(x_max)));
  if (x_hi == x_lo) ++x_hi;
  const int y_lo = static_cast<int>(std::floor(std::log10(y_min)));
  int y_hi = static_cast<int>(std::ceil(std::log10(y_max)));
  if (y_hi == y_lo) ++y_hi;

  auto px = [&](double x) { return left + (std::log10(x) - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (y_hi - std::log10(y)) / (y_hi - y_lo) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";

  svg << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int d = x_lo; d <= x_hi; ++d) {
    const std::string x = fixed2(left + double(d - x_lo) / (x_hi - x_lo) * plot_w);
    svg << "<line x1=\"" << x << "\" y1=\"" << fixed2(top) << "\" x2=\"" << x << "\" y2=\""
        << fixed2(top + plot_h) << "\"/>\n";
  }
  for (int d = y_lo; d <= y_hi; ++d) {
    const std::string y = fixed2(top + double(y_hi - d) / (y_hi - y_lo) * plot_h);
    svg << "<line x1=\"" << fixed2(left) << "\" y1=\"" << y << "\" x2=\"" << fixed2(left + plot_w)
        << "\" y2=\"" << y << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<rect x=\"" << fixed2(left) << "\" y=\"" << fixed2(top) << "\" width=\""
      << fixed2(plot_w) << "\" height=\"" << fixed2(plot_h)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  svg << "<g text-anchor=\"middle\">\n";
  for (int d = x_lo; d <= x_hi; ++d) {
    svg << "<text x=\"" << fixed2(left + double(d - x_lo) / (x_hi - x_lo) * plot_w) << "\" y=\""
        << fixed2(top + plot_h + 20) << "\">10<tspan baseline-shift=\"super\" font-size=\"9\">"
        << d << "</tspan></text>\n";
  }
  svg << "</g>\n<g text-anchor=\"end\">\n";
  for (int d = y_lo; d <= y_hi; ++d) {
    svg << "<text x=\"" << fixed2(left - 8) << "\" y=\""
        << fixed2(top + double(y_hi - d) / (y_hi - y_lo) * plot_h + 4)
        << "\">10<tspan baseline-shift=\"super\" font-size=\"9\">" << d << "</tspan></text>\n";
  }
  svg << "</g>\n";

  svg << "<text x=\"" << fixed2(left + plot_w / 2) << "\" y=\"" << fixed2(height - 20)
      << "\" text-anchor=\"middle\">vertices</text>\n"
      << "<text x=\"24\" y=\"" << fixed2(top + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 24 " << fixed2(top + plot_h / 2)
      << ")\">required gate time (s)</text>\n";

  const std::string ty = fixed2(py(threshold.count()));
  char label[64];
  std::snprintf(label, sizeof label, "%.2g s", threshold.count());
  svg << "<line class=\"threshold\" x1=\"" << fixed2(left) << "\" y1=\"" << ty << "\" x2=\""
      << fixed2(left + plot_w) << "\" y2=\"" << ty
      << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n"
      << "<text x=\"" << fixed2(left + plot_w - 4) << "\" y=\"" << fixed2(py(threshold.count()) - 6)
      << "\" text-anchor=\"end\" fill=\"#c0392b\">" << label << "</text>\n";

  svg << "<g fill=\"#2c6fbb\" fill-opacity=\"0.7\">\n";
  for (const auto& p : points) {
    svg << "<circle cx=\"" << fixed2(px(p.vertices)) << "\" cy=\"" << fixed2(py(p.tau_seconds))
        << "\" r=\"3\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qbfs
