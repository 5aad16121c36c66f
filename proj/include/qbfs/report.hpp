#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qbfs/harness.hpp"

namespace qbfs {

/// Column order of results.csv. Frozen.
inline constexpr std::string_view kCsvHeader =
    "instance_id,vertex_count,edge_count,flow_value,phase_index,bfs_time_ns,gates,tau_seconds,"
    "verdict";

/// %.17g; round-trips every double.
[[nodiscard]] std::string format_double(double value);

/// One row per priced phase and/or one "aggregate" row per instance,
/// depending on `aggregation`. Absent tau and verdict serialize as empty
/// fields.
[[nodiscard]] std::vector<std::string> csv_rows(const InstanceResult& result,
                                                Aggregation aggregation);
[[nodiscard]] std::string write_csv(const std::vector<InstanceResult>& results,
                                    Aggregation aggregation);

/// One JSON object per line with stable key names.
[[nodiscard]] std::string to_jsonl_line(const InstanceResult& result);
[[nodiscard]] std::string write_jsonl(const std::vector<InstanceResult>& results);
/// Throws std::runtime_error with the offending line number.
[[nodiscard]] std::vector<InstanceResult> read_jsonl(std::string_view text);

[[nodiscard]] std::string summary_json(const Summary& summary, const RunConfig& config);
[[nodiscard]] std::string format_summary(const Summary& summary, Seconds threshold);

struct ScatterPoint {
  double vertices = 0.0;
  double tau_seconds = 0.0;
};

/// Per-instance aggregate tau, or every priced phase's tau when `per_phase`.
/// Points with absent or non-positive tau are dropped.
[[nodiscard]] std::vector<ScatterPoint> scatter_points(const std::vector<InstanceResult>& results,
                                                       bool per_phase = false);

/// Log-log scatter of required gate time against vertex count with a dashed
/// rule at `threshold`. 800x600 viewBox, decade ticks. Throws
/// std::invalid_argument if `points` is empty.
[[nodiscard]] std::string emit_svg_scatter(const std::vector<ScatterPoint>& points,
                                           Seconds threshold = kGateTimeRecord);

/// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace qbfs
