#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbfs/graph.hpp"
#include "qbfs/maxflow.hpp"
#include "qbfs/quantum_cost.hpp"

namespace qbfs {

enum class Aggregation { per_phase, per_instance, both };

[[nodiscard]] std::string to_string(Aggregation a);
/// Throws std::invalid_argument on an unknown name.
[[nodiscard]] Aggregation parse_aggregation(const std::string& name);

struct RunConfig {
  std::uint32_t timing_repetitions = 5;
  Aggregation aggregation = Aggregation::both;
  bool include_terminal_bfs = false;
  bool strict_t0_cost = false;
  double epsilon = kDefaultEpsilon;
  Seconds threshold = kGateTimeRecord;
  unsigned parallel_workers = 1;
  std::uint64_t seed = 0;
  /// Run and discard one solve before the timed repetitions.
  bool warmup = true;
};

/// Throws std::invalid_argument if a field is out of range.
void validate(const RunConfig& config);

class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PhaseResult {
  /// Median BFS time over the repetitions.
  BfsPhaseRecord record;
  bool priced = false;
  double gates = 0.0;
  std::optional<Seconds> tau;
  std::optional<ThresholdVerdict> verdict;
};

struct InstanceResult {
  std::string instance_id;
  std::uint32_t vertex_count = 0;
  std::size_t edge_count = 0;
  Capacity flow_value = 0;
  std::vector<PhaseResult> phases;
  /// Aligned with the priced phases, in phase order.
  std::vector<double> per_phase_gates;
  std::vector<std::optional<Seconds>> per_phase_tau;
  /// Sum of median BFS times of the priced phases.
  std::chrono::nanoseconds total_bfs_time{0};
  double total_gates = 0.0;
  std::optional<Seconds> aggregate_tau;
  std::optional<ThresholdVerdict> verdict;
  bool guard_applied = false;
};

/// Solves `network` timing_repetitions times (after an optional warm-up),
/// takes per-phase median BFS times and prices the phases.
/// Throws HarnessError if the phase structure differs between repetitions.
[[nodiscard]] InstanceResult run_instance(const FlowNetwork& network, const RunConfig& config,
                                          std::string instance_id = "instance",
                                          const Clock& clock = steady_clock());

struct SkippedInstance {
  std::string instance_id;
  std::string reason;
};

struct DirectoryRun {
  /// Sorted by instance_id.
  std::vector<InstanceResult> results;
  std::vector<SkippedInstance> skipped;
};

/// Runs every regular file in `dir` whose name matches `pattern` (fnmatch
/// syntax). Instance ids are file names. Throws HarnessError if `dir` cannot
/// be read.
[[nodiscard]] DirectoryRun run_directory(const std::filesystem::path& dir,
                                         const std::string& pattern, const RunConfig& config);

struct Summary {
  std::size_t instance_count = 0;
  std::size_t priced_instance_count = 0;
  Seconds min_tau{0};
  Seconds max_tau{0};
  Seconds median_tau{0};
  std::size_t infeasible_count = 0;
  std::uint32_t min_vertices = 0;
  std::uint32_t max_vertices = 0;
  /// Extremes over individual priced phases.
  std::optional<Seconds> min_phase_tau;
  std::optional<Seconds> max_phase_tau;
};

/// Throws std::invalid_argument on empty input.
[[nodiscard]] Summary summarize(const std::vector<InstanceResult>& results);

struct CorpusEntry {
  std::string instance_id;
  FlowNetwork network;
};

/// Desk-scale benchmark corpus: `count` instances with vertex counts
/// log-spaced over [min_vertices, max_vertices], alternating sparse random
/// networks (4 edges per vertex, capacities up to 100) and near-square grids.
/// Ids are zero-padded so lexicographic order is generation order.
[[nodiscard]] std::vector<CorpusEntry> make_benchmark_corpus(std::size_t count,
                                                             std::uint32_t min_vertices,
                                                             std::uint32_t max_vertices,
                                                             std::uint64_t seed);

}  // namespace qbfs
