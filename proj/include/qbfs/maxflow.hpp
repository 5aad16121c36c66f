#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "qbfs/graph.hpp"

namespace qbfs {

/// Monotonic time source; injected so tests can substitute a fake.
using Clock = std::function<std::chrono::nanoseconds()>;

[[nodiscard]] Clock steady_clock();

/// BFS distance from the source over positive-residual arcs.
class LevelAssignment {
 public:
  static constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

  LevelAssignment() = default;
  explicit LevelAssignment(std::uint32_t vertex_count)
      : level_(vertex_count + 1, kUnreached) {}

  [[nodiscard]] std::uint32_t operator[](VertexId v) const noexcept { return level_[v]; }
  [[nodiscard]] bool reached(VertexId v) const noexcept { return level_[v] != kUnreached; }
  void set(VertexId v, std::uint32_t level) noexcept { level_[v] = level; }
  [[nodiscard]] std::uint32_t vertex_count() const noexcept {
    return level_.empty() ? 0 : static_cast<std::uint32_t>(level_.size() - 1);
  }

  friend bool operator==(const LevelAssignment&, const LevelAssignment&) = default;

 private:
  std::vector<std::uint32_t> level_;  // index 0 unused
};

/// Log of one BFS call: the data the quantum cost model consumes.
struct BfsPhaseRecord {
  std::uint32_t phase_index = 0;
  std::uint32_t total_vertices = 0;
  /// Sizes of levels 1, 2, ... (the source's level 0 is excluded).
  std::vector<std::uint32_t> layer_sizes;
  bool sink_reached = false;
  std::optional<std::uint32_t> sink_level;
  std::chrono::nanoseconds bfs_wall_time{1};

  friend bool operator==(const BfsPhaseRecord&, const BfsPhaseRecord&) = default;
};

struct BfsResult {
  LevelAssignment levels;
  BfsPhaseRecord record;
};

/// Full breadth-first leveling from `source`. Arcs are scanned in insertion
/// order. The clock brackets only the traversal; wall time is at least 1 ns.
[[nodiscard]] BfsResult bfs_level(const ResidualGraph& residual, VertexId source, VertexId sink,
                                  const Clock& clock, std::uint32_t phase_index = 0);

/// Blocking flow on the level graph by iterative DFS with current-arc
/// cursors. Each arc is abandoned at most once per call.
Capacity blocking_flow(ResidualGraph& residual, const LevelAssignment& levels, VertexId source,
                       VertexId sink);

struct MaxFlowResult {
  Capacity flow_value = 0;
  /// One record per BFS call, the last one with sink_reached == false.
  std::vector<BfsPhaseRecord> phases;
  /// Flow pushed by the blocking flow of each augmenting phase.
  std::vector<Capacity> phase_flows;
  ResidualGraph final_residual;
};

[[nodiscard]] MaxFlowResult dinic_max_flow(const FlowNetwork& network, const Clock& clock);
[[nodiscard]] MaxFlowResult dinic_max_flow(const FlowNetwork& network);

/// Shortest-augmenting-path (Edmonds-Karp) oracle. Builds its own residual
/// adjacency lists; shares no code with the Dinic solver.
[[nodiscard]] Capacity edmonds_karp_max_flow(const FlowNetwork& network);

/// Max-flow/min-cut witness: the source side of the final residual graph
/// excludes the sink, its cut capacity equals `flow_value`, and the implied
/// flow respects capacities and conservation.
[[nodiscard]] bool verify_min_cut_certificate(const FlowNetwork& network,
                                              const ResidualGraph& final_residual,
                                              Capacity flow_value);

}  // namespace qbfs
