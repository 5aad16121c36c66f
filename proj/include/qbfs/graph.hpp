#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qbfs {

/// 1-based vertex identifier, as in DIMACS files.
using VertexId = std::uint32_t;
using Capacity = std::int64_t;

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  Capacity capacity = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable capacitated digraph with a designated source and sink.
/// Parallel and antiparallel edges are allowed; edge order is kept as given.
class FlowNetwork {
 public:
  /// Throws std::invalid_argument if any invariant is violated.
  FlowNetwork(std::uint32_t vertex_count, VertexId source, VertexId sink,
              std::vector<Edge> edges);

  [[nodiscard]] std::uint32_t vertex_count() const noexcept { return vertex_count_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] VertexId source() const noexcept { return source_; }
  [[nodiscard]] VertexId sink() const noexcept { return sink_; }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }

  friend bool operator==(const FlowNetwork&, const FlowNetwork&) = default;

 private:
  std::uint32_t vertex_count_;
  VertexId source_;
  VertexId sink_;
  std::vector<Edge> edges_;
};

/// Arc-pair residual graph. Arc 2e is the forward arc of edge e, arc 2e+1 its
/// reverse. forward + backward residual equals the edge capacity at all times.
class ResidualGraph {
 public:
  using ArcId = std::uint32_t;

  explicit ResidualGraph(const FlowNetwork& network);

  [[nodiscard]] std::uint32_t vertex_count() const noexcept { return vertex_count_; }
  [[nodiscard]] std::size_t arc_count() const noexcept { return head_.size(); }

  /// Arcs leaving `v` (forward arcs of out-edges and reverse arcs of
  /// in-edges), in edge insertion order.
  [[nodiscard]] std::span<const ArcId> arcs_from(VertexId v) const noexcept {
    return {adjacency_.data() + first_arc_[v], adjacency_.data() + first_arc_[v + 1]};
  }

  [[nodiscard]] VertexId head(ArcId a) const noexcept { return head_[a]; }
  [[nodiscard]] VertexId tail(ArcId a) const noexcept { return head_[a ^ 1u]; }
  [[nodiscard]] Capacity residual(ArcId a) const noexcept { return residual_[a]; }
  [[nodiscard]] static constexpr ArcId reverse(ArcId a) noexcept { return a ^ 1u; }
  [[nodiscard]] static constexpr ArcId forward_arc(std::size_t edge) noexcept {
    return static_cast<ArcId>(2 * edge);
  }
  [[nodiscard]] static constexpr bool is_forward(ArcId a) noexcept { return (a & 1u) == 0; }

  /// Original capacity of the edge owning arc `a`.
  [[nodiscard]] Capacity pair_capacity(ArcId a) const noexcept {
    return residual_[a & ~1u] + residual_[a | 1u];
  }

  /// Flow currently carried by edge `edge` (its reverse-arc residual).
  [[nodiscard]] Capacity edge_flow(std::size_t edge) const noexcept {
    return residual_[2 * edge + 1];
  }

  /// Moves `amount` units of residual from arc `a` to its reverse.
  /// Requires 0 <= amount <= residual(a).
  void push(ArcId a, Capacity amount) noexcept {
    residual_[a] -= amount;
    residual_[a ^ 1u] += amount;
  }

 private:
  std::uint32_t vertex_count_;
  std::vector<VertexId> head_;
  std::vector<Capacity> residual_;
  std::vector<std::uint32_t> first_arc_;
  std::vector<ArcId> adjacency_;
};

[[nodiscard]] inline ResidualGraph build_residual(const FlowNetwork& network) {
  return ResidualGraph(network);
}

// ---------------------------------------------------------------------------
// DIMACS max-flow text format.

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct DimacsOptions {
  /// Skip unrecognised line types instead of rejecting them.
  bool permissive = false;
};

/// Throws DimacsError (with 1-based line number) on malformed input.
[[nodiscard]] FlowNetwork parse_dimacs(std::string_view text, DimacsOptions options = {});
[[nodiscard]] FlowNetwork read_dimacs_file(const std::string& path, DimacsOptions options = {});

/// Canonical form: `p max V E`, `n s s`, `n t t`, then one `a` line per edge.
[[nodiscard]] std::string write_dimacs(const FlowNetwork& network);

// ---------------------------------------------------------------------------
// Seeded generators. Pure functions of their arguments.

/// Source 1, sink n. A random s-t chain is embedded first so the sink is
/// always reachable; the remaining edges are uniform random pairs with no
/// self-loops, no edges into the source and none out of the sink.
/// Throws std::invalid_argument if n < 2, m < 1 or cmax < 1.
[[nodiscard]] FlowNetwork generate_random_network(std::uint32_t n, std::uint32_t m,
                                                  Capacity cmax, std::uint64_t seed);

/// rows x cols lattice. Cell (r, c) is vertex 2 + r*cols + c, source is 1 and
/// sink is rows*cols + 2. Edges: source to column 0, right neighbours, up and
/// down neighbours, last column to sink.
[[nodiscard]] FlowNetwork generate_grid_network(std::uint32_t rows, std::uint32_t cols,
                                                Capacity cmax, std::uint64_t seed);

}  // namespace qbfs
