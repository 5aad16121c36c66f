#include "qbfs/maxflow.hpp"

#include <algorithm>
#include <deque>

namespace qbfs {

Clock steady_clock() {
  return [] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now().time_since_epoch());
  };
}

BfsResult bfs_level(const ResidualGraph& residual, VertexId source, VertexId sink,
                    const Clock& clock, std::uint32_t phase_index) {
  const std::uint32_t n = residual.vertex_count();
  LevelAssignment levels(n);
  std::vector<VertexId> queue;
  queue.reserve(n);

  const auto start = clock();
  levels.set(source, 0);
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    const std::uint32_t next = levels[u] + 1;
    for (const auto a : residual.arcs_from(u)) {
      const VertexId v = residual.head(a);
      if (residual.residual(a) > 0 && !levels.reached(v)) {
        levels.set(v, next);
        queue.push_back(v);
      }
    }
  }
  const auto stop = clock();

  BfsPhaseRecord record;
  record.phase_index = phase_index;
  record.total_vertices = n;
  // Queue order is level order, so layers are contiguous runs.
  for (std::size_t i = 1; i < queue.size(); ++i) {
    const std::uint32_t l = levels[queue[i]];
    if (l > record.layer_sizes.size()) record.layer_sizes.push_back(0);
    ++record.layer_sizes.back();
  }
  record.sink_reached = levels.reached(sink);
  if (record.sink_reached) record.sink_level = levels[sink];
  record.bfs_wall_time = std::max(stop - start, std::chrono::nanoseconds{1});
  return {std::move(levels), std::move(record)};
}

Capacity blocking_flow(ResidualGraph& residual, const LevelAssignment& levels, VertexId source,
                       VertexId sink) {
  if (!levels.reached(sink)) return 0;
  const std::uint32_t n = residual.vertex_count();
  std::vector<std::uint32_t> cursor(n + 1, 0);
  std::vector<ResidualGraph::ArcId> path;
  Capacity total = 0;

  VertexId v = source;
  while (true) {
    if (v == sink) {
      Capacity bottleneck = std::numeric_limits<Capacity>::max();
      for (const auto a : path) bottleneck = std::min(bottleneck, residual.residual(a));
      std::size_t first_saturated = path.size();
      for (std::size_t i = 0; i < path.size(); ++i) {
        residual.push(path[i], bottleneck);
        if (first_saturated == path.size() && residual.residual(path[i]) == 0) first_saturated = i;
      }
      total += bottleneck;
      path.resize(first_saturated);
      v = path.empty() ? source : residual.head(path.back());
      continue;
    }

    const auto arcs = residual.arcs_from(v);
    bool advanced = false;
    while (cursor[v] < arcs.size()) {
      const auto a = arcs[cursor[v]];
      const VertexId w = residual.head(a);
      if (residual.residual(a) > 0 && levels.reached(w) && levels[w] == levels[v] + 1) {
        path.push_back(a);
        v = w;
        advanced = true;
        break;
      }
      ++cursor[v];
    }
    if (advanced) continue;

    // Dead end: retreat and prune the arc that led here.
    if (v == source) break;
    const auto back = path.back();
    path.pop_back();
    v = residual.tail(back);
    ++cursor[v];
  }
  return total;
}

MaxFlowResult dinic_max_flow(const FlowNetwork& network, const Clock& clock) {
  MaxFlowResult result{0, {}, {}, build_residual(network)};
  for (std::uint32_t phase = 0;; ++phase) {
    auto bfs = bfs_level(result.final_residual, network.source(), network.sink(), clock, phase);
    const bool reached = bfs.record.sink_reached;
    result.phases.push_back(std::move(bfs.record));
    if (!reached) break;
    const Capacity pushed =
        blocking_flow(result.final_residual, bfs.levels, network.source(), network.sink());
    result.phase_flows.push_back(pushed);
    result.flow_value += pushed;
  }
  return result;
}

MaxFlowResult dinic_max_flow(const FlowNetwork& network) {
  return dinic_max_flow(network, steady_clock());
}

Capacity edmonds_karp_max_flow(const FlowNetwork& network) {
  struct Arc {
    std::uint32_t to;
    std::uint32_t rev;
    Capacity cap;
  };
  const std::uint32_t n = network.vertex_count();
  std::vector<std::vector<Arc>> adj(n + 1);
  for (const Edge& e : network.edges()) {
    const auto fwd = static_cast<std::uint32_t>(adj[e.tail].size());
    const auto bwd = static_cast<std::uint32_t>(adj[e.head].size());
    adj[e.tail].push_back({e.head, bwd, e.capacity});
    adj[e.head].push_back({e.tail, fwd, 0});
  }

  const VertexId s = network.source();
  const VertexId t = network.sink();
  Capacity flow = 0;
  // parent[v] = (vertex, arc index in adj[vertex]) that discovered v.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> parent(n + 1);
  std::vector<bool> seen(n + 1);
  while (true) {
    std::fill(seen.begin(), seen.end(), false);
    std::deque<std::uint32_t> frontier{s};
    seen[s] = true;
    while (!frontier.empty() && !seen[t]) {
      const auto u = frontier.front();
      frontier.pop_front();
      for (std::uint32_t i = 0; i < adj[u].size(); ++i) {
        const Arc& arc = adj[u][i];
        if (arc.cap > 0 && !seen[arc.to]) {
          seen[arc.to] = true;
          parent[arc.to] = {u, i};
          frontier.push_back(arc.to);
        }
      }
    }
    if (!seen[t]) break;

    Capacity bottleneck = std::numeric_limits<Capacity>::max();
    for (auto v = t; v != s; v = parent[v].first)
      bottleneck = std::min(bottleneck, adj[parent[v].first][parent[v].second].cap);
    for (auto v = t; v != s; v = parent[v].first) {
      Arc& arc = adj[parent[v].first][parent[v].second];
      arc.cap -= bottleneck;
      adj[arc.to][arc.rev].cap += bottleneck;
    }
    flow += bottleneck;
  }
  return flow;
}

bool verify_min_cut_certificate(const FlowNetwork& network, const ResidualGraph& final_residual,
                                Capacity flow_value) {
  const auto edges = network.edges();
  const std::uint32_t n = network.vertex_count();
  if (final_residual.vertex_count() != n || final_residual.arc_count() != 2 * edges.size())
    return false;

  std::vector<Capacity> net_out(n + 1, 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto fwd = ResidualGraph::forward_arc(e);
    if (final_residual.residual(fwd) < 0 || final_residual.residual(fwd + 1) < 0) return false;
    if (final_residual.pair_capacity(fwd) != edges[e].capacity) return false;
    const Capacity f = final_residual.edge_flow(e);
    net_out[edges[e].tail] += f;
    net_out[edges[e].head] -= f;
  }
  for (VertexId v = 1; v <= n; ++v) {
    if (v != network.source() && v != network.sink() && net_out[v] != 0) return false;
  }
  if (net_out[network.source()] != flow_value) return false;

  std::vector<bool> source_side(n + 1, false);
  std::vector<VertexId> stack{network.source()};
  source_side[network.source()] = true;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (const auto a : final_residual.arcs_from(u)) {
      const VertexId v = final_residual.head(a);
      if (final_residual.residual(a) > 0 && !source_side[v]) {
        source_side[v] = true;
        stack.push_back(v);
      }
    }
  }
  if (source_side[network.sink()]) return false;

  Capacity cut = 0;
  for (const Edge& e : edges) {
    if (source_side[e.tail] && !source_side[e.head]) cut += e.capacity;
  }
  return cut == flow_value;
}

}  // namespace qbfs
