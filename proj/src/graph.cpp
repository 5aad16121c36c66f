#include "qbfs/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "qbfs/rng.hpp"

namespace qbfs {

FlowNetwork::FlowNetwork(std::uint32_t vertex_count, VertexId source, VertexId sink,
                         std::vector<Edge> edges)
    : vertex_count_(vertex_count), source_(source), sink_(sink), edges_(std::move(edges)) {
  if (vertex_count_ < 2) throw std::invalid_argument("flow network needs at least 2 vertices");
  auto in_range = [&](VertexId v) { return v >= 1 && v <= vertex_count_; };
  if (!in_range(source_) || !in_range(sink_))
    throw std::invalid_argument("source or sink out of range");
  if (source_ == sink_) throw std::invalid_argument("source equals sink");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!in_range(e.tail) || !in_range(e.head))
      throw std::invalid_argument("edge " + std::to_string(i) + ": endpoint out of range");
    if (e.tail == e.head)
      throw std::invalid_argument("edge " + std::to_string(i) + ": self-loop");
    if (e.capacity < 0)
      throw std::invalid_argument("edge " + std::to_string(i) + ": negative capacity");
  }
}

ResidualGraph::ResidualGraph(const FlowNetwork& network)
    : vertex_count_(network.vertex_count()) {
  const auto edges = network.edges();
  head_.resize(2 * edges.size());
  residual_.resize(2 * edges.size());
  first_arc_.assign(vertex_count_ + 2, 0);

  for (std::size_t e = 0; e < edges.size(); ++e) {
    head_[2 * e] = edges[e].head;
    head_[2 * e + 1] = edges[e].tail;
    residual_[2 * e] = edges[e].capacity;
    residual_[2 * e + 1] = 0;
    ++first_arc_[edges[e].tail + 1];
    ++first_arc_[edges[e].head + 1];
  }
  std::partial_sum(first_arc_.begin(), first_arc_.end(), first_arc_.begin());

  // Counting sort by tail keeps arcs of each vertex in edge order.
  adjacency_.resize(head_.size());
  std::vector<std::uint32_t> cursor(first_arc_.begin(), first_arc_.end() - 1);
  for (ArcId a = 0; a < head_.size(); ++a) adjacency_[cursor[tail(a)]++] = a;
}

// ---------------------------------------------------------------------------

DimacsError::DimacsError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <typename Int>
Int parse_int(std::string_view field, std::size_t line, const char* what) {
  Int value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw DimacsError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
  return value;
}

}  // namespace

FlowNetwork parse_dimacs(std::string_view text, DimacsOptions options) {
  std::optional<std::uint32_t> vertex_count;
  std::uint64_t declared_arcs = 0;
  std::optional<VertexId> source;
  std::optional<VertexId> sink;
  std::vector<Edge> edges;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto fields = split_fields(line);
    if (fields.empty() || fields[0] == "c") continue;

    const std::string_view kind = fields[0];
    if (kind == "p") {
      if (vertex_count) throw DimacsError(line_no, "duplicate problem line");
      if (fields.size() != 4 || fields[1] != "max")
        throw DimacsError(line_no, "expected 'p max <vertices> <arcs>'");
      const auto v = parse_int<std::int64_t>(fields[2], line_no, "vertex count");
      const auto e = parse_int<std::int64_t>(fields[3], line_no, "arc count");
      if (v < 2 || v > std::numeric_limits<std::uint32_t>::max())
        throw DimacsError(line_no, "vertex count must be at least 2");
      if (e < 0) throw DimacsError(line_no, "negative arc count");
      vertex_count = static_cast<std::uint32_t>(v);
      declared_arcs = static_cast<std::uint64_t>(e);
      edges.reserve(std::min<std::uint64_t>(declared_arcs, 1u << 24));
      continue;
    }

    if (kind != "n" && kind != "a") {
      if (options.permissive) continue;
      throw DimacsError(line_no, "unknown line type '" + std::string(kind) + "'");
    }
    if (!vertex_count) throw DimacsError(line_no, "line before problem line");

    auto vertex = [&](std::string_view field) {
      const auto id = parse_int<std::int64_t>(field, line_no, "vertex id");
      if (id < 1 || id > *vertex_count)
        throw DimacsError(line_no, "vertex id " + std::to_string(id) + " out of range");
      return static_cast<VertexId>(id);
    };

    if (kind == "n") {
      if (fields.size() != 3) throw DimacsError(line_no, "expected 'n <id> s|t'");
      const VertexId id = vertex(fields[1]);
      if (fields[2] == "s") {
        if (source) throw DimacsError(line_no, "duplicate source designator");
        source = id;
      } else if (fields[2] == "t") {
        if (sink) throw DimacsError(line_no, "duplicate sink designator");
        sink = id;
      } else {
        throw DimacsError(line_no, "node designator must be 's' or 't'");
      }
      continue;
    }

    if (fields.size() != 4) throw DimacsError(line_no, "expected 'a <tail> <head> <capacity>'");
    Edge e{vertex(fields[1]), vertex(fields[2]),
           parse_int<Capacity>(fields[3], line_no, "capacity")};
    if (e.capacity < 0) throw DimacsError(line_no, "negative capacity");
    if (e.tail == e.head) throw DimacsError(line_no, "self-loop");
    if (edges.size() == declared_arcs)
      throw DimacsError(line_no, "more arcs than declared (" + std::to_string(declared_arcs) + ")");
    edges.push_back(e);
  }

  const std::size_t last = std::max<std::size_t>(line_no, 1);
  if (!vertex_count) throw DimacsError(last, "missing problem line");
  if (!source) throw DimacsError(last, "missing source designator");
  if (!sink) throw DimacsError(last, "missing sink designator");
  if (*source == *sink) throw DimacsError(last, "source equals sink");
  if (edges.size() != declared_arcs)
    throw DimacsError(last, "arc count mismatch: header declares " + std::to_string(declared_arcs) +
                                ", found " + std::to_string(edges.size()));
  return FlowNetwork(*vertex_count, *source, *sink, std::move(edges));
}

FlowNetwork read_dimacs_file(const std::string& path, DimacsOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dimacs(buffer.str(), options);
}

std::string write_dimacs(const FlowNetwork& network) {
  std::string out;
  out.reserve(32 + 24 * network.edge_count());
  out += "p max " + std::to_string(network.vertex_count()) + ' ' +
         std::to_string(network.edge_count()) + '\n';
  out += "n " + std::to_string(network.source()) + " s\n";
  out += "n " + std::to_string(network.sink()) + " t\n";
  for (const Edge& e : network.edges()) {
    out += "a " + std::to_string(e.tail) + ' ' + std::to_string(e.head) + ' ' +
           std::to_string(e.capacity) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

FlowNetwork generate_random_network(std::uint32_t n, std::uint32_t m, Capacity cmax,
                                    std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random network needs n >= 2");
  if (m < 1) throw std::invalid_argument("random network needs m >= 1 for the s-t chain");
  if (cmax < 1) throw std::invalid_argument("random network needs cmax >= 1");

  SplitMix64 rng(seed);
  const VertexId source = 1;
  const VertexId sink = n;
  auto capacity = [&] { return 1 + static_cast<Capacity>(rng.below(static_cast<std::uint64_t>(cmax))); };

  std::vector<Edge> edges;
  edges.reserve(m);

  // Chain through a random subset of the interior vertices, in random order.
  const std::uint32_t interior = n - 2;
  const std::uint32_t max_hops = std::min(interior, m - 1);
  const auto hops = static_cast<std::uint32_t>(rng.below(std::uint64_t{max_hops} + 1));
  std::vector<VertexId> pool(interior);
  std::iota(pool.begin(), pool.end(), VertexId{2});
  for (std::uint32_t i = 0; i < hops; ++i) {
    const auto j = i + static_cast<std::uint32_t>(rng.below(interior - i));
    std::swap(pool[i], pool[j]);
  }
  VertexId prev = source;
  for (std::uint32_t i = 0; i < hops; ++i) {
    edges.push_back({prev, pool[i], capacity()});
    prev = pool[i];
  }
  edges.push_back({prev, sink, capacity()});

  // Tails exclude the sink, heads exclude the source.
  while (edges.size() < m) {
    VertexId tail = 1 + static_cast<VertexId>(rng.below(n - 1));
    VertexId head = 2 + static_cast<VertexId>(rng.below(n - 1));
    if (tail == head) continue;
    edges.push_back({tail, head, capacity()});
  }
  return FlowNetwork(n, source, sink, std::move(edges));
}

FlowNetwork generate_grid_network(std::uint32_t rows, std::uint32_t cols, Capacity cmax,
                                  std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs rows, cols >= 1");
  if (cmax < 1) throw std::invalid_argument("grid needs cmax >= 1");

  SplitMix64 rng(seed);
  auto capacity = [&] { return 1 + static_cast<Capacity>(rng.below(static_cast<std::uint64_t>(cmax))); };
  auto cell = [cols](std::uint32_t r, std::uint32_t c) -> VertexId { return 2 + r * cols + c; };

  const VertexId source = 1;
  const VertexId sink = rows * cols + 2;
  std::vector<Edge> edges;

  for (std::uint32_t r = 0; r < rows; ++r) edges.push_back({source, cell(r, 0), capacity()});
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({cell(r, c), cell(r, c + 1), capacity()});
      if (r + 1 < rows) {
        edges.push_back({cell(r, c), cell(r + 1, c), capacity()});
        edges.push_back({cell(r + 1, c), cell(r, c), capacity()});
      }
    }
  }
  for (std::uint32_t r = 0; r < rows; ++r) edges.push_back({cell(r, cols - 1), sink, capacity()});
  return FlowNetwork(sink, source, sink, std::move(edges));
}

}  // namespace qbfs
