#include "qbfs/harness.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "qbfs/rng.hpp"

namespace qbfs {
namespace {

bool same_structure(const BfsPhaseRecord& a, const BfsPhaseRecord& b) {
  return a.phase_index == b.phase_index && a.total_vertices == b.total_vertices &&
         a.layer_sizes == b.layer_sizes && a.sink_reached == b.sink_reached &&
         a.sink_level == b.sink_level;
}

std::chrono::nanoseconds median(std::vector<std::chrono::nanoseconds> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return (samples[mid - 1] + samples[mid]) / 2;
}

template <typename T>
T median_of(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

}  // namespace

std::string to_string(Aggregation a) {
  switch (a) {
    case Aggregation::per_phase: return "per_phase";
    case Aggregation::per_instance: return "per_instance";
    case Aggregation::both: return "both";
  }
  return "both";
}

Aggregation parse_aggregation(const std::string& name) {
  if (name == "per_phase") return Aggregation::per_phase;
  if (name == "per_instance") return Aggregation::per_instance;
  if (name == "both") return Aggregation::both;
  throw std::invalid_argument("unknown aggregation '" + name + "'");
}

void validate(const RunConfig& config) {
  if (config.timing_repetitions < 1) throw std::invalid_argument("timing_repetitions must be >= 1");
  if (!(config.threshold.count() > 0)) throw std::invalid_argument("threshold must be positive");
  if (config.parallel_workers < 1) throw std::invalid_argument("parallel_workers must be >= 1");
  (void)s_max(config.epsilon);
}

InstanceResult run_instance(const FlowNetwork& network, const RunConfig& config,
                            std::string instance_id, const Clock& clock) {
  validate(config);
  if (config.warmup) (void)dinic_max_flow(network, clock);

  std::vector<MaxFlowResult> runs;
  runs.reserve(config.timing_repetitions);
  for (std::uint32_t r = 0; r < config.timing_repetitions; ++r) {
    runs.push_back(dinic_max_flow(network, clock));
    const auto& first = runs.front();
    const auto& last = runs.back();
    bool aligned = last.flow_value == first.flow_value && last.phases.size() == first.phases.size();
    for (std::size_t p = 0; aligned && p < first.phases.size(); ++p)
      aligned = same_structure(first.phases[p], last.phases[p]);
    if (!aligned)
      throw HarnessError(instance_id + ": phase structure differs between repetitions");
  }

  InstanceResult out;
  out.instance_id = std::move(instance_id);
  out.vertex_count = network.vertex_count();
  out.edge_count = network.edge_count();
  out.flow_value = runs.front().flow_value;

  const CostOptions cost{config.strict_t0_cost, config.epsilon};
  const std::size_t phase_count = runs.front().phases.size();
  for (std::size_t p = 0; p < phase_count; ++p) {
    std::vector<std::chrono::nanoseconds> times;
    for (const auto& run : runs) times.push_back(run.phases[p].bfs_wall_time);

    PhaseResult phase;
    phase.record = runs.front().phases[p];
    phase.record.bfs_wall_time = median(std::move(times));
    phase.priced = phase.record.sink_reached || config.include_terminal_bfs;
    if (phase.priced) {
      const CostEstimate est = phase_cost(phase.record, cost);
      out.guard_applied = out.guard_applied || est.guard_applied;
      phase.gates = est.total_gates;
      phase.tau = required_gate_time(phase.record.bfs_wall_time, phase.gates);
      if (phase.tau) phase.verdict = compare_threshold(*phase.tau, config.threshold);
      out.per_phase_gates.push_back(phase.gates);
      out.per_phase_tau.push_back(phase.tau);
      out.total_bfs_time += phase.record.bfs_wall_time;
      out.total_gates += phase.gates;
    }
    out.phases.push_back(std::move(phase));
  }

  out.aggregate_tau = required_gate_time(out.total_bfs_time, out.total_gates);
  if (out.aggregate_tau) out.verdict = compare_threshold(*out.aggregate_tau, config.threshold);
  return out;
}

DirectoryRun run_directory(const std::filesystem::path& dir, const std::string& pattern,
                           const RunConfig& config) {
  validate(config);
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) throw HarnessError("cannot read directory " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> files;
  for (const auto& entry : it) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (fnmatch(pattern.c_str(), name.c_str(), 0) == 0) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  struct Slot {
    std::optional<InstanceResult> result;
    std::optional<SkippedInstance> skipped;
  };
  std::vector<Slot> slots(files.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const std::string id = files[i].filename().string();
      try {
        const FlowNetwork network = read_dimacs_file(files[i].string());
        slots[i].result = run_instance(network, config, id);
      } catch (const std::exception& e) {
        slots[i].skipped = SkippedInstance{id, e.what()};
      }
    }
  };

  const auto workers = static_cast<unsigned>(
      std::clamp<std::size_t>(config.parallel_workers, 1, std::max<std::size_t>(files.size(), 1)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  DirectoryRun run;
  for (auto& slot : slots) {
    if (slot.result) run.results.push_back(std::move(*slot.result));
    if (slot.skipped) run.skipped.push_back(std::move(*slot.skipped));
  }
  auto by_id = [](const auto& a, const auto& b) { return a.instance_id < b.instance_id; };
  std::sort(run.results.begin(), run.results.end(), by_id);
  std::sort(run.skipped.begin(), run.skipped.end(), by_id);
  return run;
}

Summary summarize(const std::vector<InstanceResult>& results) {
  if (results.empty()) throw std::invalid_argument("summarize: no results");
  Summary s;
  s.instance_count = results.size();
  s.min_vertices = results.front().vertex_count;
  s.max_vertices = results.front().vertex_count;

  std::vector<double> taus;
  for (const auto& r : results) {
    s.min_vertices = std::min(s.min_vertices, r.vertex_count);
    s.max_vertices = std::max(s.max_vertices, r.vertex_count);
    if (r.aggregate_tau) taus.push_back(r.aggregate_tau->count());
    if (r.verdict && !r.verdict->feasible) ++s.infeasible_count;
    for (const auto& tau : r.per_phase_tau) {
      if (!tau) continue;
      if (!s.min_phase_tau || *tau < *s.min_phase_tau) s.min_phase_tau = *tau;
      if (!s.max_phase_tau || *tau > *s.max_phase_tau) s.max_phase_tau = *tau;
    }
  }
  s.priced_instance_count = taus.size();
  if (!taus.empty()) {
    s.min_tau = Seconds(*std::min_element(taus.begin(), taus.end()));
    s.max_tau = Seconds(*std::max_element(taus.begin(), taus.end()));
    s.median_tau = Seconds(median_of(std::move(taus)));
  }
  return s;
}

std::vector<CorpusEntry> make_benchmark_corpus(std::size_t count, std::uint32_t min_vertices,
                                               std::uint32_t max_vertices, std::uint64_t seed) {
  if (count == 0) return {};
  if (min_vertices < 4 || max_vertices < min_vertices)
    throw std::invalid_argument("corpus needs 4 <= min_vertices <= max_vertices");

  std::vector<CorpusEntry> corpus;
  corpus.reserve(count);
  const double lo = std::log(static_cast<double>(min_vertices));
  const double hi = std::log(static_cast<double>(max_vertices));
  for (std::size_t i = 0; i < count; ++i) {
    const double frac = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    const auto n = static_cast<std::uint32_t>(std::lround(std::exp(lo + frac * (hi - lo))));
    const std::uint64_t instance_seed = SplitMix64::stream(seed, i)();
    char id[64];
    if (i % 2 == 0) {
      std::snprintf(id, sizeof id, "%04zu_random_n%u.max", i, n);
      corpus.push_back({id, generate_random_network(n, 4 * n, 100, instance_seed)});
    } else {
      // rows * cols + 2 vertices, as close to n as the shape allows.
      const auto cells = std::max<std::uint32_t>(n - 2, 1);
      const auto rows = std::max<std::uint32_t>(
          1, static_cast<std::uint32_t>(std::lround(std::sqrt(static_cast<double>(cells)))));
      const auto cols = std::max<std::uint32_t>(1, cells / rows);
      std::snprintf(id, sizeof id, "%04zu_grid_%ux%u.max", i, rows, cols);
      corpus.push_back({id, generate_grid_network(rows, cols, 100, instance_seed)});
    }
  }
  return corpus;
}

}  // namespace qbfs
