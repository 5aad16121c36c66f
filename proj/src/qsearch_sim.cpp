#include "qbfs/qsearch_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qbfs {
namespace {

constexpr std::uint64_t kTrialsPerBlock = 2048;

struct Schedule {
  std::uint64_t list_size;
  double theta;
  bool any_marked;
  std::uint32_t rounds;
  std::uint32_t attempts_per_round;
};

Schedule make_schedule(std::uint64_t list_size, std::uint64_t marked, double epsilon) {
  if (list_size < 1 || marked > list_size) throw std::domain_error("need 0 <= t <= |L|, |L| >= 1");
  // |L| = 1 only arises as the last removal step; k_max is clamped to 4 there.
  const std::uint32_t kmax = list_size >= 2 ? k_max(list_size) : 4;
  return {list_size, marked == 0 ? 0.0 : grover_angle(list_size, marked), marked > 0,
          s_max(epsilon), kmax};
}

TrialOutcome run_schedule(const Schedule& schedule, SplitMix64& rng) {
  TrialOutcome out;
  // m is never reset, so the attempt counter runs across rounds.
  std::uint32_t growth = 0;
  for (std::uint32_t s = 1; s <= schedule.rounds; ++s) {
    for (std::uint32_t k = 1; k <= schedule.attempts_per_round; ++k) {
      ++growth;
      const std::uint64_t m = m_k(schedule.list_size, growth);
      const std::uint64_t j = rng.below(m + 1);
      out.grover_iterations_used += j;
      if (s == 1) out.first_round_iterations += j;
      ++out.attempts;
      const double p = schedule.any_marked ? grover_success_probability(j, schedule.theta) : 0.0;
      if (rng.uniform01() < p) {
        out.succeeded = true;
        return out;
      }
    }
  }
  return out;
}

struct BlockResult {
  RunningStats first_round;
  RunningStats full_on_success;
  std::uint64_t successes = 0;
};

template <typename TrialFn>
McEstimate run_trials(std::uint64_t trials, std::uint64_t seed, McOptions options,
                      TrialFn&& trial) {
  if (trials < 1000) throw std::domain_error("Monte Carlo estimate needs at least 1000 trials");
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<BlockResult> results(blocks);

  auto work = [&](std::uint64_t first_block, std::uint64_t stride) {
    for (std::uint64_t b = first_block; b < blocks; b += stride) {
      BlockResult& r = results[b];
      const std::uint64_t end = std::min(trials, (b + 1) * kTrialsPerBlock);
      for (std::uint64_t i = b * kTrialsPerBlock; i < end; ++i) {
        SplitMix64 rng = SplitMix64::stream(seed, i);
        const TrialOutcome o = trial(rng);
        r.first_round.add(static_cast<double>(o.first_round_iterations));
        if (o.succeeded) {
          ++r.successes;
          r.full_on_success.add(static_cast<double>(o.grover_iterations_used));
        }
      }
    }
  };

  unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, blocks));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  BlockResult total;
  for (const auto& r : results) {
    total.first_round.merge(r.first_round);
    total.full_on_success.merge(r.full_on_success);
    total.successes += r.successes;
  }
  McEstimate est;
  est.mean = total.first_round.mean;
  est.standard_error = total.first_round.standard_error();
  est.trials = trials;
  est.success_rate = static_cast<double>(total.successes) / static_cast<double>(trials);
  est.mean_full_schedule = total.full_on_success.mean;
  est.seed = seed;
  return est;
}

}  // namespace

double grover_success_probability(std::uint64_t j, double theta) {
  const double s = std::sin(static_cast<double>(2 * j + 1) * theta);
  return s * s;
}

TrialOutcome simulate_qsearch(std::uint64_t list_size, std::uint64_t marked, double epsilon,
                              SplitMix64& rng) {
  if (list_size < 2) throw std::domain_error("QSearch requires |L| >= 2");
  return run_schedule(make_schedule(list_size, marked, epsilon), rng);
}

void RunningStats::add(double x) noexcept {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void RunningStats::merge(const RunningStats& other) noexcept {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double n_a = static_cast<double>(count);
  const double n_b = static_cast<double>(other.count);
  const double delta = other.mean - mean;
  const double n = n_a + n_b;
  mean += delta * n_b / n;
  m2 += other.m2 + delta * delta * n_a * n_b / n;
  count += other.count;
}

double RunningStats::variance() const noexcept {
  return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
}

double RunningStats::standard_error() const noexcept {
  return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

McEstimate mc_expected_iterations(std::uint64_t list_size, std::uint64_t marked, double epsilon,
                                  std::uint64_t trials, std::uint64_t seed, McOptions options) {
  if (marked < 1) throw std::domain_error("Monte Carlo estimate needs t >= 1");
  if (list_size < 2) throw std::domain_error("QSearch requires |L| >= 2");
  const Schedule schedule = make_schedule(list_size, marked, epsilon);
  return run_trials(trials, seed, options,
                    [&](SplitMix64& rng) { return run_schedule(schedule, rng); });
}

McEstimate mc_expected_iterations_all(std::uint64_t list_size, std::uint64_t marked,
                                      double epsilon, std::uint64_t trials, std::uint64_t seed,
                                      McOptions options) {
  if (marked < 1) throw std::domain_error("Monte Carlo estimate needs t >= 1");
  if (list_size < 2) throw std::domain_error("QSearch requires |L| >= 2");
  std::vector<Schedule> stages;
  stages.reserve(marked);
  for (std::uint64_t i = 0; i < marked; ++i)
    stages.push_back(make_schedule(list_size - i, marked - i, epsilon));

  return run_trials(trials, seed, options, [&](SplitMix64& rng) {
    TrialOutcome total;
    total.succeeded = true;
    for (const Schedule& stage : stages) {
      const TrialOutcome o = run_schedule(stage, rng);
      total.grover_iterations_used += o.grover_iterations_used;
      total.first_round_iterations += o.first_round_iterations;
      total.attempts += o.attempts;
      total.succeeded = total.succeeded && o.succeeded;
    }
    return total;
  });
}

QbfsEmulation emulate_qbfs_levels(const ResidualGraph& residual, VertexId source,
                                  SplitMix64& rng) {
  QbfsEmulation out{LevelAssignment(residual.vertex_count()), {}};
  out.levels.set(source, 0);
  out.discovery_order.push_back(source);

  std::vector<VertexId> marked;
  std::vector<bool> is_marked(residual.vertex_count() + 1, false);
  for (std::size_t head = 0; head < out.discovery_order.size(); ++head) {
    const VertexId x = out.discovery_order[head];
    marked.clear();
    for (const auto a : residual.arcs_from(x)) {
      const VertexId y = residual.head(a);
      if (residual.residual(a) > 0 && !out.levels.reached(y) && !is_marked[y]) {
        is_marked[y] = true;
        marked.push_back(y);
      }
    }
    while (!marked.empty()) {
      const auto pick = static_cast<std::size_t>(rng.below(marked.size()));
      const VertexId y = marked[pick];
      marked[pick] = marked.back();
      marked.pop_back();
      is_marked[y] = false;
      out.levels.set(y, out.levels[x] + 1);
      out.discovery_order.push_back(y);
    }
  }
  return out;
}

QbfsEmulation emulate_qbfs_levels(const FlowNetwork& network, SplitMix64& rng) {
  return emulate_qbfs_levels(build_residual(network), network.source(), rng);
}

}  // namespace qbfs
