#pragma once

#include <cstdint>
#include <vector>

#include "qbfs/graph.hpp"
#include "qbfs/maxflow.hpp"
#include "qbfs/quantum_cost.hpp"
#include "qbfs/rng.hpp"

namespace qbfs {

/// Probability of measuring a marked item after j Grover iterations.
[[nodiscard]] double grover_success_probability(std::uint64_t j, double theta);

struct TrialOutcome {
  /// Sum of the sampled j over all attempts.
  std::uint64_t grover_iterations_used = 0;
  /// Sum of j over the attempts of the first round (k = 1..k_max) only.
  std::uint64_t first_round_iterations = 0;
  std::uint32_t attempts = 0;
  bool succeeded = false;

  friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

/// One run of the QSearch schedule: m starts at 6/5 and grows by 6/5 per
/// failed attempt up to sqrt(|L|), never reset; each of s_max rounds makes
/// k_max attempts. Measurements are Bernoulli draws with the exact Grover
/// success probability.
[[nodiscard]] TrialOutcome simulate_qsearch(std::uint64_t list_size, std::uint64_t marked,
                                            double epsilon, SplitMix64& rng);

/// Chan/Welford accumulator; merge is exact for count and mean.
struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept;
  void merge(const RunningStats& other) noexcept;
  [[nodiscard]] double variance() const noexcept;
  [[nodiscard]] double standard_error() const noexcept;
};

struct McEstimate {
  /// Mean first-round Grover iterations over all trials (estimates n_Q / N_Q).
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  /// Fraction of trials in which every search succeeded within s_max rounds.
  double success_rate = 0.0;
  /// Mean iterations of the full schedule over successful trials.
  double mean_full_schedule = 0.0;
  std::uint64_t seed = 0;
};

struct McOptions {
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

/// Trial i draws from SplitMix64::stream(seed, i); results do not depend on
/// the worker count. Throws std::domain_error unless marked >= 1 and
/// trials >= 1000.
[[nodiscard]] McEstimate mc_expected_iterations(std::uint64_t list_size, std::uint64_t marked,
                                                double epsilon, std::uint64_t trials,
                                                std::uint64_t seed, McOptions options = {});

/// Sequential removal: search (|L|, t), then (|L|-1, t-1), ... down to one
/// marked item, summing iterations. Estimates N_Q.
[[nodiscard]] McEstimate mc_expected_iterations_all(std::uint64_t list_size,
                                                    std::uint64_t marked, double epsilon,
                                                    std::uint64_t trials, std::uint64_t seed,
                                                    McOptions options = {});

struct QbfsEmulation {
  LevelAssignment levels;
  /// Vertices in the order they were found, source first.
  std::vector<VertexId> discovery_order;
};

/// Queue-driven leveling where each dequeued vertex finds its undiscovered
/// positive-residual neighbours one at a time, each drawn uniformly from the
/// remaining ones (the measurement distribution of a successful search).
[[nodiscard]] QbfsEmulation emulate_qbfs_levels(const ResidualGraph& residual, VertexId source,
                                                SplitMix64& rng);
[[nodiscard]] QbfsEmulation emulate_qbfs_levels(const FlowNetwork& network, SplitMix64& rng);

}  // namespace qbfs
