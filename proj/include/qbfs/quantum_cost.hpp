#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "qbfs/maxflow.hpp"

namespace qbfs {

using Seconds = std::chrono::duration<double>;

/// Growth factor of the QSearch schedule.
inline constexpr double kLambda = 6.0 / 5.0;
/// Fastest gate operation demonstrated to date (6.5 ns).
inline constexpr Seconds kGateTimeRecord{6.5e-9};
inline constexpr double kDefaultEpsilon = 0.1;

/// ceil(log_{6/5}(|L| / (2 sqrt(|L| - 1)))) + 4. Exact for every |L| >= 2.
/// Throws std::domain_error if list_size < 2.
[[nodiscard]] std::uint32_t k_max(std::uint64_t list_size);

/// floor(min((6/5)^k, sqrt(|L|))), exact integer arithmetic.
[[nodiscard]] std::uint64_t m_k(std::uint64_t list_size, std::uint32_t k);

/// ceil(log_3(1/epsilon)), at least 1. Throws std::domain_error unless
/// 0 < epsilon < 1.
[[nodiscard]] std::uint32_t s_max(double epsilon);

/// Angle with sin^2(theta) = marked / list_size.
[[nodiscard]] double grover_angle(std::uint64_t list_size, std::uint64_t marked);

/// Mean of sin^2((2j+1) theta) over j in {0..m}: the success probability of
/// one QSearch attempt with j drawn uniformly. Closed form
/// 1/2 - sin(4(m+1)theta) / (4(m+1) sin 2theta), falling back to the direct
/// sum when |sin 2theta| < 1e-9. Clamped to [0, 1].
[[nodiscard]] double avg_success_probability(std::uint64_t m, double theta);

/// The direct O(m) average, exposed for cross-checking.
[[nodiscard]] double avg_success_probability_direct(std::uint64_t m, double theta);

struct QSearchParams {
  double lambda = kLambda;
  double epsilon = kDefaultEpsilon;
  std::uint64_t list_size = 0;
  std::uint64_t marked = 0;
  double theta = 0.0;
  std::uint32_t s_max = 0;
  std::uint32_t k_max = 0;
};

/// Validates 2 <= list_size, marked <= list_size, 0 < epsilon < 1.
[[nodiscard]] QSearchParams make_qsearch_params(std::uint64_t list_size, std::uint64_t marked,
                                                double epsilon = kDefaultEpsilon);

/// n_Q: expected Grover iterations for one successful QSearch, summed over
/// the first k_max attempts. Requires 2 <= list_size, 1 <= marked <= list_size.
[[nodiscard]] double expected_iterations_one(std::uint64_t list_size, std::uint64_t marked);

struct IterationsAll {
  double value = 0.0;
  /// Set when a summand had |L| - i < 2 and was evaluated with k_max = 4.
  bool guard_applied = false;
};

/// N_Q: sum of n_Q(|L| - i, t - i) for i < t. N_Q(|L|, 0) = 0.
[[nodiscard]] IterationsAll expected_iterations_all_detailed(std::uint64_t list_size,
                                                             std::uint64_t marked);
[[nodiscard]] double expected_iterations_all(std::uint64_t list_size, std::uint64_t marked);

/// Iterations charged to a QSearch that finds nothing: s_max rounds of the
/// full k_max schedule, s_max * sum_k m_k / 2.
[[nodiscard]] double failing_run_iterations(std::uint64_t list_size, double epsilon);

/// Cycle depth of one Grover iteration with one qubit per list element.
struct CycleModel {
  std::uint64_t oracle_cycles = 1;
  std::uint64_t hadamard_cycles = 2;
  /// (|L|-1)-controlled Z as 2(|L|-2) CNOTs plus one CZ, sequential.
  std::uint64_t multicontrolled_z_cycles = 0;
  std::uint64_t total_per_iteration = 0;
};

[[nodiscard]] CycleModel cycles_per_iteration(std::uint64_t list_size);

/// G_Q = 2|L| * N_Q, with one gate per cycle.
[[nodiscard]] double gate_count(std::uint64_t list_size, std::uint64_t marked);

struct CostOptions {
  /// Charge each leveling its final empty search (t = 0) as a failing run.
  bool strict_t0 = false;
  double epsilon = kDefaultEpsilon;
};

struct CostEstimate {
  std::uint64_t list_size = 0;
  std::vector<std::uint64_t> marked_per_layer;
  std::vector<double> n_q_per_layer;
  std::vector<double> N_q_per_layer;
  std::vector<double> gates_per_layer;
  double total_gates = 0.0;
  bool guard_applied = false;
};

/// Prices every recorded layer of a BFS phase with |L| = total_vertices.
[[nodiscard]] CostEstimate phase_cost(const BfsPhaseRecord& record, const CostOptions& options = {});
[[nodiscard]] double phase_gate_count(const BfsPhaseRecord& record,
                                      const CostOptions& options = {});

/// Per-gate time at which the quantum leveling would match the classical
/// one. Empty when gates <= 0.
[[nodiscard]] std::optional<Seconds> required_gate_time(std::chrono::nanoseconds bfs_wall_time,
                                                        double gates);

struct ThresholdVerdict {
  /// False when the required gate time is below the reference.
  bool feasible = false;
  /// reference / tau.
  double margin = 0.0;
};

[[nodiscard]] ThresholdVerdict compare_threshold(Seconds tau, Seconds reference = kGateTimeRecord);

}  // namespace qbfs
