#include "qbfs/quantum_cost.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace qbfs {
namespace {

using boost::multiprecision::cpp_int;

constexpr std::uint32_t kPowTableSize = 160;

// floor((6/5)^k); saturates once the value no longer fits.
const std::array<std::uint64_t, kPowTableSize>& floor_lambda_powers() {
  static const auto table = [] {
    std::array<std::uint64_t, kPowTableSize> t{};
    cpp_int num = 1;
    cpp_int den = 1;
    for (std::uint32_t k = 0; k < kPowTableSize; ++k) {
      const cpp_int q = num / den;
      t[k] = q > cpp_int(std::numeric_limits<std::uint64_t>::max())
                 ? std::numeric_limits<std::uint64_t>::max()
                 : static_cast<std::uint64_t>(q);
      num *= 6;
      den *= 5;
    }
    return t;
  }();
  return table;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// (6/5)^k >= |L| / (2 sqrt(|L|-1))  <=>  36^k * 4(|L|-1) >= 25^k * |L|^2
bool lambda_power_reaches(std::uint64_t list_size, std::uint32_t k) {
  cpp_int lhs = 4 * cpp_int(list_size - 1);
  cpp_int rhs = cpp_int(list_size) * list_size;
  for (std::uint32_t i = 0; i < k; ++i) {
    lhs *= 36;
    rhs *= 25;
  }
  return lhs >= rhs;
}

std::uint32_t k_star(std::uint64_t list_size) {
  const long double arg = static_cast<long double>(list_size) /
                          (2.0L * std::sqrt(static_cast<long double>(list_size - 1)));
  const long double x = std::log(arg) / std::log(6.0L / 5.0L);
  const long double nearest = std::nearbyint(x);
  if (std::fabs(x - nearest) > 1e-9L) return static_cast<std::uint32_t>(std::ceil(x));
  auto k = static_cast<std::uint32_t>(std::max(0.0L, nearest - 1.0L));
  while (!lambda_power_reaches(list_size, k)) ++k;
  return k;
}

// sin(q*pi/4 + y) with the multiple of pi/4 taken exactly.
double sin_shifted(std::uint64_t q, double y) {
  constexpr double h = std::numbers::sqrt2 / 2.0;
  static constexpr std::array<double, 8> sin_q{0.0, h, 1.0, h, 0.0, -h, -1.0, -h};
  static constexpr std::array<double, 8> cos_q{1.0, h, 0.0, -h, -1.0, -h, 0.0, h};
  const auto i = q % 8;
  if (y == 0.0) return sin_q[i];
  return sin_q[i] * std::cos(y) + cos_q[i] * std::sin(y);
}

// theta = q*pi/4 + d with q the nearest multiple.
struct ReducedAngle {
  std::uint64_t q;
  double d;
};

ReducedAngle reduce(double theta) {
  constexpr double quarter_pi = std::numbers::pi / 4.0;
  const double q = std::nearbyint(theta / quarter_pi);
  return {static_cast<std::uint64_t>(std::max(q, 0.0)), theta - std::max(q, 0.0) * quarter_pi};
}

double n_q_impl(std::uint64_t list_size, std::uint64_t marked, std::uint32_t kmax) {
  const double theta = grover_angle(list_size, marked);
  double expected = 0.0;
  double survive = 1.0;
  for (std::uint32_t k = 1; k <= kmax; ++k) {
    const auto m = static_cast<double>(m_k(list_size, k));
    expected += survive * m / 2.0;
    survive *= 1.0 - avg_success_probability(m_k(list_size, k), theta);
    if (survive == 0.0) break;
  }
  return expected;
}

}  // namespace

std::uint32_t k_max(std::uint64_t list_size) {
  if (list_size < 2) throw std::domain_error("k_max requires |L| >= 2");
  return k_star(list_size) + 4;
}

std::uint64_t m_k(std::uint64_t list_size, std::uint32_t k) {
  const auto& powers = floor_lambda_powers();
  const std::uint64_t cap = isqrt(list_size);
  if (k >= kPowTableSize) return cap;
  return std::min(powers[k], cap);
}

std::uint32_t s_max(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon must lie in (0, 1)");
  const double rounds = std::log(1.0 / epsilon) / std::log(3.0);
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(rounds - 1e-12)));
}

double grover_angle(std::uint64_t list_size, std::uint64_t marked) {
  if (list_size == 0 || marked > list_size) throw std::domain_error("need 0 <= t <= |L|, |L| > 0");
  if (marked == list_size) return std::numbers::pi / 2.0;
  return std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(list_size)));
}

double avg_success_probability_direct(std::uint64_t m, double theta) {
  const auto [q, d] = reduce(theta);
  double sum = 0.0;
  for (std::uint64_t j = 0; j <= m; ++j) {
    const double s = sin_shifted((2 * j + 1) * q, static_cast<double>(2 * j + 1) * d);
    sum += s * s;
  }
  return std::clamp(sum / static_cast<double>(m + 1), 0.0, 1.0);
}

double avg_success_probability(std::uint64_t m, double theta) {
  const auto [q, d] = reduce(theta);
  const double sin_2theta = sin_shifted(2 * q, 2.0 * d);
  if (std::fabs(sin_2theta) < 1e-9) return avg_success_probability_direct(m, theta);
  const double terms = static_cast<double>(m + 1);
  const double numer = sin_shifted(4 * (m + 1) * q, 4.0 * terms * d);
  return std::clamp(0.5 - numer / (4.0 * terms * sin_2theta), 0.0, 1.0);
}

QSearchParams make_qsearch_params(std::uint64_t list_size, std::uint64_t marked, double epsilon) {
  if (list_size < 2) throw std::domain_error("QSearch requires |L| >= 2");
  if (marked > list_size) throw std::domain_error("QSearch requires t <= |L|");
  QSearchParams p;
  p.epsilon = epsilon;
  p.list_size = list_size;
  p.marked = marked;
  p.theta = marked == 0 ? 0.0 : grover_angle(list_size, marked);
  p.s_max = s_max(epsilon);
  p.k_max = k_max(list_size);
  return p;
}

double expected_iterations_one(std::uint64_t list_size, std::uint64_t marked) {
  if (list_size < 2) throw std::domain_error("n_Q requires |L| >= 2");
  if (marked < 1 || marked > list_size) throw std::domain_error("n_Q requires 1 <= t <= |L|");
  return n_q_impl(list_size, marked, k_max(list_size));
}

IterationsAll expected_iterations_all_detailed(std::uint64_t list_size, std::uint64_t marked) {
  if (list_size < 2) throw std::domain_error("N_Q requires |L| >= 2");
  if (marked > list_size) throw std::domain_error("N_Q requires t <= |L|");
  IterationsAll out;
  for (std::uint64_t i = 0; i < marked; ++i) {
    const std::uint64_t size = list_size - i;
    if (size < 2) {
      out.guard_applied = true;
      out.value += n_q_impl(size, marked - i, 4);
    } else {
      out.value += n_q_impl(size, marked - i, k_max(size));
    }
  }
  return out;
}

double expected_iterations_all(std::uint64_t list_size, std::uint64_t marked) {
  return expected_iterations_all_detailed(list_size, marked).value;
}

double failing_run_iterations(std::uint64_t list_size, double epsilon) {
  double round = 0.0;
  const std::uint32_t kmax = k_max(list_size);
  for (std::uint32_t k = 1; k <= kmax; ++k) round += static_cast<double>(m_k(list_size, k)) / 2.0;
  return static_cast<double>(s_max(epsilon)) * round;
}

CycleModel cycles_per_iteration(std::uint64_t list_size) {
  if (list_size < 2) throw std::domain_error("cycle model requires |L| >= 2");
  CycleModel model;
  model.multicontrolled_z_cycles = 2 * list_size - 3;
  model.total_per_iteration =
      model.oracle_cycles + model.hadamard_cycles + model.multicontrolled_z_cycles;
  return model;
}

double gate_count(std::uint64_t list_size, std::uint64_t marked) {
  const double cycles = static_cast<double>(cycles_per_iteration(list_size).total_per_iteration);
  return cycles * expected_iterations_all(list_size, marked);
}

CostEstimate phase_cost(const BfsPhaseRecord& record, const CostOptions& options) {
  CostEstimate est;
  est.list_size = record.total_vertices;
  if (record.layer_sizes.empty() && !options.strict_t0) return est;

  const double cycles =
      static_cast<double>(cycles_per_iteration(est.list_size).total_per_iteration);
  auto add_layer = [&](std::uint64_t t, double n_q, double N_q) {
    est.marked_per_layer.push_back(t);
    est.n_q_per_layer.push_back(n_q);
    est.N_q_per_layer.push_back(N_q);
    est.gates_per_layer.push_back(cycles * N_q);
    est.total_gates += cycles * N_q;
  };

  for (const std::uint32_t t : record.layer_sizes) {
    const auto all = expected_iterations_all_detailed(est.list_size, t);
    est.guard_applied = est.guard_applied || all.guard_applied;
    add_layer(t, expected_iterations_one(est.list_size, t), all.value);
  }
  if (options.strict_t0) {
    const double failing = failing_run_iterations(est.list_size, options.epsilon);
    add_layer(0, failing, failing);
  }
  return est;
}

double phase_gate_count(const BfsPhaseRecord& record, const CostOptions& options) {
  return phase_cost(record, options).total_gates;
}

std::optional<Seconds> required_gate_time(std::chrono::nanoseconds bfs_wall_time, double gates) {
  if (!(gates > 0.0) || bfs_wall_time.count() <= 0) return std::nullopt;
  return Seconds(static_cast<double>(bfs_wall_time.count()) * 1e-9 / gates);
}

ThresholdVerdict compare_threshold(Seconds tau, Seconds reference) {
  return {tau >= reference, reference / tau};
}

}  // namespace qbfs
