#pragma once

#include <cstdint>
#include <limits>

namespace qbfs {

/// SplitMix64 (Steele, Lea, Flood 2014). Output is identical on every
/// platform, which std:: distributions do not guarantee.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kVersion = 1;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Independent stream for sub-task `index`; depends only on (seed, index).
  [[nodiscard]] static constexpr SplitMix64 stream(std::uint64_t seed,
                                                   std::uint64_t index) noexcept {
    SplitMix64 mixer(seed ^ (index * 0xD1B54A32D192ED03ull));
    mixer();
    return SplitMix64(mixer());
  }

  /// Uniform double in [0, 1).
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Multiply-shift; bias is below 2^-32 for
  /// the bounds used here.
  std::uint64_t below(std::uint64_t bound) noexcept {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>((*this)()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace qbfs
