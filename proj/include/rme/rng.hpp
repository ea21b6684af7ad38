#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace rme {

/// SplitMix64 finalizer. Used to derive substream and repetition seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Random stream "mt64-v1": std::mt19937_64 seeded with mix64(seed), with
/// uniform and normal conversions written out here so that draws do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  static constexpr const char* kName = "mt64-v1";

  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Substream for item `index` of a run seeded with `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(seed ^ index);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on the closed interval [0, 1] with 53-bit resolution.
  double unit_closed() {
    constexpr double kScale = 1.0 / static_cast<double>((1ULL << 53) - 1);
    return static_cast<double>(next() >> 11) * kScale;
  }

  /// Uniform on the closed interval [low, high].
  double uniform(double low, double high) {
    return std::lerp(low, high, unit_closed());
  }

  /// Standard normal variate (Box-Muller, both draws consumed per call).
  double standard_normal() {
    constexpr double kScale = 1.0 / static_cast<double>(1ULL << 53);
    // u1 in (0, 1], u2 in [0, 1)
    const double u1 = (static_cast<double>(next() >> 11) + 1.0) * kScale;
    const double u2 = static_cast<double>(next() >> 11) * kScale;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double sd) { return mean + sd * standard_normal(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rme
