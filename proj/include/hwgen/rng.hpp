#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hwgen {

/// Counter-based deterministic stream.
///
/// A stream is a 64-bit key derived hierarchically from (seed, page, glyph)
/// with the SplitMix64 finalizer; draw i is splitmix64(key + (i+1) * gamma).
/// Any stream can be re-derived from its key path alone, so pages and glyphs
/// can be generated in any order or thread and still see the same numbers.
/// Gaussians use Box-Muller on two consecutive draws (no caching).
class Rng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit constexpr Rng(std::uint64_t key = 0) : key_(key) {}
  constexpr Rng(std::uint64_t seed, std::uint64_t page, std::uint64_t glyph)
      : Rng(Rng(seed).derive(page).derive(glyph).key_) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Child stream; independent of how many draws the parent has made.
  constexpr Rng derive(std::uint64_t index) const {
    return Rng(mix(key_ ^ mix(index + kGamma)));
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t draws() const { return counter_; }

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return mix(key_ + counter_ * kGamma);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    const double u = uniform();
    return lo == hi ? lo : lo + u * (hi - lo);
  }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Lemire's multiply-shift; bias is < n / 2^64 and irrelevant here.
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  double normal(double mean, double stddev) {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + stddev * z;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Fixed child-stream indices so unrelated consumers never share draws.
namespace streams {
inline constexpr std::uint64_t kStyle = 0x5354594C45ULL;
inline constexpr std::uint64_t kLayout = 0x4C41594FULL;
inline constexpr std::uint64_t kDrift = 0x4452494654ULL;
inline constexpr std::uint64_t kNoise = 0x4E4F495345ULL;
inline constexpr std::uint64_t kPairs = 0x5041495253ULL;
}  // namespace streams

}  // namespace hwgen
