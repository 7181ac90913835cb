#pragma once

// Platform-independent random streams.
//
// All randomness in the library goes through these generators so results are
// bit-reproducible across compilers and standard libraries:
//   * SplitMix64 (Steele, Lea, Flood 2014) for seed derivation and as a
//     counter-based generator: value i of key k is mix64(k + (i + 1) * gamma).
//   * xoshiro256** (Blackman, Vigna 2018) for sequential streams.
// Uniform doubles use the top 53 bits; exponentials use inversion
// -log1p(-u) / rate. std:: distributions are deliberately not used.

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace qroute {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Maps 64 random bits to a double in [0, 1).
[[nodiscard]] constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Derives an independent 64-bit key from a parent key and a label/index.
[[nodiscard]] std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) noexcept;
[[nodiscard]] std::uint64_t derive_key(std::uint64_t parent, std::string_view label) noexcept;

/// Counter-based stream: element i depends only on (key, i), so any partition
/// of the index range across threads yields identical values.
class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key) noexcept : key_(key) {}

  [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t i) const noexcept {
    return mix64(key_ + (i + 1) * kGoldenGamma);
  }
  [[nodiscard]] constexpr double uniform(std::uint64_t i) const noexcept {
    return to_unit(bits(i));
  }
  [[nodiscard]] double exponential(std::uint64_t i, double rate) const noexcept {
    return -std::log1p(-uniform(i)) / rate;
  }

 private:
  std::uint64_t key_;
};

/// xoshiro256** sequential generator, state seeded through SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  double uniform() noexcept { return to_unit(next()); }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  double exponential(double rate) noexcept { return -std::log1p(-uniform()) / rate; }
  bool bernoulli(double p) noexcept { return uniform() < p; }
  /// Fair +/-1.
  int sign() noexcept { return (next() >> 63) != 0U ? -1 : 1; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace qroute
