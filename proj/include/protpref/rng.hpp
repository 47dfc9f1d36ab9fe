#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace protpref {

/// Seeded generator used for every random choice in the library.
///
/// Output depends only on the seed: the engine is std::mt19937_64, whose
/// sequence the standard fixes, and the derived draws (bounded integers,
/// unit doubles, shuffles) are implemented here rather than through the
/// implementation-defined std distributions.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64-v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, stream) pairs; used by parallel trials.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace protpref
