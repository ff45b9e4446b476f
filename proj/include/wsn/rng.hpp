#pragma once

#include <cstdint>
#include <random>

namespace wsn {

/// Seeded random stream shared by every stochastic step of a run.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Conversions to doubles and indices are done here rather than
/// through <random> distributions, whose algorithms are implementation
/// defined, so traces match across standard libraries.
///
/// Draw order within a run: node x, node y (ascending id), then app types
/// (ascending id, only when app_type_count > 1), then per-round election
/// draws in ascending id over the eligible nodes.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). n must be >= 1.
  std::uint64_t index(std::uint64_t n) {
    // Rejection keeps the result unbiased for any n.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wsn
