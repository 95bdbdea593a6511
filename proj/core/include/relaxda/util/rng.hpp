#pragma once

#include <cstdint>
#include <random>

namespace relaxda {

/// Uniform [0,1) doubles built from the raw mt19937_64 stream. The standard
/// distributions are implementation-defined, this mapping is not.
class DeterministicUniform {
 public:
  explicit DeterministicUniform(std::uint64_t seed) : eng_(seed) {}

  double next() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi)
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace relaxda
