#pragma once

#include <cstdint>
#include <vector>

#include "relaxda/core/observation.hpp"
#include "relaxda/core/types.hpp"

namespace relaxda {

/// Diagonal relaxation matrix M acting through the observation operator.
/// Entries are nonnegative everywhere and strictly positive on observed
/// components.
class NudgeConfig {
 public:
  NudgeConfig(Vec m_diag, const ObservationOperator& obs);

  /// M = mu on observed components, 0 elsewhere.
  static NudgeConfig uniform(double mu, const ObservationOperator& obs);

  const Vec& m_diag() const { return m_; }
  int dim() const { return static_cast<int>(m_.size()); }

  /// Smallest gain over observed components, recomputed on every call.
  double mu_min() const;

  const std::vector<std::uint8_t>& observed_mask() const { return observed_; }

 private:
  Vec m_;
  std::vector<std::uint8_t> observed_;
};

}  // namespace relaxda
