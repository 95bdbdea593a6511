#pragma once

#include <cstdint>
#include <vector>

#include "relaxda/core/types.hpp"

namespace relaxda {

/// Rank-deficient projection onto the observed part of the state. Observed
/// data lives in full-length vectors with zeros off the observation range,
/// which keeps idempotence and contraction exact.
class ObservationOperator {
 public:
  enum class Kind { ComponentMask, SpectralTruncation };

  static ObservationOperator component_mask(std::vector<std::uint8_t> mask);
  /// Keeps the leading `cutoff` coefficients of a spectral layout.
  static ObservationOperator spectral_truncation(int dim, int cutoff);
  static ObservationOperator full(int dim);

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(mask_.size()); }
  int rank() const { return rank_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  bool observes(int i) const { return mask_[static_cast<std::size_t>(i)] != 0; }

  Vec apply(const Vec& u) const;
  void apply_into(const Vec& u, Vec& out) const;
  void project_in_place(Vec& u) const;

 private:
  ObservationOperator(Kind kind, std::vector<std::uint8_t> mask);

  Kind kind_;
  std::vector<std::uint8_t> mask_;
  int rank_ = 0;
};

}  // namespace relaxda
