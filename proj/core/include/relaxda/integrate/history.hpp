#pragma once

#include <optional>
#include <vector>

#include "relaxda/core/types.hpp"

namespace relaxda {

/// Ring buffer of uniformly spaced observation samples feeding the backward
/// finite differences. Spacing is validated to 1e-12 relative on every push.
class ObservationHistory {
 public:
  explicit ObservationHistory(int capacity = 8);

  void push(double t, Vec sample);
  void clear();

  int size() const { return static_cast<int>(entries_.size()); }
  int capacity() const { return capacity_; }
  double spacing() const { return dt_; }

  double newest_time() const;
  /// back = 0 is the newest sample, back = 1 the one before it, ...
  const Vec& from_newest(int back) const;
  double time_from_newest(int back) const;

 private:
  int capacity_;
  double dt_ = 0.0;
  std::vector<std::pair<double, Vec>> entries_;  // oldest first
};

/// Backward-difference approximation to d(I_h u)/dt at the newest sample.
/// Returns nullopt while fewer than order+1 samples are available.
std::optional<Vec> backward_fd(const ObservationHistory& history, int order);

}  // namespace relaxda
