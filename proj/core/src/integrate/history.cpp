#include "relaxda/integrate/history.hpp"

#include <cmath>

namespace relaxda {

ObservationHistory::ObservationHistory(int capacity) : capacity_(capacity) {
  require(capacity >= 4, "ObservationHistory: capacity must be >= 4");
  entries_.reserve(static_cast<std::size_t>(capacity));
}

void ObservationHistory::push(double t, Vec sample) {
  if (!entries_.empty()) {
    const double prev = entries_.back().first;
    require(t > prev, "ObservationHistory: timestamps must increase");
    const double gap = t - prev;
    if (entries_.size() == 1) {
      dt_ = gap;
    } else {
      require(std::abs(gap - dt_) <= 1e-12 * std::max(std::abs(dt_), 1.0),
              "ObservationHistory: non-uniform sample spacing");
    }
  }
  if (static_cast<int>(entries_.size()) == capacity_) {
    entries_.erase(entries_.begin());
  }
  entries_.emplace_back(t, std::move(sample));
}

void ObservationHistory::clear() {
  entries_.clear();
  dt_ = 0.0;
}

double ObservationHistory::newest_time() const {
  require(!entries_.empty(), "ObservationHistory: empty");
  return entries_.back().first;
}

const Vec& ObservationHistory::from_newest(int back) const {
  require(back >= 0 && back < size(), "ObservationHistory: index out of range");
  return entries_[entries_.size() - 1 - static_cast<std::size_t>(back)].second;
}

double ObservationHistory::time_from_newest(int back) const {
  require(back >= 0 && back < size(), "ObservationHistory: index out of range");
  return entries_[entries_.size() - 1 - static_cast<std::size_t>(back)].first;
}

std::optional<Vec> backward_fd(const ObservationHistory& history, int order) {
  require(order >= 1 && order <= 3, "backward_fd: order must be 1, 2, or 3");
  if (history.size() < order + 1) return std::nullopt;
  const double dt = history.spacing();
  const Vec& u0 = history.from_newest(0);
  switch (order) {
    case 1:
      return (u0 - history.from_newest(1)) / dt;
    case 2:
      return (3.0 * u0 - 4.0 * history.from_newest(1) +
              history.from_newest(2)) /
             (2.0 * dt);
    default:
      return (11.0 * u0 - 18.0 * history.from_newest(1) +
              9.0 * history.from_newest(2) - 2.0 * history.from_newest(3)) /
             (6.0 * dt);
  }
}

}  // namespace relaxda
