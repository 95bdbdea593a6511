#include "relaxda/core/nudge.hpp"

#include <limits>

namespace relaxda {

NudgeConfig::NudgeConfig(Vec m_diag, const ObservationOperator& obs)
    : m_(std::move(m_diag)), observed_(obs.mask()) {
  require(m_.size() == obs.dim(), "NudgeConfig: M dimension mismatch");
  for (Eigen::Index i = 0; i < m_.size(); ++i) {
    require(m_[i] >= 0.0, "NudgeConfig: negative gain entry");
    if (observed_[static_cast<std::size_t>(i)]) {
      require(m_[i] > 0.0, "NudgeConfig: observed component with zero gain");
    }
  }
}

NudgeConfig NudgeConfig::uniform(double mu, const ObservationOperator& obs) {
  require(mu > 0.0, "NudgeConfig: mu must be positive");
  Vec m = Vec::Zero(obs.dim());
  for (int i = 0; i < obs.dim(); ++i) {
    if (obs.observes(i)) m[i] = mu;
  }
  return NudgeConfig(std::move(m), obs);
}

double NudgeConfig::mu_min() const {
  double mn = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m_.size(); ++i) {
    if (observed_[static_cast<std::size_t>(i)] && m_[i] < mn) mn = m_[i];
  }
  return mn;
}

}  // namespace relaxda
