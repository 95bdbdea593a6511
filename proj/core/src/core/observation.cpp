#include "relaxda/core/observation.hpp"

#include <algorithm>

namespace relaxda {

ObservationOperator::ObservationOperator(Kind kind,
                                         std::vector<std::uint8_t> mask)
    : kind_(kind), mask_(std::move(mask)) {
  require(!mask_.empty(), "ObservationOperator: empty mask");
  rank_ = static_cast<int>(
      std::count_if(mask_.begin(), mask_.end(), [](auto b) { return b != 0; }));
}

ObservationOperator ObservationOperator::component_mask(
    std::vector<std::uint8_t> mask) {
  return ObservationOperator(Kind::ComponentMask, std::move(mask));
}

ObservationOperator ObservationOperator::spectral_truncation(int dim,
                                                             int cutoff) {
  require(dim >= 1, "spectral_truncation: dim must be >= 1");
  require(cutoff >= 0 && cutoff <= dim,
          "spectral_truncation: cutoff out of range");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(dim), 0);
  std::fill(mask.begin(), mask.begin() + cutoff, std::uint8_t{1});
  return ObservationOperator(Kind::SpectralTruncation, std::move(mask));
}

ObservationOperator ObservationOperator::full(int dim) {
  require(dim >= 1, "full: dim must be >= 1");
  return ObservationOperator(
      Kind::ComponentMask, std::vector<std::uint8_t>(static_cast<std::size_t>(dim), 1));
}

Vec ObservationOperator::apply(const Vec& u) const {
  Vec out(u.size());
  apply_into(u, out);
  return out;
}

void ObservationOperator::apply_into(const Vec& u, Vec& out) const {
  require(u.size() == static_cast<Eigen::Index>(mask_.size()),
          "ObservationOperator: dimension mismatch");
  out.resize(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out[i] = mask_[static_cast<std::size_t>(i)] ? u[i] : 0.0;
  }
}

void ObservationOperator::project_in_place(Vec& u) const {
  require(u.size() == static_cast<Eigen::Index>(mask_.size()),
          "ObservationOperator: dimension mismatch");
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!mask_[static_cast<std::size_t>(i)]) u[i] = 0.0;
  }
}

}  // namespace relaxda
