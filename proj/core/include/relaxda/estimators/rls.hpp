#pragma once

#include <optional>

#include "relaxda/core/observation.hpp"
#include "relaxda/core/system_model.hpp"

namespace relaxda {

/// Least-squares system sum_k lambda_k I_h L_k u~ = d(I_h u)/dt - I_h F(u~).
/// Rows span the full state length with zeros off the observed range.
struct RLSNormalSystem {
  Mat Lmat;              // d x p, column k = I_h L_k u~
  Vec f;                 // observed right-hand side
  Mat K;                 // normal matrix Lmat^T Lmat
  double cond_estimate;  // ratio of extreme singular values of Lmat
};

RLSNormalSystem rls_assemble(const SystemModel& model,
                             const ObservationOperator& obs,
                             const Vec& u_tilde, const Vec& dobs_dt);

/// Solves the least-squares problem by a rank-revealing QR of the tall
/// matrix. nullopt when cond_estimate exceeds the threshold; exactly
/// dependent columns therefore defer deterministically.
std::optional<Vec> rls_solve(const RLSNormalSystem& sys,
                             double cond_threshold);

}  // namespace relaxda
