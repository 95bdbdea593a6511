#pragma once

#include <optional>

#include "relaxda/core/nudge.hpp"
#include "relaxda/core/rhs.hpp"
#include "relaxda/core/system_model.hpp"

namespace relaxda {

/// Ingredients of the relaxation Newton step. E holds the observed-error
/// energy (one copy per parameter, all equal); Ldiag holds the diagonal
/// sensitivities 0.5 <L_k u~, I_h w>.
struct RNIWorkspace {
  Vec E;
  Vec Ldiag;
  Vec op_norms;  // ||L_k u~||, used by the relative degeneracy threshold
  double w_obs_norm = 0.0;
};

RNIWorkspace rni_workspace(const SystemModel& model,
                           const ObservationOperator& obs,
                           const NudgeConfig& nudge, const Vec& u_tilde,
                           const Vec& w_obs);

/// True when every diagonal entry clears the relative threshold
/// 1e-14 * ||L_k u~|| * ||I_h w||; a synchronized state (I_h w = 0) is
/// never solvable.
bool rni_solvable(const RNIWorkspace& ws);

/// One relaxation Newton step; nullopt signals a degenerate configuration
/// and the caller defers to a later update time.
std::optional<Vec> rni_update(const SystemModel& model,
                              const ObservationOperator& obs,
                              const NudgeConfig& nudge, const Vec& u_tilde,
                              const Vec& w_obs, const Vec& lambda);

/// RNI with the dropped terms reinstated, every unobservable factor replaced
/// by its observed projection: the nonlinearity difference is evaluated as
/// I_h(F(I_h u~) - F(I_h u)) and the parameter-linear error terms as
/// L_k(I_h w) weighted by the current proxy values.
std::optional<Vec> rni_plus_update(const SystemModel& model,
                                   const ObservationOperator& obs,
                                   const NudgeConfig& nudge,
                                   const Vec& u_tilde, const Vec& truth_obs,
                                   const Vec& lambda);

}  // namespace relaxda
