#pragma once

#include "relaxda/core/nudge.hpp"
#include "relaxda/core/observation.hpp"
#include "relaxda/core/system_model.hpp"
#include "relaxda/core/types.hpp"

namespace relaxda {

/// State error w = nudged - truth together with its observed part.
struct StateError {
  Vec w;
  Vec observed;
};

void rhs_reference_into(const SystemModel& model, const Vec& lambda,
                        const Vec& u, Vec& out);
Vec rhs_reference(const SystemModel& model, const Vec& lambda, const Vec& u);

/// Nudged companion system: reference rhs at proxy parameters plus
/// -M I_h(nudged) + M I_h(truth). `observed_truth` must lie in the range of
/// the observation operator.
void rhs_nudged_into(const SystemModel& model, const Vec& proxy,
                     const Vec& nudged, const Vec& observed_truth,
                     const NudgeConfig& nudge, const ObservationOperator& obs,
                     Vec& out);
Vec rhs_nudged(const SystemModel& model, const Vec& proxy, const Vec& nudged,
               const Vec& observed_truth, const NudgeConfig& nudge,
               const ObservationOperator& obs);

Vec observe(const ObservationOperator& obs, const Vec& u);

StateError state_error(const Vec& nudged, const Vec& truth,
                       const ObservationOperator& obs);

}  // namespace relaxda
