#include "relaxda/core/rhs.hpp"

namespace relaxda {

void rhs_reference_into(const SystemModel& model, const Vec& lambda,
                        const Vec& u, Vec& out) {
  require(u.size() == model.dim, "rhs_reference: state dimension mismatch");
  require(lambda.size() == model.param_count(),
          "rhs_reference: parameter count mismatch");
  out.resize(model.dim);
  model.nonlinearity(u, out);
  require(out.size() == model.dim, "rhs_reference: nonlinearity output size");
  for (int k = 0; k < model.param_count(); ++k) {
    model.linear_ops[static_cast<std::size_t>(k)]->add_apply(lambda[k], u, out);
  }
}

Vec rhs_reference(const SystemModel& model, const Vec& lambda, const Vec& u) {
  Vec out;
  rhs_reference_into(model, lambda, u, out);
  return out;
}

void rhs_nudged_into(const SystemModel& model, const Vec& proxy,
                     const Vec& nudged, const Vec& observed_truth,
                     const NudgeConfig& nudge, const ObservationOperator& obs,
                     Vec& out) {
  require(observed_truth.size() == model.dim,
          "rhs_nudged: observed truth dimension mismatch");
  require(nudge.dim() == model.dim, "rhs_nudged: gain dimension mismatch");
  rhs_reference_into(model, proxy, nudged, out);
  // -M I_h(nudged - truth); both factors already live in the observed range,
  // so the term is exactly zero off the mask.
  const Vec& m = nudge.m_diag();
  for (int i = 0; i < model.dim; ++i) {
    if (obs.observes(i)) {
      out[i] -= m[i] * (nudged[i] - observed_truth[i]);
    }
  }
}

Vec rhs_nudged(const SystemModel& model, const Vec& proxy, const Vec& nudged,
               const Vec& observed_truth, const NudgeConfig& nudge,
               const ObservationOperator& obs) {
  Vec out;
  rhs_nudged_into(model, proxy, nudged, observed_truth, nudge, obs, out);
  return out;
}

Vec observe(const ObservationOperator& obs, const Vec& u) {
  return obs.apply(u);
}

StateError state_error(const Vec& nudged, const Vec& truth,
                       const ObservationOperator& obs) {
  require(nudged.size() == truth.size(), "state_error: dimension mismatch");
  StateError e;
  e.w = nudged - truth;
  e.observed = obs.apply(e.w);
  return e;
}

}  // namespace relaxda
