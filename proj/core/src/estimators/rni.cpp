#include "relaxda/estimators/rni.hpp"

#include <cmath>

namespace relaxda {

namespace {
constexpr double kDegeneracyThreshold = 1e-14;
}

RNIWorkspace rni_workspace(const SystemModel& model,
                           const ObservationOperator& obs,
                           const NudgeConfig& nudge, const Vec& u_tilde,
                           const Vec& w_obs) {
  require(u_tilde.size() == model.dim, "rni_workspace: state dim mismatch");
  require(w_obs.size() == model.dim, "rni_workspace: error dim mismatch");
  const int p = model.param_count();
  RNIWorkspace ws;
  ws.E.resize(p);
  ws.Ldiag.resize(p);
  ws.op_norms.resize(p);

  // E_k = 0.5 ||sqrt(I_h M) I_h w||^2, identical across k
  double energy = 0.0;
  const Vec& m = nudge.m_diag();
  for (int i = 0; i < model.dim; ++i) {
    if (obs.observes(i)) energy += m[i] * w_obs[i] * w_obs[i];
  }
  energy *= 0.5;

  Vec lu(model.dim);
  for (int k = 0; k < p; ++k) {
    lu.setZero();
    model.linear_ops[static_cast<std::size_t>(k)]->add_apply(1.0, u_tilde, lu);
    // <L_k u~, I_h w> = <I_h L_k u~, I_h w> since I_h is an orthogonal
    // projection and w_obs already lives in its range.
    ws.Ldiag[k] = 0.5 * lu.dot(w_obs);
    ws.op_norms[k] = lu.norm();
    ws.E[k] = energy;
  }
  ws.w_obs_norm = w_obs.norm();
  return ws;
}

bool rni_solvable(const RNIWorkspace& ws) {
  for (Eigen::Index k = 0; k < ws.Ldiag.size(); ++k) {
    // |<L_k u~, I_h w>| must clear the relative threshold strictly, so a
    // synchronized state (both sides zero) always defers.
    const double lhs = 2.0 * std::abs(ws.Ldiag[k]);
    const double rhs =
        kDegeneracyThreshold * ws.op_norms[k] * ws.w_obs_norm;
    if (!(lhs > rhs)) return false;
  }
  return ws.w_obs_norm > 0.0;
}

std::optional<Vec> rni_update(const SystemModel& model,
                              const ObservationOperator& obs,
                              const NudgeConfig& nudge, const Vec& u_tilde,
                              const Vec& w_obs, const Vec& lambda) {
  RNIWorkspace ws = rni_workspace(model, obs, nudge, u_tilde, w_obs);
  if (!rni_solvable(ws)) return std::nullopt;
  Vec next = lambda;
  for (Eigen::Index k = 0; k < next.size(); ++k) {
    next[k] -= ws.E[k] / ws.Ldiag[k];
  }
  return next;
}

std::optional<Vec> rni_plus_update(const SystemModel& model,
                                   const ObservationOperator& obs,
                                   const NudgeConfig& nudge,
                                   const Vec& u_tilde, const Vec& truth_obs,
                                   const Vec& lambda) {
  const Vec u_tilde_obs = obs.apply(u_tilde);
  const Vec w_obs = u_tilde_obs - truth_obs;
  RNIWorkspace ws = rni_workspace(model, obs, nudge, u_tilde, w_obs);
  if (!rni_solvable(ws)) return std::nullopt;

  // Reinstated terms of the observed-error balance, nonlinearities evaluated
  // on observed projections only.
  Vec f_tilde(model.dim), f_truth(model.dim);
  model.nonlinearity(u_tilde_obs, f_tilde);
  model.nonlinearity(truth_obs, f_truth);
  Vec df = f_tilde - f_truth;
  obs.project_in_place(df);
  double correction = df.dot(w_obs);

  Vec lw(model.dim);
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    lw.setZero();
    model.linear_ops[static_cast<std::size_t>(k)]->add_apply(1.0, w_obs, lw);
    correction += lambda[k] * lw.dot(w_obs);
  }

  // numerator = ||sqrt(I_h M) I_h w||^2 - <corrections, I_h w>
  const double numerator = 2.0 * ws.E[0] - correction;
  Vec next = lambda;
  for (Eigen::Index k = 0; k < next.size(); ++k) {
    next[k] -= numerator / (2.0 * ws.Ldiag[k]);
  }
  return next;
}

}  // namespace relaxda
