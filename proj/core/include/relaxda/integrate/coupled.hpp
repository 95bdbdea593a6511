#pragma once

#include "relaxda/core/nudge.hpp"
#include "relaxda/core/rhs.hpp"
#include "relaxda/core/system_model.hpp"
#include "relaxda/integrate/history.hpp"
#include "relaxda/integrate/integrator.hpp"

namespace relaxda {

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;
};

/// Advances the truth/nudged pair as one stacked state so the nudging term
/// reads stage-consistent observations, and records I_h(truth) samples at
/// uniform spacing dt_obs.
class CoupledIntegrator {
 public:
  CoupledIntegrator(const SystemModel& truth_model,
                    const SystemModel& nudged_model, Vec lambda_true,
                    Vec lambda_proxy, const ObservationOperator& obs,
                    const NudgeConfig& nudge, IntegratorConfig cfg,
                    double dt_obs, int history_capacity = 8);

  void set_state(double t, Vec truth, Vec nudged);
  void set_proxy(const Vec& lambda);
  const Vec& lambda_proxy() const { return lambda_proxy_; }
  const Vec& lambda_true() const { return lambda_true_; }

  /// Integrates to t_end, recording observation samples along the way.
  void advance_to(double t_end);

  double t() const;
  Vec truth_state() const { return y_.head(dim_); }
  Vec nudged_state() const { return y_.tail(dim_); }
  Vec observed_truth() const;

  const ObservationHistory& history() const { return history_; }
  ObservationHistory& history() { return history_; }

 private:
  void stacked_rhs(double t, const Vec& y, Vec& dydt);
  void record_sample();

  const SystemModel& truth_model_;
  const SystemModel& nudged_model_;
  Vec lambda_true_;
  Vec lambda_proxy_;
  const ObservationOperator& obs_;
  const NudgeConfig& nudge_;
  IntegratorConfig cfg_;
  double dt_obs_;
  int dim_;

  double t0_ = 0.0;
  long steps_ = 0;          // fixed-step count since t0_, so times stay exact
  long next_sample_step_ = 0;
  double adaptive_t_ = 0.0;
  double adaptive_dt_ = 0.0;
  double next_sample_t_ = 0.0;

  Vec y_;  // stacked [truth; nudged]
  ObservationHistory history_;

  // scratch buffers, reused across stage evaluations
  Vec u_buf_, un_buf_, obs_buf_, ru_buf_, rn_buf_;
};

/// One-shot convenience wrapper around CoupledIntegrator.
struct CoupledResult {
  Vec truth;
  Vec nudged;
  ObservationHistory history;
};

CoupledResult advance_coupled(const SystemModel& truth_model,
                              const SystemModel& nudged_model,
                              const Vec& lambda_true, const Vec& lambda_proxy,
                              const Vec& truth0, const Vec& nudged0,
                              const NudgeConfig& nudge,
                              const ObservationOperator& obs, TimeSpan span,
                              const IntegratorConfig& cfg, double dt_obs,
                              int history_capacity = 8);

}  // namespace relaxda
