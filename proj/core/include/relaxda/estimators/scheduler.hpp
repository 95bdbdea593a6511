#pragma once

#include <optional>
#include <vector>

#include "relaxda/estimators/rls.hpp"
#include "relaxda/estimators/rni.hpp"
#include "relaxda/integrate/history.hpp"

namespace relaxda {

enum class Algorithm { Rni, RniPlus, Rls, None };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct UpdateRecord {
  double t;
  Vec lambda;
  double w_obs_norm;
  double inv_norm;  // ||Ldiag^-1|| or ||K^-1|| at the accepted update
  double cond;      // RLS condition estimate, NaN for RNI
  int skips_before; // consecutive deferrals preceding this update
};

/// Owns the parameter iterate, the update schedule, and the accepted-update
/// history for one run.
struct EstimatorState {
  Algorithm algorithm = Algorithm::Rni;
  Vec lambda_current;
  double update_interval = 0.1;
  int fd_order = 3;              // rls only
  double cond_threshold = 1e8;   // rls only
  int skip_count = 0;
  int max_skips = 100;
  double next_update_time = 0.0;
  std::vector<UpdateRecord> history;

  void validate() const;
};

struct UpdateContext {
  const SystemModel* model = nullptr;
  const ObservationOperator* obs = nullptr;
  const NudgeConfig* nudge = nullptr;
  double t = 0.0;
  const Vec* u_tilde = nullptr;
  const Vec* truth_obs = nullptr;
  const ObservationHistory* obs_history = nullptr;  // rls only
};

/// Runs the selected algorithm once the simulation time has crossed the next
/// scheduled update. Degenerate or not-ready signals increment skip_count and
/// leave the iterate untouched; exceeding max_skips raises DegeneracyError.
/// Returns true when an update was applied.
bool schedule_and_apply(EstimatorState& est, const UpdateContext& ctx);

struct ContractionRow {
  double t;
  double w_obs_norm;
  double inv_norm;
  double mu_star;
  double r = std::numeric_limits<double>::quiet_NaN();          // test mode
  double delta_hat = std::numeric_limits<double>::quiet_NaN();  // 1 - r
};

/// Empirical contraction diagnostics along an update history. The ratio
/// r_n and delta_hat are populated only when the true parameters are
/// supplied.
std::vector<ContractionRow> contraction_report(
    const std::vector<UpdateRecord>& history, const NudgeConfig& nudge,
    const std::optional<Vec>& lambda_true);

}  // namespace relaxda
