#include "relaxda/estimators/scheduler.hpp"

#include <cmath>
#include <string>

namespace relaxda {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Rni: return "rni";
    case Algorithm::RniPlus: return "rni-plus";
    case Algorithm::Rls: return "rls";
    case Algorithm::None: return "none";
  }
  return "unknown";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "rni") return Algorithm::Rni;
  if (name == "rni-plus" || name == "rni+") return Algorithm::RniPlus;
  if (name == "rls") return Algorithm::Rls;
  if (name == "none") return Algorithm::None;
  throw ConfigError("unknown algorithm: " + name);
}

void EstimatorState::validate() const {
  require(update_interval > 0.0, "EstimatorState: interval must be positive");
  require(cond_threshold >= 1.0, "EstimatorState: cond_threshold must be >= 1");
  require(fd_order >= 1 && fd_order <= 3, "EstimatorState: fd_order in 1..3");
  require(max_skips >= 1, "EstimatorState: max_skips must be >= 1");
}

namespace {

double rni_inverse_norm(const RNIWorkspace& ws) {
  double max_inv = 0.0;
  for (Eigen::Index k = 0; k < ws.Ldiag.size(); ++k) {
    max_inv = std::max(max_inv, 1.0 / std::abs(ws.Ldiag[k]));
  }
  return max_inv;
}

}  // namespace

bool schedule_and_apply(EstimatorState& est, const UpdateContext& ctx) {
  est.validate();
  if (ctx.t + 1e-12 * std::max(1.0, std::abs(ctx.t)) < est.next_update_time) {
    return false;
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  bool updated = false;
  double w_obs_norm = nan;
  double inv_norm = nan;
  double cond = nan;

  const Vec w_obs = ctx.obs->apply(*ctx.u_tilde) - *ctx.truth_obs;

  switch (est.algorithm) {
    case Algorithm::None:
      break;
    case Algorithm::Rni: {
      RNIWorkspace ws =
          rni_workspace(*ctx.model, *ctx.obs, *ctx.nudge, *ctx.u_tilde, w_obs);
      w_obs_norm = ws.w_obs_norm;
      if (rni_solvable(ws)) {
        Vec next = est.lambda_current;
        for (Eigen::Index k = 0; k < next.size(); ++k) {
          next[k] -= ws.E[k] / ws.Ldiag[k];
        }
        est.lambda_current = std::move(next);
        inv_norm = rni_inverse_norm(ws);
        updated = true;
      }
      break;
    }
    case Algorithm::RniPlus: {
      RNIWorkspace ws =
          rni_workspace(*ctx.model, *ctx.obs, *ctx.nudge, *ctx.u_tilde, w_obs);
      w_obs_norm = ws.w_obs_norm;
      auto next = rni_plus_update(*ctx.model, *ctx.obs, *ctx.nudge,
                                  *ctx.u_tilde, *ctx.truth_obs,
                                  est.lambda_current);
      if (next) {
        est.lambda_current = std::move(*next);
        inv_norm = rni_inverse_norm(ws);
        updated = true;
      }
      break;
    }
    case Algorithm::Rls: {
      w_obs_norm = w_obs.norm();
      auto deriv = backward_fd(*ctx.obs_history, est.fd_order);
      if (deriv) {
        RLSNormalSystem sys =
            rls_assemble(*ctx.model, *ctx.obs, *ctx.u_tilde, *deriv);
        cond = sys.cond_estimate;
        auto next = rls_solve(sys, est.cond_threshold);
        if (next) {
          est.lambda_current = std::move(*next);
          Eigen::SelfAdjointEigenSolver<Mat> eig(sys.K);
          const double lo = eig.eigenvalues()[0];
          inv_norm = lo > 0.0 ? 1.0 / lo
                              : std::numeric_limits<double>::infinity();
          updated = true;
        }
      }
      break;
    }
  }

  if (updated) {
    est.history.push_back({ctx.t, est.lambda_current, w_obs_norm, inv_norm,
                           cond, est.skip_count});
    est.skip_count = 0;
  } else if (est.algorithm != Algorithm::None) {
    ++est.skip_count;
    if (est.skip_count > est.max_skips) {
      throw DegeneracyError(
          std::string("parameter update stayed degenerate for ") +
          std::to_string(est.skip_count) + " consecutive intervals (t=" +
          std::to_string(ctx.t) + ", algorithm=" +
          algorithm_name(est.algorithm) + ")");
    }
  }

  // March the schedule even across skipped or missed intervals.
  while (est.next_update_time <=
         ctx.t + 1e-12 * std::max(1.0, std::abs(ctx.t))) {
    est.next_update_time += est.update_interval;
  }
  return updated;
}

std::vector<ContractionRow> contraction_report(
    const std::vector<UpdateRecord>& history, const NudgeConfig& nudge,
    const std::optional<Vec>& lambda_true) {
  require(history.size() >= 2, "contraction_report: need >= 2 updates");
  std::vector<ContractionRow> rows;
  rows.reserve(history.size() - 1);
  const double mu_star = nudge.mu_min();
  for (std::size_t n = 1; n < history.size(); ++n) {
    ContractionRow row;
    row.t = history[n].t;
    row.w_obs_norm = history[n].w_obs_norm;
    row.inv_norm = history[n].inv_norm;
    row.mu_star = mu_star;
    if (lambda_true) {
      const double prev = (history[n - 1].lambda - *lambda_true).norm();
      const double cur = (history[n].lambda - *lambda_true).norm();
      if (prev > 0.0) {
        row.r = cur / prev;
        row.delta_hat = 1.0 - row.r;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace relaxda
