#include "relaxda/integrate/coupled.hpp"

#include <cmath>

namespace relaxda {

CoupledIntegrator::CoupledIntegrator(const SystemModel& truth_model,
                                     const SystemModel& nudged_model,
                                     Vec lambda_true, Vec lambda_proxy,
                                     const ObservationOperator& obs,
                                     const NudgeConfig& nudge,
                                     IntegratorConfig cfg, double dt_obs,
                                     int history_capacity)
    : truth_model_(truth_model),
      nudged_model_(nudged_model),
      lambda_true_(std::move(lambda_true)),
      lambda_proxy_(std::move(lambda_proxy)),
      obs_(obs),
      nudge_(nudge),
      cfg_(cfg),
      dt_obs_(dt_obs),
      dim_(truth_model.dim),
      history_(history_capacity) {
  cfg_.validate();
  require(truth_model_.dim == nudged_model_.dim,
          "CoupledIntegrator: model dimensions differ");
  require(obs_.dim() == dim_, "CoupledIntegrator: observation dim mismatch");
  require(nudge_.dim() == dim_, "CoupledIntegrator: gain dim mismatch");
  require(dt_obs_ > 0.0, "CoupledIntegrator: dt_obs must be positive");
  if (cfg_.scheme == Scheme::Rk4Fixed) {
    const double m = dt_obs_ / cfg_.dt;
    require(std::abs(m - std::round(m)) <= 1e-9 * std::max(m, 1.0),
            "CoupledIntegrator: dt_obs must be a multiple of dt");
  }
  u_buf_.resize(dim_);
  un_buf_.resize(dim_);
  obs_buf_.resize(dim_);
  ru_buf_.resize(dim_);
  rn_buf_.resize(dim_);
  y_.setZero(2 * dim_);
}

void CoupledIntegrator::set_state(double t, Vec truth, Vec nudged) {
  require(truth.size() == dim_ && nudged.size() == dim_,
          "CoupledIntegrator: state dimension mismatch");
  t0_ = t;
  steps_ = 0;
  next_sample_step_ = 0;
  adaptive_t_ = t;
  adaptive_dt_ = cfg_.dt;
  next_sample_t_ = t;
  y_.head(dim_) = truth;
  y_.tail(dim_) = nudged;
  history_.clear();
  record_sample();
}

void CoupledIntegrator::set_proxy(const Vec& lambda) {
  require(lambda.size() == nudged_model_.param_count(),
          "CoupledIntegrator: proxy parameter count mismatch");
  lambda_proxy_ = lambda;
}

double CoupledIntegrator::t() const {
  if (cfg_.scheme == Scheme::Rk4Fixed) {
    return t0_ + static_cast<double>(steps_) * cfg_.dt;
  }
  return adaptive_t_;
}

Vec CoupledIntegrator::observed_truth() const {
  return obs_.apply(y_.head(dim_));
}

void CoupledIntegrator::stacked_rhs(double t, const Vec& y, Vec& dydt) {
  u_buf_ = y.head(dim_);
  un_buf_ = y.tail(dim_);
  rhs_reference_into(truth_model_, lambda_true_, u_buf_, ru_buf_);
  obs_.apply_into(u_buf_, obs_buf_);
  rhs_nudged_into(nudged_model_, lambda_proxy_, un_buf_, obs_buf_, nudge_,
                  obs_, rn_buf_);
  dydt.resize(2 * dim_);
  dydt.head(dim_) = ru_buf_;
  dydt.tail(dim_) = rn_buf_;
}

void CoupledIntegrator::record_sample() {
  double ts;
  if (cfg_.scheme == Scheme::Rk4Fixed) {
    ts = t0_ + static_cast<double>(steps_) * cfg_.dt;
  } else {
    ts = next_sample_t_;
  }
  history_.push(ts, obs_.apply(y_.head(dim_)));
}

void CoupledIntegrator::advance_to(double t_end) {
  RhsFn rhs = [this](double t, const Vec& y, Vec& dydt) {
    stacked_rhs(t, y, dydt);
  };

  if (cfg_.scheme == Scheme::Rk4Fixed) {
    const double span = t_end - t();
    require(span >= -1e-12, "advance_to: t_end is in the past");
    const double n_real = span / cfg_.dt;
    const long n = static_cast<long>(std::llround(n_real));
    require(std::abs(n_real - static_cast<double>(n)) <=
                1e-9 * std::max(1.0, n_real),
            "advance_to: span must be an integer number of steps");
    const long m = static_cast<long>(std::llround(dt_obs_ / cfg_.dt));
    for (long i = 0; i < n; ++i) {
      const double tn = t0_ + static_cast<double>(steps_) * cfg_.dt;
      y_ = rk4_step(rhs, tn, y_, cfg_.dt);
      ++steps_;
      if (steps_ - next_sample_step_ >= m) {
        next_sample_step_ += m;
        record_sample();
      }
    }
    return;
  }

  // Adaptive path: dense output at the uniform sampling grid.
  long sample_index =
      static_cast<long>(std::llround((next_sample_t_ - t0_) / dt_obs_));
  while (adaptive_t_ < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
    double dt = std::min(adaptive_dt_, t_end - adaptive_t_);
    for (;;) {
      if (dt < 1e-14 * std::max(std::abs(adaptive_t_), 1.0)) {
        throw StiffnessError(adaptive_t_, dt, "advance_to: step underflow");
      }
      auto a = detail::dp45_attempt(rhs, adaptive_t_, y_, dt, cfg_.rel_tol,
                                    cfg_.abs_tol);
      if (a.err_norm <= 1.0) {
        const double t_new = adaptive_t_ + dt;
        double ts = t0_ + static_cast<double>(sample_index + 1) * dt_obs_;
        while (ts <= t_new + 1e-12 * std::max(1.0, std::abs(t_new))) {
          const double theta = std::clamp((ts - adaptive_t_) / dt, 0.0, 1.0);
          ++sample_index;
          next_sample_t_ = ts;
          history_.push(ts, obs_.apply(
                                detail::dp45_dense(y_, a, dt, theta)
                                    .head(dim_)
                                    .eval()));
          ts = t0_ + static_cast<double>(sample_index + 1) * dt_obs_;
        }
        y_ = std::move(a.y_new);
        adaptive_t_ = t_new;
        adaptive_dt_ = detail::dp45_next_dt(dt, a.err_norm);
        break;
      }
      dt = detail::dp45_next_dt(dt, a.err_norm);
    }
  }
}

CoupledResult advance_coupled(const SystemModel& truth_model,
                              const SystemModel& nudged_model,
                              const Vec& lambda_true, const Vec& lambda_proxy,
                              const Vec& truth0, const Vec& nudged0,
                              const NudgeConfig& nudge,
                              const ObservationOperator& obs, TimeSpan span,
                              const IntegratorConfig& cfg, double dt_obs,
                              int history_capacity) {
  require(span.end > span.start, "advance_coupled: end must exceed start");
  CoupledIntegrator integ(truth_model, nudged_model, lambda_true, lambda_proxy,
                          obs, nudge, cfg, dt_obs, history_capacity);
  integ.set_state(span.start, truth0, nudged0);
  integ.advance_to(span.end);
  CoupledResult r;
  r.truth = integ.truth_state();
  r.nudged = integ.nudged_state();
  r.history = integ.history();
  return r;
}

}  // namespace relaxda
