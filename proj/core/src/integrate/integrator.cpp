#include "relaxda/integrate/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace relaxda {

Vec rk4_step(const RhsFn& rhs, double t, const Vec& y, double dt) {
  require(dt > 0.0, "rk4_step: dt must be positive");
  const Eigen::Index n = y.size();
  Vec k1(n), k2(n), k3(n), k4(n), tmp(n);
  rhs(t, y, k1);
  tmp = y + 0.5 * dt * k1;
  rhs(t + 0.5 * dt, tmp, k2);
  tmp = y + 0.5 * dt * k2;
  rhs(t + 0.5 * dt, tmp, k3);
  tmp = y + dt * k3;
  rhs(t + dt, tmp, k4);
  Vec out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!all_finite(out)) {
    throw BlowupError(t, "rk4_step: non-finite state update");
  }
  return out;
}

namespace detail {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat, for the embedded 4th-order error estimate
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

}  // namespace

Dp45Attempt dp45_attempt(const RhsFn& rhs, double t, const Vec& y, double dt,
                         double rel_tol, double abs_tol) {
  Dp45Attempt a;
  const Eigen::Index n = y.size();
  for (auto& k : a.k) k.resize(n);
  Vec tmp(n);

  rhs(t, y, a.k[0]);
  tmp = y + dt * (a21 * a.k[0]);
  rhs(t + c2 * dt, tmp, a.k[1]);
  tmp = y + dt * (a31 * a.k[0] + a32 * a.k[1]);
  rhs(t + c3 * dt, tmp, a.k[2]);
  tmp = y + dt * (a41 * a.k[0] + a42 * a.k[1] + a43 * a.k[2]);
  rhs(t + c4 * dt, tmp, a.k[3]);
  tmp = y + dt * (a51 * a.k[0] + a52 * a.k[1] + a53 * a.k[2] + a54 * a.k[3]);
  rhs(t + c5 * dt, tmp, a.k[4]);
  tmp = y + dt * (a61 * a.k[0] + a62 * a.k[1] + a63 * a.k[2] + a64 * a.k[3] +
                  a65 * a.k[4]);
  rhs(t + dt, tmp, a.k[5]);
  a.y_new = y + dt * (b1 * a.k[0] + b3 * a.k[2] + b4 * a.k[3] + b5 * a.k[4] +
                      b6 * a.k[5]);
  rhs(t + dt, a.y_new, a.k[6]);  // FSAL stage, reused by dense output

  if (!all_finite(a.y_new)) {
    throw BlowupError(t, "rk45: non-finite state update");
  }

  // mixed abs/rel error norm; accept when <= 1
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double err = dt * (e1 * a.k[0][i] + e3 * a.k[2][i] + e4 * a.k[3][i] +
                             e5 * a.k[4][i] + e6 * a.k[5][i] + e7 * a.k[6][i]);
    const double scale =
        abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(a.y_new[i]));
    const double r = err / scale;
    acc += r * r;
  }
  a.err_norm = std::sqrt(acc / static_cast<double>(n));
  return a;
}

Vec dp45_dense(const Vec& y0, const Dp45Attempt& a, double dt, double theta) {
  const Vec ydiff = a.y_new - y0;
  const Vec bspl = dt * a.k[0] - ydiff;
  const Vec r4 = ydiff - dt * a.k[6] - bspl;
  const Vec r5 = dt * (d1 * a.k[0] + d3 * a.k[2] + d4 * a.k[3] + d5 * a.k[4] +
                       d6 * a.k[5] + d7 * a.k[6]);
  const double th1 = 1.0 - theta;
  return y0 + theta * (ydiff + th1 * (bspl + theta * (r4 + th1 * r5)));
}

double dp45_next_dt(double dt, double err_norm) {
  double factor;
  if (err_norm <= 0.0) {
    factor = kMaxStepGrowth;
  } else {
    factor = std::clamp(kStepSafety * std::pow(err_norm, -0.2), kMinStepShrink,
                        kMaxStepGrowth);
  }
  return dt * factor;
}

}  // namespace detail

Rk45Result rk45_step(const RhsFn& rhs, double t, const Vec& y, double dt_try,
                     double rel_tol, double abs_tol) {
  require(dt_try > 0.0, "rk45_step: dt must be positive");
  require(rel_tol > 0.0 && abs_tol > 0.0,
          "rk45_step: tolerances must be positive");
  const double t_scale = std::max(std::abs(t), 1.0);
  double dt = dt_try;
  int rejections = 0;
  for (;;) {
    if (dt < 1e-14 * t_scale) {
      throw StiffnessError(t, dt, "rk45_step: step size underflow");
    }
    auto a = detail::dp45_attempt(rhs, t, y, dt, rel_tol, abs_tol);
    if (a.err_norm <= 1.0) {
      Rk45Result r;
      r.y = std::move(a.y_new);
      r.t_next = t + dt;
      r.dt_next = detail::dp45_next_dt(dt, a.err_norm);
      r.rejections = rejections;
      return r;
    }
    ++rejections;
    dt = detail::dp45_next_dt(dt, a.err_norm);
  }
}

}  // namespace relaxda
