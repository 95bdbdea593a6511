#pragma once

#include <array>
#include <functional>

#include "relaxda/core/types.hpp"

namespace relaxda {

enum class Scheme { Rk4Fixed, Rk45Adaptive };

struct IntegratorConfig {
  Scheme scheme = Scheme::Rk4Fixed;
  double dt = 1e-3;       // fixed step, or initial step for the adaptive pair
  double rel_tol = 1e-9;  // adaptive only
  double abs_tol = 1e-11;

  void validate() const {
    require(dt > 0.0, "IntegratorConfig: dt must be positive");
    require(rel_tol > 0.0 && abs_tol > 0.0,
            "IntegratorConfig: tolerances must be positive");
  }
};

using RhsFn = std::function<void(double t, const Vec& y, Vec& dydt)>;

/// Classical fixed-step RK4. Throws BlowupError if the update is non-finite.
Vec rk4_step(const RhsFn& rhs, double t, const Vec& y, double dt);

struct Rk45Result {
  Vec y;
  double t_next;
  double dt_next;
  int rejections = 0;
};

/// One accepted Dormand-Prince 4(5) step with the standard PI-free
/// controller; retries internally on rejection and throws StiffnessError on
/// step underflow.
Rk45Result rk45_step(const RhsFn& rhs, double t, const Vec& y, double dt_try,
                     double rel_tol, double abs_tol);

namespace detail {

/// Single Dormand-Prince attempt; exposes stages for dense output.
struct Dp45Attempt {
  Vec y_new;
  double err_norm = 0.0;  // accepted when <= 1
  std::array<Vec, 7> k;
};

Dp45Attempt dp45_attempt(const RhsFn& rhs, double t, const Vec& y, double dt,
                         double rel_tol, double abs_tol);

/// Quartic interpolant over an accepted step, theta in [0, 1].
Vec dp45_dense(const Vec& y0, const Dp45Attempt& a, double dt, double theta);

constexpr double kMaxStepGrowth = 5.0;
constexpr double kMinStepShrink = 0.2;
constexpr double kStepSafety = 0.9;

double dp45_next_dt(double dt, double err_norm);

}  // namespace detail

}  // namespace relaxda
