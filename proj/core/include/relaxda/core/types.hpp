#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace relaxda {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Invalid dimensions, signs, or option combinations detected at setup time.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-finite values produced during time integration.
struct BlowupError : std::runtime_error {
  double t;
  explicit BlowupError(double time, const std::string& what)
      : std::runtime_error(what), t(time) {}
};

/// Adaptive step size collapsed below the resolvable scale.
struct StiffnessError : std::runtime_error {
  double t;
  double dt;
  StiffnessError(double time, double step, const std::string& what)
      : std::runtime_error(what), t(time), dt(step) {}
};

/// A parameter update stayed degenerate past the skip budget.
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Advective CFL limit exceeded; carries a usable step suggestion.
struct CflError : std::runtime_error {
  double advised_dt;
  CflError(double advised, const std::string& what)
      : std::runtime_error(what), advised_dt(advised) {}
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }

// const char* overload keeps hot-path checks allocation-free
inline void require(bool cond, const char* what) {
  if (!cond) throw ConfigError(what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ConfigError(what);
}

}  // namespace relaxda
