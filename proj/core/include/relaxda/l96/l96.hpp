#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relaxda/core/nudge.hpp"
#include "relaxda/core/observation.hpp"
#include "relaxda/core/system_model.hpp"

namespace relaxda::l96 {

/// Two-layer Lorenz 96: K slow waves, each coupled to J fast waves.
/// State layout: (u_0..u_{K-1}, v_{0,1}..v_{0,J}, ..., v_{K-1,1}..v_{K-1,J})
/// with periodic indexing modulo K on the slow ring.
struct L96Params {
  int K = 40;
  int J = 5;
  double F = 5.0;
  Vec d_slow;   // length K, all > 0
  Mat d_fast;   // K x J, all > 0
  Mat gamma;    // K x J, rows identical under the defaults
  // Divisor of the cosine phase in the default coefficient formulas. The
  // printed formulas divide by J; kept overridable.
  double phase_divisor = 5.0;

  int state_dim() const { return K * (J + 1); }
  int slow_index(int k) const { return ((k % K) + K) % K; }
  int fast_index(int k, int j) const {  // j is 1-based
    return K + slow_index(k) * J + (j - 1);
  }
  void validate() const;
};

L96Params default_params();

/// Closed-form dissipativity constants of the model.
struct L96Bounds {
  double d_star;
  double rho_star_sq;      // 2 K F^2 / d_star^2
  double gamma_norm_sq;
  double d_norm_sq;
  double rho_dot_star_sq;
};

L96Bounds bounds(const L96Params& params);

/// Fast-variable observation set; all slow variables are always observed.
struct L96ObservationSpec {
  std::vector<std::pair<int, int>> observed_fast;  // (k, j), j 1-based

  bool observes(int k, int j) const;
  void validate(const L96Params& params) const;
};

ObservationOperator make_observation(const L96Params& params,
                                     const L96ObservationSpec& spec);

/// A damping coefficient selected for estimation.
struct ParamSlot {
  enum class Kind { Slow, Fast };
  Kind kind = Kind::Slow;
  int k = 0;
  int j = 1;  // 1-based, fast slots only

  std::string name() const;
};

/// Parses "slow:3", "slow:0-19", "fast:2.1" tokens, comma separated.
std::vector<ParamSlot> parse_slots(const std::string& text);

/// Builds the parameter-linear model with the unknown dampings pulled out as
/// elementary diagonal operators (scale -1, so the estimated coefficient is
/// the positive damping itself) and everything else folded into the
/// nonlinearity. Returns the model and the true parameter values.
std::pair<SystemModel, Vec> build_model(const L96Params& params,
                                        const std::vector<ParamSlot>& unknowns,
                                        const L96ObservationSpec& obs_spec);

/// Energy balance of the full model evaluated two ways; the residual is an
/// exact algebraic zero up to roundoff.
struct EnergyBalance {
  double derivative_inner;  // <state, rhs>
  double dissipation_form;  // -sum d_k u_k^2 - sum d_kj v_kj^2 + F sum u_k
  double residual;
};

EnergyBalance energy_residual(const L96Params& params, const Vec& state);

double observed_fraction(int K_total_slow, int J, int n_fast_observed);

/// State-error bound constants and the sufficient nudging-gain conditions.
/// The conditions are advisory diagnostics; they never gate a run.
struct EtaBounds {
  double eta_star;
  double eta_dot_star;
  std::array<bool, 4> mu_conditions;  // slow-gain, fast-gain, mu_dot_a, mu_dot_b
};

EtaBounds bound_eta(const L96Params& params, const NudgeConfig& nudge,
                    double delta);

/// Entries i.i.d. uniform [0,1) from a seeded deterministic generator.
Vec random_init(const L96Params& params, std::uint64_t seed);

}  // namespace relaxda::l96
