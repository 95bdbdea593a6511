#include "relaxda/l96/l96.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "relaxda/util/rng.hpp"

namespace relaxda::l96 {

void L96Params::validate() const {
  require(K >= 4, "L96Params: K must be >= 4 for the advection stencil");
  require(J >= 1, "L96Params: J must be >= 1");
  require(d_slow.size() == K, "L96Params: d_slow length mismatch");
  require(d_fast.rows() == K && d_fast.cols() == J,
          "L96Params: d_fast shape mismatch");
  require(gamma.rows() == K && gamma.cols() == J,
          "L96Params: gamma shape mismatch");
  require((d_slow.array() > 0.0).all(), "L96Params: d_slow must be positive");
  require((d_fast.array() > 0.0).all(), "L96Params: d_fast must be positive");
  require(phase_divisor > 0.0, "L96Params: phase divisor must be positive");
}

L96Params default_params() {
  L96Params p;
  p.K = 40;
  p.J = 5;
  p.F = 5.0;
  p.phase_divisor = static_cast<double>(p.J);
  const double two_pi = 2.0 * std::numbers::pi;

  p.d_slow.resize(p.K);
  for (int k = 0; k < p.K; ++k) {
    p.d_slow[k] = 1.0 + 0.7 * std::cos(two_pi * (k + 1) / p.phase_divisor);
  }

  const double dj[5] = {0.2, 0.5, 1.0, 2.0, 5.0};
  p.d_fast.resize(p.K, p.J);
  p.gamma.resize(p.K, p.J);
  for (int j = 0; j < p.J; ++j) {
    const double g = 0.1 + 0.25 * std::cos(two_pi * (j + 1) / p.phase_divisor);
    for (int k = 0; k < p.K; ++k) {
      p.d_fast(k, j) = dj[j];
      p.gamma(k, j) = g;
    }
  }
  return p;
}

L96Bounds bounds(const L96Params& params) {
  params.validate();
  L96Bounds b;
  b.d_star = params.d_slow.minCoeff();
  b.d_star = std::min(b.d_star, params.d_fast.minCoeff());
  b.rho_star_sq =
      2.0 * params.K * params.F * params.F / (b.d_star * b.d_star);
  // ||gamma||^2 averages the row sums; identical rows make this the plain
  // per-row sum of squares.
  b.gamma_norm_sq = params.gamma.array().square().sum() / params.K;
  b.d_norm_sq = params.d_slow.squaredNorm() + params.d_fast.squaredNorm();
  b.rho_dot_star_sq = 4.0 *
                      ((1.0 + b.gamma_norm_sq) * b.rho_star_sq + b.d_norm_sq +
                       b.gamma_norm_sq) *
                      b.rho_star_sq;
  return b;
}

bool L96ObservationSpec::observes(int k, int j) const {
  return std::find(observed_fast.begin(), observed_fast.end(),
                   std::make_pair(k, j)) != observed_fast.end();
}

void L96ObservationSpec::validate(const L96Params& params) const {
  for (const auto& [k, j] : observed_fast) {
    require(k >= 0 && k < params.K, "L96ObservationSpec: k out of range");
    require(j >= 1 && j <= params.J, "L96ObservationSpec: j out of range");
  }
}

ObservationOperator make_observation(const L96Params& params,
                                     const L96ObservationSpec& spec) {
  spec.validate(params);
  std::vector<std::uint8_t> mask(
      static_cast<std::size_t>(params.state_dim()), 0);
  for (int k = 0; k < params.K; ++k) mask[static_cast<std::size_t>(k)] = 1;
  for (const auto& [k, j] : spec.observed_fast) {
    mask[static_cast<std::size_t>(params.fast_index(k, j))] = 1;
  }
  return ObservationOperator::component_mask(std::move(mask));
}

std::string ParamSlot::name() const {
  std::ostringstream os;
  if (kind == Kind::Slow) {
    os << "slow:" << k;
  } else {
    os << "fast:" << k << "." << j;
  }
  return os.str();
}

std::vector<ParamSlot> parse_slots(const std::string& text) {
  std::vector<ParamSlot> slots;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto colon = token.find(':');
    require(colon != std::string::npos, "parse_slots: expected kind:index");
    const std::string kind = token.substr(0, colon);
    const std::string rest = token.substr(colon + 1);
    if (kind == "slow") {
      const auto dash = rest.find('-');
      if (dash == std::string::npos) {
        slots.push_back({ParamSlot::Kind::Slow, std::stoi(rest), 1});
      } else {
        const int lo = std::stoi(rest.substr(0, dash));
        const int hi = std::stoi(rest.substr(dash + 1));
        require(lo <= hi, "parse_slots: bad slow range");
        for (int k = lo; k <= hi; ++k) {
          slots.push_back({ParamSlot::Kind::Slow, k, 1});
        }
      }
    } else if (kind == "fast") {
      const auto dot = rest.find('.');
      require(dot != std::string::npos, "parse_slots: fast slot needs k.j");
      slots.push_back({ParamSlot::Kind::Fast, std::stoi(rest.substr(0, dot)),
                       std::stoi(rest.substr(dot + 1))});
    } else {
      throw ConfigError("parse_slots: unknown slot kind " + kind);
    }
  }
  return slots;
}

std::pair<SystemModel, Vec> build_model(const L96Params& params,
                                        const std::vector<ParamSlot>& unknowns,
                                        const L96ObservationSpec& obs_spec) {
  params.validate();
  obs_spec.validate(params);

  const int dim = params.state_dim();
  Vec lambda_true(static_cast<Eigen::Index>(unknowns.size()));
  // Damping applied inside the nonlinearity; zeroed where a slot is unknown.
  Vec known_damping(dim);
  for (int k = 0; k < params.K; ++k) known_damping[k] = params.d_slow[k];
  for (int k = 0; k < params.K; ++k) {
    for (int j = 1; j <= params.J; ++j) {
      known_damping[params.fast_index(k, j)] = params.d_fast(k, j - 1);
    }
  }

  SystemModel model;
  model.dim = dim;
  for (std::size_t s = 0; s < unknowns.size(); ++s) {
    const ParamSlot& slot = unknowns[s];
    int idx;
    if (slot.kind == ParamSlot::Kind::Slow) {
      require(slot.k >= 0 && slot.k < params.K,
              "build_model: slow slot out of range");
      idx = slot.k;
      lambda_true[static_cast<Eigen::Index>(s)] = params.d_slow[slot.k];
    } else {
      require(slot.k >= 0 && slot.k < params.K && slot.j >= 1 &&
                  slot.j <= params.J,
              "build_model: fast slot out of range");
      require(obs_spec.observes(slot.k, slot.j),
              "build_model: unknown fast damping requires its variable "
              "observed");
      idx = params.fast_index(slot.k, slot.j);
      lambda_true[static_cast<Eigen::Index>(s)] =
          params.d_fast(slot.k, slot.j - 1);
    }
    require(known_damping[idx] != 0.0, "build_model: duplicate slot");
    known_damping[idx] = 0.0;
    model.linear_ops.push_back(
        std::make_shared<ElementaryDiagonalOp>(dim, idx, -1.0));
  }

  const L96Params p = params;  // captured by value; the model owns its data
  const Vec kd = known_damping;
  model.nonlinearity = [p, kd](const Vec& u, Vec& out) {
    const int K = p.K;
    const int J = p.J;
    out.resize(p.state_dim());
    for (int k = 0; k < K; ++k) {
      const int km1 = (k - 1 + K) % K;
      const int km2 = (k - 2 + K) % K;
      const int kp1 = (k + 1) % K;
      double coupling = 0.0;
      const int base = K + k * J;
      for (int j = 0; j < J; ++j) {
        coupling += p.gamma(k, j) * u[base + j];
      }
      out[k] = u[km1] * (u[kp1] - u[km2]) + coupling * u[k] -
               kd[k] * u[k] + p.F;
    }
    for (int k = 0; k < K; ++k) {
      const int base = K + k * J;
      const double uk2 = u[k] * u[k];
      for (int j = 0; j < J; ++j) {
        out[base + j] = -kd[base + j] * u[base + j] - p.gamma(k, j) * uk2;
      }
    }
  };

  return {std::move(model), std::move(lambda_true)};
}

EnergyBalance energy_residual(const L96Params& params, const Vec& state) {
  require(state.size() == params.state_dim(),
          "energy_residual: state dim mismatch");
  auto [model, lambda] = build_model(params, {}, {});
  Vec rhs(params.state_dim());
  model.nonlinearity(state, rhs);

  EnergyBalance e;
  e.derivative_inner = state.dot(rhs);
  double diss = 0.0;
  for (int k = 0; k < params.K; ++k) {
    diss -= params.d_slow[k] * state[k] * state[k];
    diss += params.F * state[k];
  }
  for (int k = 0; k < params.K; ++k) {
    for (int j = 1; j <= params.J; ++j) {
      const int idx = params.fast_index(k, j);
      diss -= params.d_fast(k, j - 1) * state[idx] * state[idx];
    }
  }
  e.dissipation_form = diss;
  e.residual = e.derivative_inner - e.dissipation_form;
  return e;
}

double observed_fraction(int K_total_slow, int J, int n_fast_observed) {
  require(K_total_slow >= 1 && J >= 0 && n_fast_observed >= 0,
          "observed_fraction: counts must be nonnegative");
  return static_cast<double>(K_total_slow + n_fast_observed) /
         (static_cast<double>(K_total_slow) * (J + 1));
}

EtaBounds bound_eta(const L96Params& params, const NudgeConfig& nudge,
                    double delta) {
  require(delta >= 0.0, "bound_eta: delta must be nonnegative");
  require(nudge.dim() == params.state_dim(), "bound_eta: gain dim mismatch");
  const L96Bounds b = bounds(params);
  const double rho = std::sqrt(b.rho_star_sq);
  const double gnorm = std::sqrt(b.gamma_norm_sq);
  const double mu_star = nudge.mu_min();

  EtaBounds out;
  const double eta_sq = 2.0 * b.rho_star_sq / b.d_star;
  out.eta_star = std::sqrt(eta_sq);
  const double eta_dot_sq =
      (4.0 * b.rho_dot_star_sq / b.d_star) *
      (2.0 * eta_sq * (16.0 + 5.0 * b.gamma_norm_sq) / mu_star +
       4.0 * b.gamma_norm_sq * eta_sq / b.d_star + 4.0 * b.rho_dot_star_sq +
       1.0);
  out.eta_dot_star = std::sqrt(eta_dot_sq);

  // Slow-gain condition, evaluated with the printed constants.
  bool slow_ok = true;
  const double slow_floor =
      4.0 * delta + 2.0 * (2.0 + (params.K + 1) * gnorm) * rho;
  const Vec& m = nudge.m_diag();
  for (int k = 0; k < params.K; ++k) {
    const double fast_min = params.d_fast.row(k).minCoeff();
    const double needed =
        std::max(b.gamma_norm_sq * b.rho_star_sq / fast_min, slow_floor);
    if (m[k] < needed) slow_ok = false;
  }

  // Fast-gain condition over the observed fast components.
  bool fast_ok = true;
  const auto& observed = nudge.observed_mask();
  for (int k = 0; k < params.K; ++k) {
    for (int j = 1; j <= params.J; ++j) {
      const int idx = params.fast_index(k, j);
      if (observed[static_cast<std::size_t>(idx)] && m[idx] < 2.0 * delta) {
        fast_ok = false;
      }
    }
  }

  const bool dot_a = mu_star >= 2.0 * delta;
  const double lhs = mu_star * mu_star * mu_star;
  const double rhs =
      (16.0 * (4.0 + gnorm) * rho / 3.0) * mu_star * mu_star +
      16.0 * out.eta_star * delta * std::pow(mu_star, 1.5) +
      64.0 * b.gamma_norm_sq *
          (eta_sq * delta * delta / (3.0 * b.d_star) + b.rho_star_sq) *
          mu_star +
      8.0 * b.gamma_norm_sq * eta_sq * (32.0 * delta * delta / 3.0 + 1.0);
  const bool dot_b = lhs >= rhs;

  out.mu_conditions = {slow_ok, fast_ok, dot_a, dot_b};
  return out;
}

Vec random_init(const L96Params& params, std::uint64_t seed) {
  DeterministicUniform rng(seed);
  Vec v(params.state_dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.next();
  return v;
}

}  // namespace relaxda::l96
