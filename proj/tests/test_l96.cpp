#include <doctest.h>

#include <cmath>

#include "relaxda/integrate/coupled.hpp"
#include "relaxda/l96/l96.hpp"
#include "relaxda/util/rng.hpp"

using namespace relaxda;
using namespace relaxda::l96;

TEST_CASE("default parameters match the published constants") {
  L96Params p = default_params();
  CHECK(p.K == 40);
  CHECK(p.J == 5);
  CHECK(p.F == 5.0);
  CHECK(p.state_dim() == 240);
  CHECK(p.d_slow[4] == doctest::Approx(1.7).epsilon(1e-14));  // cos(2*pi) = 1
  CHECK(p.d_fast(0, 0) == 0.2);
  CHECK(p.d_fast(17, 4) == 5.0);
  // rows of gamma identical across k
  for (int k = 1; k < p.K; ++k) {
    CHECK((p.gamma.row(k) - p.gamma.row(0)).norm() == 0.0);
  }
}

TEST_CASE("bounds: closed-form absorbing-ball radius") {
  L96Params p = default_params();
  L96Bounds b = bounds(p);
  CHECK(b.d_star == 0.2);  // fast minimum beats the slow minimum ~0.434
  CHECK(b.rho_star_sq == doctest::Approx(50000.0).epsilon(1e-12));

  SUBCASE("unforced model has a zero radius") {
    p.F = 0.0;
    CHECK(bounds(p).rho_star_sq == 0.0);
  }
  SUBCASE("doubling the forcing quadruples the radius") {
    L96Params q = default_params();
    q.F = 10.0;
    CHECK(bounds(q).rho_star_sq == doctest::Approx(4.0 * b.rho_star_sq));
  }
}

TEST_CASE("build_model: zero and uniform states") {
  L96Params p = default_params();
  auto [model, lambda] = build_model(p, {}, {});
  CHECK(lambda.size() == 0);

  Vec zero = Vec::Zero(p.state_dim());
  Vec rhs = rhs_reference(model, lambda, zero);
  for (int k = 0; k < p.K; ++k) CHECK(rhs[k] == 5.0);
  for (int i = p.K; i < p.state_dim(); ++i) CHECK(rhs[i] == 0.0);

  // uniform slow state: advection cancels by symmetry
  const double c = 1.3;
  Vec uniform = Vec::Zero(p.state_dim());
  for (int k = 0; k < p.K; ++k) uniform[k] = c;
  rhs = rhs_reference(model, lambda, uniform);
  for (int k = 0; k < p.K; ++k) {
    CHECK(rhs[k] == doctest::Approx(-p.d_slow[k] * c + p.F).epsilon(1e-14));
  }
  for (int k = 0; k < p.K; ++k) {
    for (int j = 1; j <= p.J; ++j) {
      CHECK(rhs[p.fast_index(k, j)] ==
            doctest::Approx(-p.gamma(k, j - 1) * c * c).epsilon(1e-14));
    }
  }
}

TEST_CASE("build_model: unknown slots enter as negative elementary diagonals") {
  L96Params p = default_params();
  auto slots = parse_slots("slow:0-2,slow:7");
  auto [model, lambda_true] = build_model(p, slots, {});
  CHECK(model.param_count() == 4);
  CHECK(lambda_true[3] == p.d_slow[7]);

  DeterministicUniform rng(5);
  Vec state(p.state_dim());
  for (Eigen::Index i = 0; i < state.size(); ++i) state[i] = rng.next();

  // full model and slotted model agree when the true values are plugged in
  auto [full_model, empty] = build_model(p, {}, {});
  Vec a = rhs_reference(full_model, empty, state);
  Vec b = rhs_reference(model, lambda_true, state);
  CHECK((a - b).norm() <= 1e-14 * a.norm());
}

TEST_CASE("build_model: unknown fast slot requires its variable observed") {
  L96Params p = default_params();
  std::vector<ParamSlot> slots = {{ParamSlot::Kind::Fast, 3, 2}};
  CHECK_THROWS_AS(build_model(p, slots, {}), ConfigError);

  L96ObservationSpec spec;
  spec.observed_fast = {{3, 2}};
  auto [model, lambda] = build_model(p, slots, spec);
  CHECK(lambda[0] == p.d_fast(3, 1));
}

TEST_CASE("energy balance: identity holds to roundoff") {
  L96Params p = default_params();

  EnergyBalance zero = energy_residual(p, Vec::Zero(p.state_dim()));
  CHECK(zero.derivative_inner == 0.0);
  CHECK(zero.dissipation_form == 0.0);
  CHECK(zero.residual == 0.0);

  DeterministicUniform rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Vec state(p.state_dim());
    for (Eigen::Index i = 0; i < state.size(); ++i)
      state[i] = rng.next(-1.0, 1.0);
    if (trial % 3 == 0) {
      for (int i = p.K; i < p.state_dim(); ++i) state[i] = 0.0;  // v = 0
    }
    EnergyBalance e = energy_residual(p, state);
    const double scale =
        std::abs(e.derivative_inner) + std::abs(e.dissipation_form);
    CHECK(std::abs(e.residual) <= 1e-12 * std::max(scale, 1.0));
  }
}

TEST_CASE("observed_fraction: published cases") {
  CHECK(observed_fraction(40, 2, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(observed_fraction(40, 5, 0) == doctest::Approx(1.0 / 6.0));
  CHECK(observed_fraction(40, 5, 200) == doctest::Approx(1.0));
}

TEST_CASE("observation operator: slow always observed") {
  L96Params p = default_params();
  L96ObservationSpec spec;
  spec.observed_fast = {{0, 1}, {5, 3}};
  auto obs = make_observation(p, spec);
  CHECK(obs.rank() == 42);
  CHECK(obs.observes(0));
  CHECK(obs.observes(39));
  CHECK(obs.observes(p.fast_index(0, 1)));
  CHECK(obs.observes(p.fast_index(5, 3)));
  CHECK(!obs.observes(p.fast_index(5, 2)));
}

TEST_CASE("bound_eta: delta=0 satisfies the fast-gain condition") {
  L96Params p = default_params();
  auto obs = make_observation(p, {});
  auto nudge = NudgeConfig::uniform(50.0, obs);
  EtaBounds eb = bound_eta(p, nudge, 0.0);
  CHECK(eb.mu_conditions[1]);  // fast-gain
  CHECK(eb.mu_conditions[2]);  // mu_dot_a
  CHECK(eb.eta_star ==
        doctest::Approx(std::sqrt(2.0 * 50000.0 / 0.2)).epsilon(1e-12));
  CHECK(eb.eta_dot_star > 0.0);
}

TEST_CASE("bound_eta: reports pessimistic conditions without aborting") {
  L96Params p = default_params();
  auto obs = make_observation(p, {});
  auto nudge = NudgeConfig::uniform(50.0, obs);
  EtaBounds eb = bound_eta(p, nudge, 0.5);
  // The theorem constants are far above mu=50; the call still succeeds.
  CHECK(!eb.mu_conditions[0]);
  CHECK(eb.mu_conditions[1]);
}

TEST_CASE("bound_eta: doubling mu never flips passing to failing") {
  L96Params p = default_params();
  auto obs = make_observation(p, {});
  const double delta = 0.3;
  for (double mu : {10.0, 100.0, 1e4, 1e6, 1e8}) {
    auto lo = bound_eta(p, NudgeConfig::uniform(mu, obs), delta);
    auto hi = bound_eta(p, NudgeConfig::uniform(2.0 * mu, obs), delta);
    for (int c = 0; c < 4; ++c) {
      if (lo.mu_conditions[static_cast<std::size_t>(c)]) {
        CHECK(hi.mu_conditions[static_cast<std::size_t>(c)]);
      }
    }
  }
}

TEST_CASE("random_init: deterministic, in range, seed-sensitive") {
  L96Params p = default_params();
  Vec a = random_init(p, 42);
  Vec b = random_init(p, 42);
  CHECK(a == b);
  CHECK((a.array() >= 0.0).all());
  CHECK((a.array() < 1.0).all());

  Vec c = random_init(p, 43);
  int differing = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != c[i]) ++differing;
  }
  CHECK(differing > 0.9 * p.state_dim());
}

TEST_CASE("exact-twin invariance over t in [0, 10]") {
  L96Params p = default_params();
  auto slots = parse_slots("slow:0-19");
  auto [model, lambda_true] = build_model(p, slots, {});
  auto obs = make_observation(p, {});
  auto nudge = NudgeConfig::uniform(50.0, obs);
  Vec init = random_init(p, 7);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  auto r = advance_coupled(model, model, lambda_true, lambda_true, init, init,
                           nudge, obs, {0.0, 10.0}, cfg, 0.1);
  CHECK((r.truth - r.nudged).norm() < 1e-12);
  CHECK(all_finite(r.truth));
}

TEST_CASE("no synchronization without nudging on distinct inits") {
  L96Params p = default_params();
  auto [model, lambda] = build_model(p, {}, {});
  auto obs = make_observation(p, {});
  NudgeConfig zero(Vec::Zero(p.state_dim()),
                   ObservationOperator::spectral_truncation(p.state_dim(), 0));
  Vec t0 = random_init(p, 1);
  Vec n0 = random_init(p, 2);
  const double initial_error = (t0 - n0).norm();
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  auto r = advance_coupled(model, model, lambda, lambda, t0, n0, zero, obs,
                           {0.0, 5.0}, cfg, 0.1);
  CHECK((r.truth - r.nudged).norm() > 0.1 * initial_error);
}
