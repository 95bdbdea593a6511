#include <doctest.h>

#include <cmath>

#include "relaxda/integrate/coupled.hpp"
#include "relaxda/integrate/history.hpp"
#include "relaxda/integrate/integrator.hpp"
#include "relaxda/util/rng.hpp"

using namespace relaxda;

namespace {

const RhsFn kZeroRhs = [](double, const Vec& y, Vec& dydt) {
  dydt = Vec::Zero(y.size());
};

const RhsFn kExpRhs = [](double, const Vec& y, Vec& dydt) { dydt = y; };

SystemModel scalar_model() {
  SystemModel m;
  m.dim = 1;
  m.linear_ops.push_back(std::make_shared<ElementaryDiagonalOp>(1, 0, -1.0));
  m.nonlinearity = [](const Vec& u, Vec& out) {
    out.resize(u.size());
    out[0] = 1.0;
  };
  return m;
}

double rk4_exp_error(double dt) {
  Vec y = Vec::Constant(1, 1.0);
  const int n = static_cast<int>(std::llround(1.0 / dt));
  for (int i = 0; i < n; ++i) y = rk4_step(kExpRhs, i * dt, y, dt);
  return std::abs(y[0] - std::exp(1.0));
}

ObservationHistory sample_function(double (*f)(double), double dt, int count,
                                   double t_end) {
  ObservationHistory h(count);
  for (int i = count - 1; i >= 0; --i) {
    const double t = t_end - i * dt;
    h.push(t, Vec::Constant(1, f(t)));
  }
  return h;
}

}  // namespace

TEST_CASE("rk4: zero rhs leaves the state unchanged") {
  Vec y(3);
  y << 1.0, -2.0, 0.5;
  CHECK(rk4_step(kZeroRhs, 0.0, y, 0.1) == y);
}

TEST_CASE("rk4: one exponential step") {
  Vec y = Vec::Constant(1, 1.0);
  Vec out = rk4_step(kExpRhs, 0.0, y, 0.1);
  CHECK(std::abs(out[0] - std::exp(0.1)) < 1e-7);
}

TEST_CASE("rk4: global error scales as dt^4 on the exponential oracle") {
  const double e1 = rk4_exp_error(0.01);
  const double e2 = rk4_exp_error(0.005);
  const double ratio = e1 / e2;
  CHECK(ratio > 16.0 * 0.7);
  CHECK(ratio < 16.0 * 1.3);
}

TEST_CASE("rk4: skew-symmetric rhs conserves the norm to O(dt^5) per step") {
  const RhsFn rot = [](double, const Vec& y, Vec& dydt) {
    dydt.resize(2);
    dydt[0] = -y[1];
    dydt[1] = y[0];
  };
  Vec y(2);
  y << 1.0, 0.0;
  const double dt = 0.01;
  Vec out = rk4_step(rot, 0.0, y, dt);
  CHECK(std::abs(out.norm() - 1.0) < std::pow(dt, 5));
}

TEST_CASE("rk4: NaN in the rhs raises a blowup error carrying t") {
  const RhsFn bad = [](double, const Vec& y, Vec& dydt) {
    dydt = Vec::Constant(y.size(), std::nan(""));
  };
  Vec y = Vec::Constant(1, 1.0);
  try {
    rk4_step(bad, 2.5, y, 0.1);
    FAIL("expected BlowupError");
  } catch (const BlowupError& e) {
    CHECK(e.t == 2.5);
  }
}

TEST_CASE("rk45: zero rhs accepts immediately and grows dt maximally") {
  Vec y = Vec::Constant(2, 1.0);
  auto r = rk45_step(kZeroRhs, 0.0, y, 0.1, 1e-9, 1e-11);
  CHECK(r.rejections == 0);
  CHECK(r.dt_next == doctest::Approx(0.1 * detail::kMaxStepGrowth));
  CHECK(r.y == y);
}

TEST_CASE("rk45: stiff decay rejects an over-ambitious first step") {
  const RhsFn stiff = [](double, const Vec& y, Vec& dydt) {
    dydt = -1000.0 * y;
  };
  Vec y = Vec::Constant(1, 1.0);
  auto r = rk45_step(stiff, 0.0, y, 0.5, 1e-9, 1e-11);
  CHECK(r.rejections >= 1);
  CHECK(r.t_next < 0.5);
}

TEST_CASE("rk45: exponential oracle at tight tolerance") {
  Vec y = Vec::Constant(1, 1.0);
  double t = 0.0, dt = 0.1;
  while (t < 1.0) {
    auto r = rk45_step(kExpRhs, t, y, std::min(dt, 1.0 - t), 1e-9, 1e-11);
    y = r.y;
    t = r.t_next;
    dt = r.dt_next;
  }
  CHECK(std::abs(y[0] - std::exp(1.0)) < 1e-7);
}

TEST_CASE("backward_fd: exact on polynomials of matching degree") {
  auto linear = sample_function([](double t) { return t; }, 0.25, 4, 2.0);
  auto d1 = backward_fd(linear, 1);
  REQUIRE(d1.has_value());
  CHECK((*d1)[0] == doctest::Approx(1.0).epsilon(1e-13));

  auto quad = sample_function([](double t) { return t * t; }, 0.1, 4, 1.0);
  auto d2 = backward_fd(quad, 2);
  REQUIRE(d2.has_value());
  CHECK(std::abs((*d2)[0] - 2.0) < 1e-12);

  auto cubic =
      sample_function([](double t) { return t * t * t; }, 1.0, 4, 3.0);
  auto d3 = backward_fd(cubic, 3);
  REQUIRE(d3.has_value());
  CHECK(std::abs((*d3)[0] - 27.0) < 1e-12);
}

TEST_CASE("backward_fd: not ready while samples are insufficient") {
  ObservationHistory h(8);
  h.push(0.0, Vec::Constant(1, 0.0));
  h.push(0.1, Vec::Constant(1, 0.1));
  CHECK(!backward_fd(h, 2).has_value());
  CHECK(backward_fd(h, 1).has_value());
}

TEST_CASE("backward_fd: empirical order on sin t") {
  for (int order = 1; order <= 3; ++order) {
    double errs[2];
    for (int half = 0; half < 2; ++half) {
      const double dt = half == 0 ? 1e-3 : 5e-4;
      auto h = sample_function([](double t) { return std::sin(t); }, dt, 4,
                               1.0);
      auto d = backward_fd(h, order);
      REQUIRE(d.has_value());
      errs[half] = std::abs((*d)[0] - std::cos(1.0));
    }
    const double ratio = errs[0] / errs[1];
    const double nominal = std::pow(2.0, order);
    CHECK(ratio > nominal * 0.7);
    CHECK(ratio < nominal * 1.3);
  }
}

TEST_CASE("history: non-uniform spacing rejected") {
  ObservationHistory h(4);
  h.push(0.0, Vec::Zero(1));
  h.push(0.1, Vec::Zero(1));
  CHECK_THROWS_AS(h.push(0.25, Vec::Zero(1)), ConfigError);
  CHECK_THROWS_AS(h.push(0.05, Vec::Zero(1)), ConfigError);
}

TEST_CASE("history: ring buffer evicts the oldest sample") {
  ObservationHistory h(4);
  for (int i = 0; i < 6; ++i) h.push(0.1 * i, Vec::Constant(1, double(i)));
  CHECK(h.size() == 4);
  CHECK(h.from_newest(0)[0] == 5.0);
  CHECK(h.from_newest(3)[0] == 2.0);
}

TEST_CASE("advance_coupled: exact-twin invariance on the scalar model") {
  SystemModel m = scalar_model();
  auto obs = ObservationOperator::full(1);
  auto nudge = NudgeConfig::uniform(10.0, obs);
  Vec lambda(1);
  lambda << 2.0;
  Vec init = Vec::Constant(1, 0.8);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  auto r = advance_coupled(m, m, lambda, lambda, init, init, nudge, obs,
                           {0.0, 2.0}, cfg, 0.1);
  CHECK((r.truth - r.nudged).norm() < 1e-12);
}

TEST_CASE("advance_coupled: scalar nudged steady state by t=5") {
  SystemModel m = scalar_model();
  auto obs = ObservationOperator::full(1);
  auto nudge = NudgeConfig::uniform(10.0, obs);
  Vec lambda_true(1), lambda_proxy(1);
  lambda_true << 2.0;
  lambda_proxy << 1.0;
  Vec truth0 = Vec::Constant(1, 0.5);  // exact steady state of the truth
  Vec nudged0 = Vec::Constant(1, 0.5);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  auto r = advance_coupled(m, m, lambda_true, lambda_proxy, truth0, nudged0,
                           nudge, obs, {0.0, 5.0}, cfg, 0.1);
  CHECK(std::abs(r.truth[0] - 0.5) < 1e-12);
  CHECK(std::abs(r.nudged[0] - 6.0 / 11.0) < 1e-10);
}

TEST_CASE("advance_coupled: adaptive scheme records uniform dense samples") {
  SystemModel m = scalar_model();
  auto obs = ObservationOperator::full(1);
  auto nudge = NudgeConfig::uniform(10.0, obs);
  Vec lambda(1);
  lambda << 2.0;
  Vec init = Vec::Constant(1, 0.1);
  IntegratorConfig cfg;
  cfg.scheme = Scheme::Rk45Adaptive;
  cfg.dt = 1e-3;
  auto r = advance_coupled(m, m, lambda, lambda, init, init, nudge, obs,
                           {0.0, 1.0}, cfg, 0.05, 32);
  CHECK(r.history.size() >= 8);
  CHECK(r.history.spacing() == doctest::Approx(0.05).epsilon(1e-12));
  // dense-output samples track the true solution u(t) -> 1/2
  const Vec& last = r.history.from_newest(0);
  const double t_last = r.history.newest_time();
  const double exact = 0.5 + (0.1 - 0.5) * std::exp(-2.0 * t_last);
  CHECK(std::abs(last[0] - exact) < 1e-7);
}

TEST_CASE("rk45 controller clamps growth and shrink factors") {
  CHECK(detail::dp45_next_dt(1.0, 0.0) == detail::kMaxStepGrowth);
  CHECK(detail::dp45_next_dt(1.0, 1e12) == detail::kMinStepShrink);
}
