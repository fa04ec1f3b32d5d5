#include <doctest.h>

#include <cmath>
#include <vector>

#include "casfilm/errors.hpp"
#include "casfilm/quadrature.hpp"
#include "casfilm/units.hpp"

using namespace casfilm;

namespace {

QuadratureConfig tight() {
  QuadratureConfig c;
  c.rel_tol_outer = 1e-10;
  c.rel_tol_inner = 1e-11;
  return c;
}

}  // namespace

TEST_CASE("finite rule integrates smooth functions") {
  QuadratureConfig cfg;
  auto r = integrate_finite([](double x) { return x * x; }, 0.0, 1.0, cfg);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  r = integrate_finite([](double x) { return std::sin(x); }, 0.0, pi, cfg);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("endpoint singularity is never touched (open rule)") {
  // ln x is -inf at 0; the rule must not sample the endpoint
  QuadratureConfig cfg;
  cfg.rel_tol_outer = 1e-9;
  auto r = integrate_finite([](double x) { return std::log(x); }, 0.0, 1.0,
                            cfg);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::isfinite(r.value));
}

TEST_CASE("semi-infinite map handles exponential and algebraic tails") {
  QuadratureConfig cfg = tight();
  auto r = integrate_semi_infinite([](double t) { return std::exp(-t); }, 0.0,
                                   cfg);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));

  r = integrate_semi_infinite([](double t) { return t * std::exp(-t); }, 0.0,
                              cfg);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));

  r = integrate_semi_infinite([](double t) { return 1.0 / (1.0 + t * t); },
                              0.0, cfg);
  CHECK(r.value == doctest::Approx(pi / 2.0).epsilon(1e-10));

  // shifted lower bound
  r = integrate_semi_infinite([](double t) { return std::exp(-t); }, 2.5, cfg);
  CHECK(r.value == doctest::Approx(std::exp(-2.5)).epsilon(1e-10));
}

TEST_CASE("error estimate bounds the true error on analytic cases") {
  struct Case {
    std::function<double(double)> f;
    double a, b;
    double truth;
    double rel_tol;  // bisection without extrapolation limits x^-1/2
  };
  const std::vector<Case> cases = {
      {[](double x) { return x * x; }, 0.0, 1.0, 1.0 / 3.0, 1e-9},
      {[](double x) { return std::sin(x); }, 0.0, pi, 2.0, 1e-9},
      {[](double x) { return std::log(x); }, 0.0, 1.0, -1.0, 1e-9},
      {[](double x) { return std::exp(-x * x); }, -6.0, 6.0, std::sqrt(pi),
       1e-9},
      {[](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 2.0, 1e-4},
  };
  for (const auto& c : cases) {
    QuadratureConfig cfg;
    cfg.rel_tol_outer = c.rel_tol;
    auto r = integrate_finite(c.f, c.a, c.b, cfg);
    CHECK(r.converged);
    const double true_err = std::abs(r.value - c.truth);
    // allow a small roundoff cushion on top of the estimate
    CHECK(true_err <= r.error + 1e-13 * std::abs(c.truth));
  }
}

TEST_CASE("both rule orders agree") {
  QuadratureConfig c15;
  QuadratureConfig c21;
  c21.rule_points = 21;
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  auto r15 = integrate_finite(f, 0.0, 4.0, c15);
  auto r21 = integrate_finite(f, 0.0, 4.0, c21);
  CHECK(r15.converged);
  CHECK(r21.converged);
  CHECK(r15.value == doctest::Approx(r21.value).epsilon(1e-9));
}

TEST_CASE("repeated integration is bit-identical") {
  auto f = [](double x) { return std::sqrt(x) * std::exp(-x); };
  QuadratureConfig cfg;
  auto r1 = integrate_semi_infinite(f, 0.0, cfg);
  auto r2 = integrate_semi_infinite(f, 0.0, cfg);
  CHECK(r1.value == r2.value);  // exact equality, not approx
  CHECK(r1.error == r2.error);
  CHECK(r1.evaluations == r2.evaluations);
}

TEST_CASE("zero integrand converges immediately") {
  auto r = integrate_semi_infinite([](double) { return 0.0; }, 0.0,
                                   QuadratureConfig{});
  CHECK(r.converged);
  CHECK(r.value == 0.0);
}

TEST_CASE("depth exhaustion reports non-convergence with best estimate") {
  QuadratureConfig cfg;
  cfg.rel_tol_outer = 1e-12;
  cfg.rel_tol_inner = 1e-12;
  cfg.max_depth = 2;  // far too shallow for this integrand
  auto r = integrate_finite([](double x) { return std::log(x); }, 0.0, 1.0,
                            cfg);
  CHECK(!r.converged);
  CHECK(r.value == doctest::Approx(-1.0).epsilon(0.1));  // still near truth
  CHECK(r.error > 0.0);
}

TEST_CASE("config validation rejects nonsense") {
  QuadratureConfig cfg;
  cfg.rel_tol_outer = -1.0;
  CHECK_THROWS_AS(integrate_finite([](double) { return 0.0; }, 0.0, 1.0, cfg),
                  ValidationError);
  cfg = QuadratureConfig{};
  cfg.rule_points = 17;
  CHECK_THROWS_AS(integrate_finite([](double) { return 0.0; }, 0.0, 1.0, cfg),
                  ValidationError);
  cfg = QuadratureConfig{};
  CHECK_THROWS_AS(
      integrate_finite([](double) { return 0.0; }, 1.0, 0.0, cfg),
      ValidationError);
}

TEST_CASE("nested config is one decade tighter") {
  QuadratureConfig cfg;
  auto in = cfg.inner();
  CHECK(in.rel_tol_outer == cfg.rel_tol_inner);
  CHECK(in.rel_tol_inner == doctest::Approx(cfg.rel_tol_inner / 10.0));
}
