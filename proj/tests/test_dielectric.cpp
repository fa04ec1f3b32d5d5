#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "casfilm/dielectric.hpp"
#include "casfilm/errors.hpp"
#include "casfilm/units.hpp"

using namespace casfilm;

namespace {

// closed-form transform of eps''(w) = C*w on [0, W], zero elsewhere:
//   eps(i xi) = 1 + (2C/pi) * (W - xi*atan(W/xi))
double linear_spectrum_closed_form(double c, double w, double xi) {
  if (xi == 0.0) return 1.0 + (2.0 * c / pi) * w;
  return 1.0 + (2.0 * c / pi) * (w - xi * std::atan(w / xi));
}

// triangular peak at w0, half width hw, with the area (pi/2) wp^2 / w0 of an
// undamped Lorentz absorption line
AbsorptionSpectrum lorentz_peak(double wp, double w0, double hw) {
  const double area = 0.5 * pi * wp * wp / w0;
  const double height = area / hw;
  return AbsorptionSpectrum(
      {{w0 - hw, 0.0}, {w0, height}, {w0 + hw, 0.0}});
}

}  // namespace

TEST_CASE("oscillator model on the imaginary axis") {
  OscillatorSet plasma({{2.0, 0.0, 0.0}});
  CHECK(plasma.evaluate(2.0) == doctest::Approx(2.0).epsilon(1e-15));

  OscillatorSet si_like({{11.1, 3.4, 0.0}});
  CHECK(si_like.evaluate(0.0) ==
        doctest::Approx(1.0 + std::pow(11.1 / 3.4, 2)).epsilon(1e-15));

  // large-xi limit approaches eps_inf
  OscillatorSet with_inf({{11.1, 3.4, 0.0}}, 2.5);
  CHECK(with_inf.evaluate(1e8) == doctest::Approx(2.5).epsilon(1e-12));

  CHECK_THROWS_AS(si_like.evaluate(-1.0), std::domain_error);
  CHECK_THROWS_AS(OscillatorSet({{-1.0, 3.4, 0.0}}), ValidationError);
  CHECK_THROWS_AS(OscillatorSet({}, 0.5), ValidationError);
}

TEST_CASE("oscillator response decreases monotonically in xi") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Oscillator> osc;
    int n = 1 + int(u(rng) * 3);
    for (int j = 0; j < n; ++j)
      osc.push_back({15.0 * u(rng), 10.0 * u(rng) + 0.01, 2.0 * u(rng)});
    OscillatorSet m(osc, 1.0 + u(rng));
    double prev = m.evaluate(0.0);
    for (double xi : {0.01, 0.1, 0.5, 2.0, 9.0, 40.0}) {
      double e = m.evaluate(xi);
      CHECK(e >= m.epsilon_infinity());
      CHECK(e <= prev);
      prev = e;
    }
  }
}

TEST_CASE("london transform reproduces the linear-spectrum antiderivative") {
  // support starts a hair above zero; contributes O(1e-9) to the integral
  AbsorptionSpectrum spec({{1e-9, 1e-9}, {1.0, 1.0}});
  std::vector<double> grid = {0.0, 0.3, 1.0, 3.0, 10.0};
  auto resp = london_transform(spec, grid);
  for (size_t i = 0; i < grid.size(); ++i) {
    const double expected = linear_spectrum_closed_form(1.0, 1.0, grid[i]);
    CHECK(resp.grid()[i].eps == doctest::Approx(expected).epsilon(1e-7));
  }
  // frozen spot value: 1 + 2/pi at xi = 0
  CHECK(resp.grid()[0].eps ==
        doctest::Approx(1.6366197723675814).epsilon(1e-7));
}

TEST_CASE("london transform of a vanishing spectrum is vacuum") {
  AbsorptionSpectrum spec({{0.5, 0.0}, {2.0, 0.0}});
  std::vector<double> grid = {0.0, 1.0, 5.0};
  auto resp = london_transform(spec, grid);
  for (const auto& n : resp.grid()) CHECK(n.eps == 1.0);
  CHECK(resp.tail_coefficient() == 0.0);
}

TEST_CASE("narrow lorentz peak converges to the oscillator closed form") {
  const double wp = 1.0, w0 = 1.0;
  std::vector<double> grid = {0.0, 0.5, 1.0, 2.0, 5.0};
  double prev_worst = 1e30;
  for (double hw : {0.2, 0.1, 0.05}) {
    auto resp = london_transform(lorentz_peak(wp, w0, hw), grid);
    double worst = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
      const double xi = grid[i];
      const double closed = 1.0 + wp * wp / (w0 * w0 + xi * xi);
      worst = std::max(worst, std::abs(resp.grid()[i].eps - closed));
    }
    CHECK(worst < prev_worst);
    prev_worst = worst;
  }
  CHECK(prev_worst < 2e-3);

  // spec spot check at xi = 1: 1 + 1/(1+1) = 1.5 up to discretization
  auto resp = london_transform(lorentz_peak(1.0, 1.0, 0.05), grid);
  CHECK(resp.grid()[2].eps == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("tabulated response interpolates, clamps and decays") {
  ImaginaryAxisResponse resp({{0.0, 12.0}, {1.0, 6.5}, {10.0, 1.04}});

  CHECK(resp.evaluate(0.5) == doctest::Approx(9.25).epsilon(1e-15));
  CHECK(resp.evaluate(0.0) == 12.0);   // node value, exact
  CHECK(resp.evaluate(1.0) == 6.5);
  CHECK(resp.evaluate(10.0) == 1.04);

  // tail: A = (1.04 - 1) * 100 = 4
  CHECK(resp.tail_coefficient() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(resp.evaluate(20.0) == doctest::Approx(1.01).epsilon(1e-15));

  // below the grid the response is clamped to the first value
  ImaginaryAxisResponse shifted({{0.5, 3.0}, {2.0, 2.0}});
  CHECK(shifted.evaluate(0.1) == 3.0);

  // xi^2 (eps - 1) approaches the tail coefficient
  for (double xi : {15.0, 40.0, 200.0}) {
    CHECK(xi * xi * (resp.evaluate(xi) - 1.0) ==
          doctest::Approx(4.0).epsilon(1e-12));
  }
}

TEST_CASE("tabulated response validation") {
  CHECK_THROWS_AS(ImaginaryAxisResponse({{0.0, 2.0}}), ValidationError);
  CHECK_THROWS_AS(ImaginaryAxisResponse({{0.0, 2.0}, {0.0, 1.5}}),
                  ValidationError);
  CHECK_THROWS_AS(ImaginaryAxisResponse({{0.0, 2.0}, {1.0, 2.5}}),
                  ValidationError);  // increasing
  CHECK_THROWS_AS(ImaginaryAxisResponse({{0.0, 0.9}, {1.0, 0.8}}),
                  ValidationError);  // below vacuum
  ImaginaryAxisResponse ok({{0.0, 2.0}, {1.0, 1.5}});
  CHECK_THROWS_AS(ok.evaluate(-0.5), std::domain_error);
}

TEST_CASE("absorption spectrum validation and interpolation") {
  CHECK_THROWS_AS(AbsorptionSpectrum({{1.0, 0.5}}), ValidationError);
  CHECK_THROWS_AS(AbsorptionSpectrum({{1.0, 0.5}, {1.0, 0.6}}),
                  ValidationError);
  CHECK_THROWS_AS(AbsorptionSpectrum({{1.0, 0.5}, {2.0, -0.1}}),
                  ValidationError);  // passivity
  CHECK_THROWS_AS(AbsorptionSpectrum({{0.0, 0.5}, {2.0, 0.1}}),
                  ValidationError);  // omega must be positive

  AbsorptionSpectrum s({{1.0, 0.0}, {2.0, 4.0}, {4.0, 0.0}});
  CHECK(s.interpolate(1.5) == doctest::Approx(2.0));
  CHECK(s.interpolate(3.0) == doctest::Approx(2.0));
  CHECK(s.interpolate(0.5) == 0.0);
  CHECK(s.interpolate(5.0) == 0.0);
}

TEST_CASE("london transform output stays on the stored grid") {
  auto resp = london_transform(lorentz_peak(2.0, 3.0, 0.3),
                               std::vector<double>{0.0, 1.0, 4.0, 20.0});
  // evaluating at a grid node returns the stored value exactly
  for (const auto& n : resp.grid()) CHECK(resp.evaluate(n.xi_ev) == n.eps);
  // transform output is >= 1 and non-increasing by construction
  for (size_t i = 1; i < resp.grid().size(); ++i) {
    CHECK(resp.grid()[i].eps >= 1.0);
    CHECK(resp.grid()[i].eps <= resp.grid()[i - 1].eps);
  }
}

TEST_CASE("tensor classification follows model equality") {
  AxisModel bulk = OscillatorSet({{11.1, 3.4, 0.0}});
  AxisModel softer = OscillatorSet({{11.1, 3.55, 0.0}});
  AxisModel softest = OscillatorSet({{11.1, 3.65, 0.0}});

  auto iso = DielectricTensorModel::make_isotropic(bulk);
  CHECK(iso.classification() == TensorClass::isotropic);

  auto uni = DielectricTensorModel::make_uniaxial(bulk, softer);
  CHECK(uni.classification() == TensorClass::uniaxial);

  DielectricTensorModel bi(bulk, softer, softest);
  CHECK(bi.classification() == TensorClass::biaxial);

  // xx = zz != yy is biaxial, not uniaxial: only lateral degeneracy counts
  DielectricTensorModel cross(bulk, softer, bulk);
  CHECK(cross.classification() == TensorClass::biaxial);

  // identical parameters classify isotropic even without shared objects
  DielectricTensorModel same(OscillatorSet({{11.1, 3.4, 0.0}}),
                             OscillatorSet({{11.1, 3.4, 0.0}}),
                             OscillatorSet({{11.1, 3.4, 0.0}}));
  CHECK(same.classification() == TensorClass::isotropic);
}

TEST_CASE("tensor evaluation is consistent and bitwise degenerate") {
  AxisModel bulk = OscillatorSet({{11.1, 3.4, 0.0}});
  AxisModel softer = OscillatorSet({{10.2, 3.6, 0.1}});
  auto uni = DielectricTensorModel::make_uniaxial(bulk, softer);
  for (double xi : {0.0, 0.13, 2.7, 31.0}) {
    auto c = uni.evaluate(xi);
    CHECK(c.xx == c.yy);  // bit identical by contract
    CHECK(c.xx >= 1.0);
    CHECK(c.zz >= 1.0);
  }

  auto mixed = DielectricTensorModel(
      bulk, softer, AxisModel(ImaginaryAxisResponse({{0.0, 4.0}, {5.0, 1.2}})));
  auto c = mixed.evaluate(1.0);
  CHECK(c.xx == doctest::Approx(eval_axis(bulk, 1.0)));
  CHECK(c.yy == doctest::Approx(eval_axis(softer, 1.0)));
  CHECK(c.zz == doctest::Approx(4.0 - (4.0 - 1.2) / 5.0).epsilon(1e-14));
}
