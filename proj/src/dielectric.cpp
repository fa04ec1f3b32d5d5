#include "casfilm/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "casfilm/errors.hpp"
#include "casfilm/units.hpp"

namespace casfilm {

OscillatorSet::OscillatorSet(std::vector<Oscillator> oscillators,
                             double epsilon_infinity)
    : oscillators_(std::move(oscillators)),
      epsilon_infinity_(epsilon_infinity) {
  if (!(epsilon_infinity_ >= 1.0) || !std::isfinite(epsilon_infinity_))
    throw ValidationError("epsilon_infinity must be finite and >= 1");
  for (const Oscillator& o : oscillators_) {
    if (!(o.plasma_ev >= 0.0) || !(o.resonance_ev >= 0.0) ||
        !(o.damping_ev >= 0.0))
      throw ValidationError(
          "oscillator strengths, resonances and dampings must be >= 0");
  }
}

double OscillatorSet::evaluate(double xi_ev) const {
  if (xi_ev < 0.0) throw std::domain_error("xi must be >= 0");
  double eps = epsilon_infinity_;
  for (const Oscillator& o : oscillators_) {
    eps += o.plasma_ev * o.plasma_ev /
           (o.resonance_ev * o.resonance_ev + xi_ev * xi_ev +
            o.damping_ev * xi_ev);
  }
  return eps;
}

AbsorptionSpectrum::AbsorptionSpectrum(std::vector<SpectrumSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2)
    throw ValidationError("absorption spectrum needs at least 2 samples");
  double prev = 0.0;
  for (const SpectrumSample& s : samples_) {
    if (!(s.omega_ev > prev))
      throw ValidationError(
          "spectrum frequencies must be positive and strictly increasing");
    if (!(s.eps2 >= 0.0))
      throw ValidationError("negative eps'' violates passivity");
    prev = s.omega_ev;
  }
}

double AbsorptionSpectrum::interpolate(double omega_ev) const {
  if (omega_ev <= samples_.front().omega_ev ||
      omega_ev >= samples_.back().omega_ev) {
    if (omega_ev == samples_.front().omega_ev) return samples_.front().eps2;
    if (omega_ev == samples_.back().omega_ev) return samples_.back().eps2;
    return 0.0;
  }
  auto hi = std::lower_bound(
      samples_.begin(), samples_.end(), omega_ev,
      [](const SpectrumSample& s, double w) { return s.omega_ev < w; });
  if (hi->omega_ev == omega_ev) return hi->eps2;
  auto lo = hi - 1;
  const double t = (omega_ev - lo->omega_ev) / (hi->omega_ev - lo->omega_ev);
  return lo->eps2 + t * (hi->eps2 - lo->eps2);
}

ImaginaryAxisResponse::ImaginaryAxisResponse(std::vector<ResponseNode> grid)
    : grid_(std::move(grid)) {
  if (grid_.size() < 2)
    throw ValidationError("imaginary-axis grid needs at least 2 nodes");
  double prev_xi = -1.0;
  double prev_eps = std::numeric_limits<double>::infinity();
  for (const ResponseNode& n : grid_) {
    if (!(n.xi_ev >= 0.0) || !(n.xi_ev > prev_xi))
      throw ValidationError("xi grid must be >= 0 and strictly increasing");
    if (!(n.eps >= 1.0) || !std::isfinite(n.eps))
      throw ValidationError("eps(i xi) must be finite and >= 1");
    if (n.eps > prev_eps)
      throw ValidationError("eps(i xi) must be non-increasing");
    prev_xi = n.xi_ev;
    prev_eps = n.eps;
  }
  const ResponseNode& last = grid_.back();
  tail_a_ = (last.eps - 1.0) * last.xi_ev * last.xi_ev;
}

double ImaginaryAxisResponse::evaluate(double xi_ev) const {
  if (xi_ev < 0.0) throw std::domain_error("xi must be >= 0");
  if (xi_ev <= grid_.front().xi_ev) return grid_.front().eps;
  if (xi_ev >= grid_.back().xi_ev) {
    if (xi_ev == grid_.back().xi_ev) return grid_.back().eps;
    return 1.0 + tail_a_ / (xi_ev * xi_ev);
  }
  auto hi = std::lower_bound(
      grid_.begin(), grid_.end(), xi_ev,
      [](const ResponseNode& n, double xi) { return n.xi_ev < xi; });
  if (hi->xi_ev == xi_ev) return hi->eps;  // grid nodes reproduce exactly
  auto lo = hi - 1;
  const double t = (xi_ev - lo->xi_ev) / (hi->xi_ev - lo->xi_ev);
  return lo->eps + t * (hi->eps - lo->eps);
}

ImaginaryAxisResponse london_transform(const AbsorptionSpectrum& spectrum,
                                       std::span<const double> xi_grid_ev,
                                       const QuadratureConfig& quad) {
  if (xi_grid_ev.size() < 2)
    throw ValidationError("london transform needs at least 2 xi nodes");
  for (size_t i = 0; i < xi_grid_ev.size(); ++i) {
    if (!(xi_grid_ev[i] >= 0.0) ||
        (i > 0 && !(xi_grid_ev[i] > xi_grid_ev[i - 1])))
      throw ValidationError("xi grid must be >= 0 and strictly increasing");
  }

  const auto& samples = spectrum.samples();
  std::vector<ResponseNode> nodes;
  nodes.reserve(xi_grid_ev.size());
  for (double xi : xi_grid_ev) {
    // segment-wise so the interpolation kinks never straddle a panel
    double integral = 0.0;
    for (size_t s = 0; s + 1 < samples.size(); ++s) {
      auto f = [&spectrum, xi](double w) {
        return w * spectrum.interpolate(w) / (w * w + xi * xi);
      };
      auto r = integrate_finite(f, samples[s].omega_ev,
                                samples[s + 1].omega_ev, quad);
      if (!r.converged)
        throw NonConvergenceError("london transform segment did not converge",
                                  1.0 + (2.0 / pi) * (integral + r.value),
                                  r.error);
      integral += r.value;
    }
    double eps = 1.0 + (2.0 / pi) * integral;
    // the exact transform is non-increasing; clip quadrature noise only
    if (!nodes.empty() && eps > nodes.back().eps) {
      if (eps - nodes.back().eps > 1e-10 * nodes.back().eps)
        throw NumericalError("london transform lost monotonicity");
      eps = nodes.back().eps;
    }
    nodes.push_back({xi, eps});
  }
  return ImaginaryAxisResponse(std::move(nodes));
}

double eval_axis(const AxisModel& model, double xi_ev) {
  return std::visit([xi_ev](const auto& m) { return m.evaluate(xi_ev); },
                    model);
}

namespace {

TensorClass classify(const AxisModel& xx, const AxisModel& yy,
                     const AxisModel& zz) {
  const bool lat = xx == yy;
  if (lat && yy == zz) return TensorClass::isotropic;
  if (lat) return TensorClass::uniaxial;
  return TensorClass::biaxial;
}

}  // namespace

DielectricTensorModel::DielectricTensorModel(AxisModel xx, AxisModel yy,
                                             AxisModel zz)
    : xx_(std::move(xx)), yy_(std::move(yy)), zz_(std::move(zz)),
      class_(classify(xx_, yy_, zz_)) {}

DielectricTensorModel DielectricTensorModel::make_isotropic(AxisModel m) {
  AxisModel a = m, b = m;
  return DielectricTensorModel(std::move(a), std::move(b), std::move(m));
}

DielectricTensorModel DielectricTensorModel::make_uniaxial(AxisModel lateral,
                                                           AxisModel normal) {
  AxisModel a = lateral;
  return DielectricTensorModel(std::move(a), std::move(lateral),
                               std::move(normal));
}

TensorComponents DielectricTensorModel::evaluate(double xi_ev) const {
  TensorComponents c;
  c.xx = eval_axis(xx_, xi_ev);
  // equal models share the evaluation, bit for bit
  c.yy = (class_ == TensorClass::biaxial) ? eval_axis(yy_, xi_ev) : c.xx;
  c.zz = (class_ == TensorClass::isotropic) ? c.xx : eval_axis(zz_, xi_ev);
  return c;
}

}  // namespace casfilm
