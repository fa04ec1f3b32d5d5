#pragma once

#include <span>
#include <variant>
#include <vector>

#include "casfilm/quadrature.hpp"

namespace casfilm {

// Drude-Lorentz oscillator evaluated on the imaginary frequency axis.
// A term with resonance_ev == 0 and damping_ev == 0 is a pure plasma term.
struct Oscillator {
  double plasma_ev = 0.0;     // omega_p
  double resonance_ev = 0.0;  // omega_0
  double damping_ev = 0.0;    // gamma

  bool operator==(const Oscillator&) const = default;
};

// eps(i xi) = eps_inf + sum_j wp_j^2 / (w0_j^2 + xi^2 + gamma_j xi)
class OscillatorSet {
 public:
  explicit OscillatorSet(std::vector<Oscillator> oscillators,
                         double epsilon_infinity = 1.0);

  double evaluate(double xi_ev) const;

  const std::vector<Oscillator>& oscillators() const { return oscillators_; }
  double epsilon_infinity() const { return epsilon_infinity_; }

  bool operator==(const OscillatorSet&) const = default;

 private:
  std::vector<Oscillator> oscillators_;
  double epsilon_infinity_ = 1.0;
};

// measured (or synthetic) absorption eps''(omega) on the real axis,
// linearly interpolated between samples, zero outside the support
struct SpectrumSample {
  double omega_ev = 0.0;
  double eps2 = 0.0;

  bool operator==(const SpectrumSample&) const = default;
};

class AbsorptionSpectrum {
 public:
  explicit AbsorptionSpectrum(std::vector<SpectrumSample> samples);

  double interpolate(double omega_ev) const;
  const std::vector<SpectrumSample>& samples() const { return samples_; }

  bool operator==(const AbsorptionSpectrum&) const = default;

 private:
  std::vector<SpectrumSample> samples_;
};

// eps(i xi) tabulated on an increasing xi grid.  Constant below the grid,
// linear between nodes, and 1 + A/xi^2 beyond the last node with A fixed
// by continuity.
struct ResponseNode {
  double xi_ev = 0.0;
  double eps = 1.0;

  bool operator==(const ResponseNode&) const = default;
};

class ImaginaryAxisResponse {
 public:
  explicit ImaginaryAxisResponse(std::vector<ResponseNode> grid);

  double evaluate(double xi_ev) const;
  double tail_coefficient() const { return tail_a_; }
  const std::vector<ResponseNode>& grid() const { return grid_; }

  bool operator==(const ImaginaryAxisResponse& o) const {
    return grid_ == o.grid_;
  }

 private:
  std::vector<ResponseNode> grid_;
  double tail_a_ = 0.0;
};

// Kramers-Kronig style rotation to the imaginary axis:
//   eps(i xi) = 1 + (2/pi) \int_0^inf w eps''(w) / (w^2 + xi^2) dw
ImaginaryAxisResponse london_transform(const AbsorptionSpectrum& spectrum,
                                       std::span<const double> xi_grid_ev,
                                       const QuadratureConfig& quad = {});

using AxisModel = std::variant<OscillatorSet, ImaginaryAxisResponse>;

double eval_axis(const AxisModel& model, double xi_ev);

enum class TensorClass { isotropic, uniaxial, biaxial };

struct TensorComponents {
  double xx = 1.0, yy = 1.0, zz = 1.0;
};

// diagonal permittivity tensor in the film principal frame; x/y lateral,
// z along the surface normal
class DielectricTensorModel {
 public:
  DielectricTensorModel(AxisModel xx, AxisModel yy, AxisModel zz);

  static DielectricTensorModel make_isotropic(AxisModel m);
  static DielectricTensorModel make_uniaxial(AxisModel lateral,
                                             AxisModel normal);

  // isotropic: xx = yy = zz; uniaxial: xx = yy != zz (model equality)
  TensorClass classification() const { return class_; }

  TensorComponents evaluate(double xi_ev) const;

  const AxisModel& xx() const { return xx_; }
  const AxisModel& yy() const { return yy_; }
  const AxisModel& zz() const { return zz_; }

  bool operator==(const DielectricTensorModel&) const = default;

 private:
  AxisModel xx_, yy_, zz_;
  TensorClass class_ = TensorClass::isotropic;
};

}  // namespace casfilm
