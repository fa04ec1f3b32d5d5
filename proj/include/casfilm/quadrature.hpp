#pragma once

#include <functional>

namespace casfilm {

struct QuadratureConfig {
  double rel_tol_outer = 1e-7;   // tolerance for the integral itself
  double rel_tol_inner = 1e-8;   // tolerance handed to nested integrals
  double abs_floor = 1e-300;     // absolute target when the value is ~0
  int max_depth = 30;            // bisection depth limit per panel
  int rule_points = 15;          // nested Gauss-Kronrod pair: 15 or 21

  void validate() const;

  // config for an integral nested one level deeper: a decade tighter
  QuadratureConfig inner() const;

  bool operator==(const QuadratureConfig&) const = default;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  bool converged = false;
  long evaluations = 0;
};

// Adaptive Gauss-Kronrod over (a, b).  Open in practice: the rule has no
// abscissa at either endpoint, so f is never called at a or b.
// Worst-error panel is bisected first; ties pick the lower interval.
QuadratureResult integrate_finite(const std::function<double(double)>& f,
                                  double a, double b,
                                  const QuadratureConfig& cfg);

// integral over (a, inf) via t = a + s/(1-s), ds jacobian 1/(1-s)^2
QuadratureResult integrate_semi_infinite(
    const std::function<double(double)>& f, double a,
    const QuadratureConfig& cfg);

}  // namespace casfilm
