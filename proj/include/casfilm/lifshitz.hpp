#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "casfilm/quadrature.hpp"
#include "casfilm/reflection.hpp"

namespace casfilm {

// Scalar coupling of the two cavity mirrors at one (xi, k, theta) node.
// decay is the one-gap round trip e^{-2 kappa L}. Both functions throw
// NumericalError when the coupling leaves the passive regime.
//
// coupling_log_det   = ln det(I - R1 R2 decay)        (energy kernel)
// coupling_trace_term = Tr[D (I - D)^-1], D = R1 R2 decay  (pressure kernel)
double coupling_log_det(const ReflectionMatrix& r1, const ReflectionMatrix& r2,
                        double decay);
double coupling_trace_term(const ReflectionMatrix& r1,
                           const ReflectionMatrix& r2, double decay);

// How the azimuthal integral can be folded.
enum class AzimuthalSymmetry { axial, quarter_turn, half_turn };

using ReflectionProvider =
    std::function<ReflectionMatrix(double xi_ev, double k_nm, double theta_rad)>;

// The two mirrors facing each other across the vacuum gap.
struct CavitySides {
    ReflectionProvider side1;
    ReflectionProvider side2;
    AzimuthalSymmetry symmetry = AzimuthalSymmetry::axial;
};

// Build the cavity from two material films. force_path routes both films
// through the machinery of a wider tensor class (never narrower); the
// azimuthal reduction is chosen for the forced class.
CavitySides material_cavity(const Film& film1, const Film& film2,
                            std::optional<TensorClass> force_path = std::nullopt);

// Perfectly reflecting mirrors on both sides.
CavitySides ideal_mirror_cavity();

// Closed-form references for ideal mirrors.
double ideal_mirror_energy_j_m2(double gap_nm);
double ideal_mirror_pressure_pa(double gap_nm);

struct LifshitzResult {
    double value = 0.0;      // J/m^2 for energy, Pa for pressure
    double rel_error = 0.0;  // quadrature error estimate, relative
    std::size_t evaluations = 0;
};

// Interaction energy per unit area (J/m^2, negative for attraction) and
// pressure (Pa, negative for attraction) of the cavity at gap L.
// Throws NonConvergenceError when the outer integral misses the tolerance;
// its best estimate rides along in the exception.
LifshitzResult energy_per_area(const CavitySides& cavity, double gap_nm,
                               const QuadratureConfig& cfg = {});
LifshitzResult pressure(const CavitySides& cavity, double gap_nm,
                        const QuadratureConfig& cfg = {});

struct ForcePoint {
    double gap_nm = 0.0;
    double energy_j_m2 = 0.0;
    double pressure_pa = 0.0;
    double rel_error = 0.0;
    bool ok = false;
    std::string message;  // failure note when !ok
};

struct RatioPoint {
    double gap_nm = 0.0;
    double energy_j_m2 = 0.0;    // numerator cavity
    double pressure_pa = 0.0;    // numerator cavity
    double baseline_pa = 0.0;
    double ratio = 0.0;          // pressure / baseline pressure
    double rel_error = 0.0;
    bool ok = false;
    std::string message;
};

// Evaluate the cavity on a gap grid. Points are independent and run in
// parallel; failures are recorded per point instead of aborting the sweep.
std::vector<ForcePoint> sweep_curve(const CavitySides& cavity,
                                    const std::vector<double>& gaps_nm,
                                    const QuadratureConfig& cfg = {});

// Pressure of one cavity normalized by another, point by point.
std::vector<RatioPoint> force_ratio_curve(const CavitySides& cavity,
                                          const CavitySides& baseline,
                                          const std::vector<double>& gaps_nm,
                                          const QuadratureConfig& cfg = {});

}  // namespace casfilm
