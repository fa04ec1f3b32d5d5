#pragma once

#include <optional>

#include "casfilm/dielectric.hpp"

namespace casfilm {

// A single film: dielectric tensor, optional finite thickness (nullopt means
// half-space), and the in-plane rotation of its principal axes relative to
// the lab frame. The orientation is normalized into [0, 2pi).
struct Film {
    DielectricTensorModel tensor;
    std::optional<double> thickness_nm;
    double orientation_rad = 0.0;

    Film(DielectricTensorModel t,
         std::optional<double> d_nm = std::nullopt,
         double orient_rad = 0.0);

    bool is_half_space() const { return !thickness_nm.has_value(); }
};

// Reflection amplitudes of the two decoupled vacuum polarizations off a film
// with axial symmetry about the surface normal.
struct FresnelPair {
    double r_te = 0.0;
    double r_tm = 0.0;
};

// Full 2x2 reflection operator in the vacuum (TE, TM) basis. Off-diagonal
// entries are the polarization-conversion amplitudes.
struct ReflectionMatrix {
    double ss = 0.0;  // TE -> TE
    double sp = 0.0;  // TM -> TE
    double ps = 0.0;  // TE -> TM
    double pp = 0.0;  // TM -> TM

    double trace() const { return ss + pp; }
    double det() const { return ss * pp - sp * ps; }
    // Largest singular value; bounded by 1 for a passive layer.
    double spectral_radius() const;
};

// Reflection of a film whose tensor is isotropic. xi_ev >= 0, k_nm >= 0
// (inverse nanometres), not both zero.
FresnelPair slab_reflection_isotropic(const Film& film, double xi_ev,
                                      double k_nm);

// Reflection of a film whose tensor is uniaxial with the optic axis along
// the surface normal (in-plane components equal).
FresnelPair slab_reflection_uniaxial(const Film& film, double xi_ev,
                                     double k_nm);

// Reflection of a film with a general diagonal (biaxial) tensor. theta_rad
// is the azimuthal angle of the incidence plane in the lab frame; the film's
// own orientation_rad is folded in internally. Requires xi_ev > 0.
// The in-film mode eigenproblem is always diagonalizable for a diagonal
// tensor rotated in plane; should a degenerate point ever be hit through
// rounding, it raises NumericalError and nudging theta_rad by ~1e-9 moves
// off the point.
ReflectionMatrix slab_reflection_biaxial(const Film& film, double xi_ev,
                                         double k_nm, double theta_rad);

// Dispatch on the tensor classification: returns the full 2x2 operator,
// embedding the Fresnel pair on the diagonal for the symmetric classes.
ReflectionMatrix reflection(const Film& film, double xi_ev, double k_nm,
                            double theta_rad);

// Same, but force evaluation through the machinery of a wider class
// (isotropic film through the uniaxial or biaxial path, uniaxial through
// biaxial). Narrowing is a ValidationError.
ReflectionMatrix reflection_via(TensorClass path, const Film& film,
                                double xi_ev, double k_nm, double theta_rad);

}  // namespace casfilm
