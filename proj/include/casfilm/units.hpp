#pragma once

// Internal unit system: energies (and imaginary frequencies xi) in eV,
// lengths in nm, wavenumbers in 1/nm.  Converted only at the output edge.

namespace casfilm {

inline constexpr double hbar_c_ev_nm = 197.3269804;  // hbar*c [eV nm]

// 1 eV/nm^2 in J/m^2 and 1 eV/nm^3 in Pa (elementary charge is exact)
inline constexpr double ev_nm2_to_j_m2 = 0.1602176634;
inline constexpr double ev_nm3_to_pa = 1.602176634e8;

inline constexpr double pi = 3.14159265358979323846;

}  // namespace casfilm
