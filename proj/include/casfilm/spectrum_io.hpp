#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "casfilm/dielectric.hpp"

namespace casfilm {

// Per-axis tabulated response on the imaginary axis, one column per tensor
// component.
struct ResponseTable {
    ImaginaryAxisResponse xx, yy, zz;
};

// Per-axis absorption spectra on the real axis, to be transformed.
struct AbsorptionTable {
    AbsorptionSpectrum xx, yy, zz;
};

using SpectrumData = std::variant<ResponseTable, AbsorptionTable>;

// Parse CSV text whose header selects the table kind:
//   xi_eV,eps_xx,eps_yy,eps_zz        -> ResponseTable
//   omega_eV,eps2_xx,eps2_yy,eps2_zz  -> AbsorptionTable
// '#' lines and blank lines are ignored. origin names the source in error
// messages.
SpectrumData parse_spectrum_csv(const std::string& text,
                                const std::string& origin);

SpectrumData load_spectrum_csv(const std::filesystem::path& path);

}  // namespace casfilm
