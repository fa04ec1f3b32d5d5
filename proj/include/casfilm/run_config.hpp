#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "casfilm/dielectric.hpp"
#include "casfilm/quadrature.hpp"
#include "casfilm/reflection.hpp"

namespace casfilm {

// One diagonal axis of the permittivity tensor given as oscillators.
struct OscillatorAxisSpec {
  std::vector<Oscillator> oscillators;
  double eps_inf = 1.0;

  bool operator==(const OscillatorAxisSpec&) const = default;
};

// Film description as written in a config file. Axes yy/zz default to xx,
// so an isotropic film only spells out osc_xx and a uniaxial one adds
// osc_zz. source = table reads all three axes from one CSV instead;
// absorption tables are rotated onto the imaginary axis over a grid of
// xi_points nodes: 0 followed by xi_points-1 log-spaced values between
// xi_min_ev and xi_max_ev.
struct FilmSpec {
  enum class Source { oscillators, table };

  std::optional<double> thickness_nm;  // absent = half-space
  double orientation_rad = 0.0;
  Source source = Source::oscillators;

  std::optional<OscillatorAxisSpec> osc_xx, osc_yy, osc_zz;

  std::string data_file;  // source = table, relative to the config file
  double xi_min_ev = 1e-3;
  double xi_max_ev = 100.0;
  int xi_points = 80;

  bool operator==(const FilmSpec&) const = default;
};

struct SeparationSpec {
  enum class Spacing { log, linear };

  double min_nm = 1.0;
  double max_nm = 1000.0;
  int points = 30;
  Spacing spacing = Spacing::log;

  bool operator==(const SeparationSpec&) const = default;
};

struct OutputSpec {
  std::string csv;          // filename inside the output directory
  std::string plot_script;  // optional gnuplot script filename, empty = none
  std::string label;        // curve label, empty = derive from csv name

  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  enum class Mode { sweep, ratio };

  Mode mode = Mode::sweep;
  FilmSpec film1;
  std::optional<FilmSpec> film2;  // absent = same film on both sides
  SeparationSpec separation;
  QuadratureConfig quadrature;
  OutputSpec output;

  bool operator==(const RunConfig&) const = default;
};

// Parse an INI-style config. Line-oriented: '[section]' headers and
// 'key = value' pairs, '#' comment lines. Syntax errors carry the line
// number, validation errors name the offending key. parse_config and
// render_config are inverse: parse_config(render_config(c)) == c.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string render_config(const RunConfig& config);

// Strictly increasing gap grid from the separation block.
std::vector<double> build_separation_grid(const SeparationSpec& spec);

// Realize the dielectric models (loading and transforming tabulated data
// as needed) into a Film ready for reflection work.
Film materialize_film(const FilmSpec& spec,
                      const std::filesystem::path& config_dir);

}  // namespace casfilm
