#include "casfilm/workbench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "casfilm/errors.hpp"
#include "casfilm/plot_script.hpp"

namespace casfilm {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string curve_label(const RunConfig& cfg) {
  if (!cfg.output.label.empty()) return cfg.output.label;
  return std::filesystem::path(cfg.output.csv).stem().string();
}

void emit_plot(const RunConfig& cfg, const std::filesystem::path& out_dir,
               bool ratio_mode) {
  if (cfg.output.plot_script.empty()) return;
  write_plot_script(out_dir / cfg.output.plot_script,
                    {{cfg.output.csv, curve_label(cfg)}}, ratio_mode);
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // \n endings on any platform
  if (!out)
    throw ValidationError("cannot write output file '" + path.string() + "'");
  return out;
}

CavitySides build_cavity(const RunConfig& cfg,
                         const std::filesystem::path& config_dir) {
  Film film1 = materialize_film(cfg.film1, config_dir);
  if (!cfg.film2) return material_cavity(film1, film1);
  Film film2 = materialize_film(*cfg.film2, config_dir);
  return material_cavity(film1, film2);
}

int finish(const std::filesystem::path& csv_path, std::size_t total,
           std::size_t failed, std::ostream& log, std::ostream& err) {
  log << "wrote " << csv_path.string() << " (" << total << " points)\n";
  if (failed) {
    err << failed << " of " << total
        << " points failed; failed rows are marked in the CSV\n";
    return exit_numerical;
  }
  return exit_ok;
}

}  // namespace

bool write_sweep_csv(std::ostream& out,
                     const std::vector<ForcePoint>& points) {
  out << "L_nm,energy_Jm2,pressure_Pa,rel_err\n";
  bool all_ok = true;
  for (const ForcePoint& p : points) {
    if (p.ok) {
      out << fmt(p.gap_nm) << ',' << fmt(p.energy_j_m2) << ','
          << fmt(p.pressure_pa) << ',' << fmt(p.rel_error) << '\n';
    } else {
      out << "# failed L_nm=" << fmt(p.gap_nm) << ": " << p.message << '\n';
      all_ok = false;
    }
  }
  return all_ok;
}

bool write_ratio_csv(std::ostream& out,
                     const std::vector<RatioPoint>& points) {
  out << "L_nm,energy_Jm2,pressure_Pa,ratio,rel_err\n";
  bool all_ok = true;
  for (const RatioPoint& p : points) {
    if (p.ok) {
      out << fmt(p.gap_nm) << ',' << fmt(p.energy_j_m2) << ','
          << fmt(p.pressure_pa) << ',' << fmt(p.ratio) << ','
          << fmt(p.rel_error) << '\n';
    } else {
      out << "# failed L_nm=" << fmt(p.gap_nm) << ": " << p.message << '\n';
      all_ok = false;
    }
  }
  return all_ok;
}

int run_sweep(const RunConfig& cfg, const std::filesystem::path& config_dir,
              const std::filesystem::path& out_dir, bool ideal_mirrors,
              bool verbose, std::ostream& log, std::ostream& err) {
  if (cfg.mode != RunConfig::Mode::sweep)
    throw ValidationError(
        "config key 'mode' is 'ratio' but the sweep command was invoked");

  const std::vector<double> gaps = build_separation_grid(cfg.separation);
  const CavitySides cavity =
      ideal_mirrors ? ideal_mirror_cavity() : build_cavity(cfg, config_dir);

  const std::vector<ForcePoint> points =
      sweep_curve(cavity, gaps, cfg.quadrature);

  std::size_t failed = 0;
  for (const ForcePoint& p : points) {
    if (!p.ok) ++failed;
    if (verbose) {
      if (p.ok)
        log << "L = " << p.gap_nm << " nm: E = " << p.energy_j_m2
            << " J/m^2, P = " << p.pressure_pa
            << " Pa, rel_err = " << p.rel_error << "\n";
      else
        log << "L = " << p.gap_nm << " nm: failed (" << p.message << ")\n";
    }
  }

  std::filesystem::create_directories(out_dir);
  const auto csv_path = out_dir / cfg.output.csv;
  {
    auto out = open_csv(csv_path);
    write_sweep_csv(out, points);
    if (!out)
      throw ValidationError("write to '" + csv_path.string() + "' failed");
  }
  emit_plot(cfg, out_dir, /*ratio_mode=*/false);

  if (ideal_mirrors) {
    double worst = 0.0;
    for (const ForcePoint& p : points)
      if (p.ok)
        worst = std::max(
            worst,
            std::abs(p.pressure_pa / ideal_mirror_pressure_pa(p.gap_nm) - 1.0));
    log << "ideal-mirror test: max |P/P_ref - 1| = " << worst << "\n";
    if (!(worst <= 1e-6)) {
      err << "ideal-mirror test missed the 1e-6 closed-form tolerance\n";
      return exit_numerical;
    }
  }

  return finish(csv_path, points.size(), failed, log, err);
}

int run_ratio(const RunConfig& cfg, const RunConfig& baseline,
              const std::filesystem::path& config_dir,
              const std::filesystem::path& baseline_dir,
              const std::filesystem::path& out_dir, bool verbose,
              std::ostream& log, std::ostream& err) {
  if (cfg.mode != RunConfig::Mode::ratio)
    throw ValidationError(
        "config key 'mode' is 'sweep' but the ratio command was invoked");
  if (!(baseline.separation == cfg.separation))
    throw ValidationError(
        "baseline [separation] grid must match the main config");

  const std::vector<double> gaps = build_separation_grid(cfg.separation);
  const CavitySides cavity = build_cavity(cfg, config_dir);
  const CavitySides reference = build_cavity(baseline, baseline_dir);

  const std::vector<RatioPoint> points =
      force_ratio_curve(cavity, reference, gaps, cfg.quadrature);

  std::size_t failed = 0;
  for (const RatioPoint& p : points) {
    if (!p.ok) ++failed;
    if (verbose) {
      if (p.ok)
        log << "L = " << p.gap_nm << " nm: P = " << p.pressure_pa
            << " Pa, ratio = " << p.ratio << ", rel_err = " << p.rel_error
            << "\n";
      else
        log << "L = " << p.gap_nm << " nm: failed (" << p.message << ")\n";
    }
  }

  std::filesystem::create_directories(out_dir);
  const auto csv_path = out_dir / cfg.output.csv;
  {
    auto out = open_csv(csv_path);
    write_ratio_csv(out, points);
    if (!out)
      throw ValidationError("write to '" + csv_path.string() + "' failed");
  }
  emit_plot(cfg, out_dir, /*ratio_mode=*/true);

  return finish(csv_path, points.size(), failed, log, err);
}

namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return exit_numerical;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return exit_numerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  }
}

}  // namespace

int run_sweep_command(const std::filesystem::path& config_path,
                      const std::filesystem::path& out_dir, bool ideal_mirrors,
                      bool verbose, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    return run_sweep(cfg, config_path.parent_path(), out_dir, ideal_mirrors,
                     verbose, log, err);
  });
}

int run_ratio_command(const std::filesystem::path& config_path,
                      const std::filesystem::path& baseline_path,
                      const std::filesystem::path& out_dir, bool verbose,
                      std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    const RunConfig baseline = load_config(baseline_path);
    return run_ratio(cfg, baseline, config_path.parent_path(),
                     baseline_path.parent_path(), out_dir, verbose, log, err);
  });
}

}  // namespace casfilm
