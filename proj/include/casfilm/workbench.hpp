#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "casfilm/lifshitz.hpp"
#include "casfilm/run_config.hpp"

namespace casfilm {

// process exit codes: validation problems are the user's to fix,
// numerical failures mean the requested accuracy was not reached
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_numerical = 2;

// CSV emission. Data rows are %.12e and therefore byte-stable across runs;
// failed points become '# failed ...' comment lines so partial results
// stay loadable. Returns false when any point failed.
bool write_sweep_csv(std::ostream& out, const std::vector<ForcePoint>& points);
bool write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& points);

// Run one configured job end to end: materialize films, evaluate the
// curve, write CSV (and plot script if requested) into out_dir. config_dir
// anchors relative data files. Throws ValidationError for config problems;
// per-point numerical failures are reported in the CSV and exit code.
int run_sweep(const RunConfig& cfg, const std::filesystem::path& config_dir,
              const std::filesystem::path& out_dir, bool ideal_mirrors,
              bool verbose, std::ostream& log, std::ostream& err);

int run_ratio(const RunConfig& cfg, const RunConfig& baseline,
              const std::filesystem::path& config_dir,
              const std::filesystem::path& baseline_dir,
              const std::filesystem::path& out_dir, bool verbose,
              std::ostream& log, std::ostream& err);

// Command entry points used by the CLI: load configs from disk, run, and
// map exceptions onto exit codes instead of letting them escape.
int run_sweep_command(const std::filesystem::path& config_path,
                      const std::filesystem::path& out_dir, bool ideal_mirrors,
                      bool verbose, std::ostream& log, std::ostream& err);

int run_ratio_command(const std::filesystem::path& config_path,
                      const std::filesystem::path& baseline_path,
                      const std::filesystem::path& out_dir, bool verbose,
                      std::ostream& log, std::ostream& err);

}  // namespace casfilm
