#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace casfilm {

struct PlotCurve {
  std::string csv_path;  // as it should appear in the script
  std::string label;
};

// gnuplot script plotting force curves against the gap on a log axis.
// ratio_mode picks the ratio column of ratio CSVs; otherwise |pressure|
// from sweep CSVs is drawn on a log y axis. Needs at least one curve.
std::string render_plot_script(const std::vector<PlotCurve>& curves,
                               bool ratio_mode, const std::string& image_name);

// Render and write to script_path after checking that every referenced
// CSV actually exists next to it.
void write_plot_script(const std::filesystem::path& script_path,
                       const std::vector<PlotCurve>& curves, bool ratio_mode);

}  // namespace casfilm
