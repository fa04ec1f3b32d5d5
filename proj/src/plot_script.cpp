#include "casfilm/plot_script.hpp"

#include <fstream>
#include <sstream>

#include "casfilm/errors.hpp"

namespace casfilm {

std::string render_plot_script(const std::vector<PlotCurve>& curves,
                               bool ratio_mode,
                               const std::string& image_name) {
  if (curves.empty())
    throw ValidationError("plot script needs at least one input CSV");

  std::ostringstream out;
  out << "set terminal pngcairo size 960,640\n";
  out << "set output '" << image_name << "'\n";
  out << "set datafile separator ','\n";
  out << "set logscale x\n";
  out << "set xlabel 'gap L (nm)'\n";
  if (ratio_mode) {
    out << "set ylabel 'pressure ratio'\n";
  } else {
    out << "set logscale y\n";
    out << "set ylabel '|pressure| (Pa)'\n";
  }
  out << "set key top right\n";
  out << "plot ";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i) out << ", \\\n     ";
    out << "'" << curves[i].csv_path << "' using "
        << (ratio_mode ? "1:4" : "1:(abs($3))") << " with linespoints title '"
        << curves[i].label << "'";
  }
  out << "\n";
  return out.str();
}

void write_plot_script(const std::filesystem::path& script_path,
                       const std::vector<PlotCurve>& curves, bool ratio_mode) {
  if (curves.empty())
    throw ValidationError("plot script needs at least one input CSV");
  const auto dir = script_path.parent_path();
  for (const PlotCurve& c : curves) {
    std::filesystem::path csv(c.csv_path);
    if (csv.is_relative()) csv = dir / csv;
    if (!std::filesystem::exists(csv))
      throw ValidationError("plot script input file '" + csv.string() +
                            "' is missing");
  }
  std::filesystem::path image = script_path.filename();
  image.replace_extension(".png");
  const std::string text =
      render_plot_script(curves, ratio_mode, image.string());
  std::ofstream out(script_path);
  if (!out)
    throw ValidationError("cannot write plot script '" + script_path.string() +
                          "'");
  out << text;
}

}  // namespace casfilm
