#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "casfilm/workbench.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Casimir force workbench for layered dielectric films"};
  app.require_subcommand(1);

  std::string config;
  std::string baseline;
  std::string out_dir;
  bool verbose = false;
  bool ideal = false;

  CLI::App* sweep =
      app.add_subcommand("sweep", "energy and pressure over a gap grid");
  sweep->add_option("--config", config, "run config file")->required();
  sweep->add_option("--out", out_dir, "output directory")->required();
  sweep->add_flag("--ideal-mirror-test", ideal,
                  "replace the films with ideal mirrors and check the "
                  "pressure column against the closed form");
  sweep->add_flag("--verbose", verbose, "log every grid point");

  CLI::App* ratio = app.add_subcommand(
      "ratio", "pressure normalized by a baseline scenario, point by point");
  ratio->add_option("--config", config, "run config file")->required();
  ratio->add_option("--baseline", baseline, "baseline config file")
      ->required();
  ratio->add_option("--out", out_dir, "output directory")->required();
  ratio->add_flag("--verbose", verbose, "log every grid point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return casfilm::exit_validation;
  }

  if (sweep->parsed())
    return casfilm::run_sweep_command(config, out_dir, ideal, verbose,
                                      std::cout, std::cerr);
  return casfilm::run_ratio_command(config, baseline, out_dir, verbose,
                                    std::cout, std::cerr);
}
