#include <string>

#include <CLI11.hpp>

#include "cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cqedsim - driven Jaynes-Cummings simulation and analysis"};

  std::string config_path;
  std::string output;
  std::string format;
  int threads = 1;

  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", output, "output path (overrides config; default stdout)");
  app.add_option("--format", format, "csv or json (overrides config)");
  app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  return cqed::cli::run_main(config_path, output, format, threads);
}
