#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "zetapprox/cli.hpp"
#include "zetapprox/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Truncated Dirichlet-series approximations of L-functions: evaluation, a-value "
               "counting and critical-line scans"};
  std::string config_path;
  std::optional<int> workers;
  std::optional<std::string> output_dir;
  bool print_config = false;
  app.add_option("config", config_path, "INI run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("-w,--workers", workers, "Worker threads (overrides ZETAPPROX_WORKERS)");
  app.add_option("-o,--output-dir", output_dir, "Output directory (overrides [output] directory)");
  app.add_flag("--print-config", print_config,
               "Print the resolved configuration and its header, then exit");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(config_path);
  std::stringstream buf;
  buf << in.rdbuf();

  zetapprox::RunConfig config;
  try {
    config = zetapprox::parse_config(buf.str());
    if (workers) {
      config.workers = zetapprox::resolve_workers(workers);
    } else if (const char* env = std::getenv("ZETAPPROX_WORKERS"); env && *env) {
      config.workers = zetapprox::resolve_workers();
    }
    if (output_dir) config.output.directory = *output_dir;
  } catch (const zetapprox::Error& e) {
    std::cerr << e.what() << "\n";
    return zetapprox::kExitConfig;
  }

  if (print_config) {
    std::cout << zetapprox::serialize(config);
    std::cout << "\n; resolved header\n";
    for (const auto& [k, v] : zetapprox::config_header(config)) std::cout << "; " << k << " = " << v << "\n";
    return zetapprox::kExitOk;
  }

  const auto outcome = zetapprox::run(config);
  for (const auto& [k, v] : outcome.summary) std::cout << k << ": " << v << "\n";
  if (outcome.exitCode == zetapprox::kExitOk) {
    std::cout << "wrote " << outcome.csvPath << " and " << outcome.manifestPath << "\n";
  } else {
    std::cerr << "error (exit " << outcome.exitCode << "): " << outcome.message << "\n";
  }
  return outcome.exitCode;
}
