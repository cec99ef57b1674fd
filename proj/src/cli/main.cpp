//! Command-line entry point.
//!
//! Exit codes: 0 success, 1 validation-gate failure, 2 configuration or
//! usage error, 3 numerical domain/regime/convergence error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "runners.hpp"
#include "udw/errors.hpp"

namespace {

/// UDW_EPS_SCALE multiplies the pole-regulator scale of every quadrature in
/// the run; used to probe regulator sensitivity without touching configs.
double envEpsScale() {
  const char* env = std::getenv("UDW_EPS_SCALE");
  if (!env || !*env) return 1.0;
  char* end = nullptr;
  const double value = std::strtod(env, &end);
  if (*end != '\0' || !(value > 0.0))
    throw udw::ConfigError("UDW_EPS_SCALE must be a positive number");
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"macroscopic detector response and coherence toolkit"};
  std::string configPath;
  std::string mode;
  std::string output;
  std::string format = "csv";
  int jobs = 1;
  app.add_option("-c,--config", configPath, "JSON run configuration");
  app.add_option("-m,--mode", mode,
                 "spectrum | trajectory-scan | g2 | compare-thermal | validate "
                 "(overrides the config's \"mode\")");
  app.add_option("-o,--output", output, "write results here instead of stdout");
  app.add_option("-f,--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-j,--jobs", jobs, "worker threads for grid scans")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mode == "validate" && configPath.empty()) return udw::cli::runValidateMode(std::cout);
    if (configPath.empty())
      throw udw::ConfigError("no config file given (pass --config, or --mode validate)");

    udw::cli::RunConfig cfg = udw::cli::loadConfig(configPath, mode);
    if (cfg.mode == udw::cli::Mode::Validate) return udw::cli::runValidateMode(std::cout);
    cfg.quadrature.epsScale *= envEpsScale();

    const udw::cli::RunOutput out = udw::cli::runMode(cfg, jobs);
    const std::string& destination = output.empty() ? cfg.output : output;
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!destination.empty()) {
      file.open(destination);
      if (!file)
        throw udw::ConfigError("cannot open output file \"" + destination + "\"");
      os = &file;
    }
    if (format == "json")
      udw::cli::writeJson(out, cfg, *os);
    else
      udw::cli::writeCsv(out, *os);
    return 0;
  } catch (const udw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const udw::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return 3;
  } catch (const udw::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const udw::RegimeError& e) {
    std::cerr << "regime error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
