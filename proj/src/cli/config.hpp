//! Run configuration for the command-line tool: a JSON file describing the
//! worldline, the detector, the scan grid, and the quadrature budget, parsed
//! into library types up front so every schema problem surfaces as a
//! ConfigError before any numerics start.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "udw/quadrature.hpp"
#include "udw/response.hpp"
#include "udw/worldlines.hpp"

namespace udw::cli {

enum class Mode { Spectrum, TrajectoryScan, G2, CompareThermal, Validate };

/// Parses the mode name used by --mode and the "mode" config key.
Mode parseMode(const std::string& name);

/// Uniform grid over the scan variable (single point when points == 1).
struct ScanGrid {
  double min = 0.0;
  double max = 0.0;
  int points = 1;

  std::vector<double> values() const;
};

struct RunConfig {
  Mode mode = Mode::Spectrum;
  Worldline worldline = StaticWorldline{};
  DetectorModel detector;
  QuadratureSpec quadrature;
  ScanGrid scan;
  double tau = 0.0;     ///< detection time for energy scans
  double energy = 1.0;  ///< detector gap for proper-time scans
  double pairA = 1.0;   ///< pair acceleration (g2 mode)
  double pairR = 0.0;   ///< pair separation as a proper light delay (g2 mode)
  double beta = 0.0;    ///< bath inverse temperature; 0 means 2 pi / a
  std::string output;   ///< destination path; empty writes to stdout
  nlohmann::json echo;  ///< the parsed document, echoed into JSON output
};

/// Loads and validates the configuration. `modeOverride` (from --mode) wins
/// over the "mode" key; one of the two must name a mode.
RunConfig loadConfig(const std::string& path, const std::string& modeOverride);

}  // namespace udw::cli
