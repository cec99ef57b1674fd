//! JSON configuration parsing. Every malformed-schema path throws
//! ConfigError with the offending key in the message.

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "udw/errors.hpp"

namespace udw::cli {

namespace {

using nlohmann::json;

/// Fetch a required field, naming the enclosing block on failure.
const json& require(const json& block, const std::string& key, const std::string& where) {
  const auto it = block.find(key);
  if (it == block.end())
    throw ConfigError("missing \"" + key + "\" in " + where);
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

double numberField(const json& block, const std::string& key, const std::string& where) {
  return number(require(block, key, where), where + "." + key);
}

double numberOr(const json& block, const std::string& key, double fallback,
                const std::string& where) {
  const auto it = block.find(key);
  return it == block.end() ? fallback : number(*it, where + "." + key);
}

std::vector<double> numberArray(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(number(item, where + " entry"));
  return out;
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + " must be a string");
  return j.get<std::string>();
}

Worldline parseTrajectory(const json& block) {
  if (!block.is_object()) throw ConfigError("\"trajectory\" must be an object");
  const std::string type = text(require(block, "type", "trajectory"), "trajectory.type");

  if (type == "uniform") {
    UniformAcceleration ua;
    ua.a = numberField(block, "a", "trajectory");
    if (block.contains("offset")) {
      const auto offset = numberArray(block["offset"], "trajectory.offset");
      if (offset.size() != 4)
        throw ConfigError("trajectory.offset must hold 4 components");
      std::copy(offset.begin(), offset.end(), ua.offset.begin());
    }
    return ua;
  }

  if (type == "static") {
    StaticWorldline sw;
    if (block.contains("position")) {
      const auto pos = numberArray(block["position"], "trajectory.position");
      if (pos.size() != 3)
        throw ConfigError("trajectory.position must hold 3 components");
      std::copy(pos.begin(), pos.end(), sw.position.begin());
    }
    return sw;
  }

  if (type == "variable") {
    const json& profile = require(block, "profile", "trajectory");
    if (!profile.is_object()) throw ConfigError("trajectory.profile must be an object");
    const std::string kind =
        text(require(profile, "kind", "trajectory.profile"), "trajectory.profile.kind");

    std::function<double(double)> aOfTau;
    if (kind == "constant") {
      const double a = numberField(profile, "a", "trajectory.profile");
      aOfTau = [a](double) { return a; };
    } else if (kind == "tanh-step") {
      const double a0 = numberField(profile, "a_initial", "trajectory.profile");
      const double a1 = numberField(profile, "a_final", "trajectory.profile");
      const double mid = numberField(profile, "tau_mid", "trajectory.profile");
      const double width = numberField(profile, "width", "trajectory.profile");
      if (!(width > 0.0)) throw ConfigError("trajectory.profile.width must be positive");
      aOfTau = [a0, a1, mid, width](double tau) {
        return a0 + (a1 - a0) * 0.5 * (1.0 + std::tanh((tau - mid) / width));
      };
    } else {
      throw ConfigError("unknown trajectory.profile.kind \"" + kind +
                        "\" (use constant | tanh-step)");
    }
    const double tauMin = numberField(block, "tau_min", "trajectory");
    const double tauMax = numberField(block, "tau_max", "trajectory");
    return VariableAcceleration(std::move(aOfTau), tauMin, tauMax);
  }

  throw ConfigError("unknown trajectory.type \"" + type +
                    "\" (use uniform | static | variable)");
}

DetectorModel parseDetector(const json& block) {
  if (!block.is_object()) throw ConfigError("\"detector\" must be an object");
  const double sigma = numberField(block, "sigma", "detector");
  const double epsScale = numberOr(block, "eps_scale", 1.0, "detector");

  const json& alpha = require(block, "alpha", "detector");
  if (!alpha.is_object()) throw ConfigError("detector.alpha must be an object");
  const std::string kind = text(require(alpha, "kind", "detector.alpha"), "detector.alpha.kind");

  if (kind == "two-level") {
    TwoLevel two;
    two.E0 = numberField(alpha, "e0", "detector.alpha");
    two.deltaE = numberField(alpha, "delta_e", "detector.alpha");
    return makeDetector(sigma, two, epsScale);
  }
  if (kind == "tabulated") {
    TabulatedAlpha tab;
    tab.energy = numberArray(require(alpha, "energy", "detector.alpha"),
                             "detector.alpha.energy");
    tab.value = numberArray(require(alpha, "value", "detector.alpha"),
                            "detector.alpha.value");
    return makeDetector(sigma, std::move(tab), epsScale);
  }
  if (kind == "unit") {
    const auto support = numberArray(require(alpha, "support", "detector.alpha"),
                                     "detector.alpha.support");
    if (support.size() != 2)
      throw ConfigError("detector.alpha.support must be [min, max]");
    return makeDetector(
        sigma, CallableAlpha{[](double) { return 1.0; }, support[0], support[1]}, epsScale);
  }
  throw ConfigError("unknown detector.alpha.kind \"" + kind +
                    "\" (use two-level | tabulated | unit)");
}

ScanGrid parseScan(const json& block) {
  if (!block.is_object()) throw ConfigError("\"scan\" must be an object");
  ScanGrid grid;
  grid.min = numberField(block, "min", "scan");
  grid.max = numberField(block, "max", "scan");
  const json& points = require(block, "points", "scan");
  if (!points.is_number_integer() || points.get<int>() < 1)
    throw ConfigError("scan.points must be a positive integer");
  grid.points = points.get<int>();
  if (grid.points > 1 && !(grid.max > grid.min))
    throw ConfigError("scan.max must exceed scan.min for a multi-point grid");
  return grid;
}

QuadratureSpec parseQuadrature(const json& block) {
  QuadratureSpec spec;
  if (block.is_null()) return spec;
  if (!block.is_object()) throw ConfigError("\"quadrature\" must be an object");
  spec.windowSigmas = numberOr(block, "window_sigmas", spec.windowSigmas, "quadrature");
  spec.relTol = numberOr(block, "rel_tol", spec.relTol, "quadrature");
  spec.absTol = numberOr(block, "abs_tol", spec.absTol, "quadrature");
  spec.epsScale = numberOr(block, "eps_scale", spec.epsScale, "quadrature");
  if (block.contains("panels")) {
    if (!block["panels"].is_number_integer())
      throw ConfigError("quadrature.panels must be an integer");
    spec.panels = block["panels"].get<int>();
  }
  if (block.contains("max_doublings")) {
    if (!block["max_doublings"].is_number_integer())
      throw ConfigError("quadrature.max_doublings must be an integer");
    spec.maxDoublings = block["max_doublings"].get<int>();
  }
  return spec;
}

}  // namespace

Mode parseMode(const std::string& name) {
  if (name == "spectrum") return Mode::Spectrum;
  if (name == "trajectory-scan") return Mode::TrajectoryScan;
  if (name == "g2") return Mode::G2;
  if (name == "compare-thermal") return Mode::CompareThermal;
  if (name == "validate") return Mode::Validate;
  throw ConfigError("unknown mode \"" + name +
                    "\" (use spectrum | trajectory-scan | g2 | compare-thermal | validate)");
}

std::vector<double> ScanGrid::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    out.push_back(min);
    return out;
  }
  for (int i = 0; i < points; ++i)
    out.push_back(min + (max - min) * static_cast<double>(i) / (points - 1));
  return out;
}

RunConfig loadConfig(const std::string& path, const std::string& modeOverride) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file \"" + path + "\"");

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

  RunConfig cfg;
  cfg.echo = doc;

  if (!modeOverride.empty())
    cfg.mode = parseMode(modeOverride);
  else if (doc.contains("mode"))
    cfg.mode = parseMode(text(doc["mode"], "mode"));
  else
    throw ConfigError("no mode given (set \"mode\" in the config or pass --mode)");
  if (cfg.mode == Mode::Validate) return cfg;  // the gate ignores the rest

  cfg.worldline = parseTrajectory(require(doc, "trajectory", "config"));
  cfg.detector = parseDetector(require(doc, "detector", "config"));
  cfg.quadrature = parseQuadrature(doc.contains("quadrature") ? doc["quadrature"] : json());
  cfg.scan = parseScan(require(doc, "scan", "config"));
  cfg.tau = numberOr(doc, "tau", 0.0, "config");
  cfg.energy = numberOr(doc, "energy", 1.0, "config");
  cfg.beta = numberOr(doc, "beta", 0.0, "config");
  if (doc.contains("output")) cfg.output = text(doc["output"], "output");

  if (cfg.mode == Mode::G2) {
    const json& pair = require(doc, "pair", "config");
    if (!pair.is_object()) throw ConfigError("\"pair\" must be an object");
    cfg.pairA = numberField(pair, "a", "pair");
    if (pair.contains("r"))
      cfg.pairR = number(pair["r"], "pair.r");
    else if (pair.contains("d"))
      cfg.pairR = lightDelay(cfg.pairA, number(pair["d"], "pair.d"));
    else
      throw ConfigError("pair needs either \"r\" (light delay) or \"d\" (proper distance)");
  }
  if (cfg.mode == Mode::CompareThermal &&
      !std::holds_alternative<UniformAcceleration>(cfg.worldline))
    throw ConfigError("compare-thermal requires trajectory.type == \"uniform\"");

  return cfg;
}

}  // namespace udw::cli
