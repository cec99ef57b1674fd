//! Mode drivers for the command-line tool.

#include "runners.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "udw/coherence.hpp"
#include "udw/errors.hpp"
#include "udw/response.hpp"
#include "udw/validate.hpp"

namespace udw::cli {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

/// Run fn(i) for i in [0, count); worker threads pull indices from a shared
/// counter. The first exception wins and is rethrown on the calling thread.
template <typename Fn>
void parallelFor(int jobs, std::size_t count, const Fn& fn) {
  const int workers = static_cast<int>(std::min<std::size_t>(std::max(jobs, 1), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex errorLock;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> hold(errorLock);
        if (!error) error = std::current_exception();
        next.store(count);  // drain the remaining work
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

RunOutput runSpectrum(const RunConfig& cfg, int jobs) {
  RunOutput out;
  out.columns = {"energy", "response", "error", "panels"};
  const std::vector<double> grid = cfg.scan.values();
  out.rows.resize(grid.size());
  parallelFor(jobs, grid.size(), [&](std::size_t i) {
    const ResponseResult r =
        responseGeneralDetailed(cfg.worldline, grid[i], cfg.tau, cfg.detector, cfg.quadrature);
    out.rows[i].numbers = {grid[i], r.value, r.error, static_cast<double>(r.panels)};
  });
  return out;
}

RunOutput runTrajectoryScan(const RunConfig& cfg, int jobs) {
  RunOutput out;
  out.columns = {"tau", "response", "error", "panels"};
  const std::vector<double> grid = cfg.scan.values();
  out.rows.resize(grid.size());
  parallelFor(jobs, grid.size(), [&](std::size_t i) {
    const ResponseResult r =
        responseGeneralDetailed(cfg.worldline, cfg.energy, grid[i], cfg.detector, cfg.quadrature);
    out.rows[i].numbers = {grid[i], r.value, r.error, static_cast<double>(r.panels)};
  });
  return out;
}

RunOutput runG2(const RunConfig& cfg, int jobs) {
  const double a = cfg.pairA;
  const double r = cfg.pairR;
  const double sigma = cfg.detector.sigma;
  const bool near = r <= 0.01 / a;
  if (!near && r < 8.0 * sigma)
    throw RegimeError(
        "g2: pair separation falls between the coincident (r <= 0.01/a) and "
        "well-separated (r >= 8 sigma) closed-form regimes");
  const std::string regime = near ? "near" : "far";

  // In the separated regime the curve revives at dtau = +-r; pin those two
  // points onto the grid so the feature cannot fall between samples.
  std::vector<double> grid = cfg.scan.values();
  if (!near) {
    const double lo = grid.front();
    const double hi = grid.back();
    for (double marker : {-r, r})
      if (marker >= lo && marker <= hi) grid.push_back(marker);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }

  RunOutput out;
  out.columns = {"dtau", "g2"};
  out.tagColumn = "regime";
  out.rows.resize(grid.size());
  parallelFor(jobs, grid.size(), [&](std::size_t i) {
    const double dtau = grid[i];
    const auto coefficient = [&](double E) {
      return near ? gCoefficientNear(E, dtau, a, r, cfg.detector)
                  : gCoefficientFar(E, dtau, a, r, cfg.detector);
    };
    out.rows[i].numbers = {dtau, g2Assembled(coefficient, cfg.detector, a)};
    out.rows[i].tag = regime;
  });
  return out;
}

RunOutput runCompareThermal(const RunConfig& cfg, int jobs) {
  const double a = std::get<UniformAcceleration>(cfg.worldline).a;
  const double beta = cfg.beta > 0.0 ? cfg.beta : kTwoPi / a;

  RunOutput out;
  out.columns = {"energy", "accelerated", "thermal", "ratio"};
  const std::vector<double> grid = cfg.scan.values();
  out.rows.resize(grid.size());
  parallelFor(jobs, grid.size(), [&](std::size_t i) {
    const double accelerated =
        responseGeneral(cfg.worldline, grid[i], cfg.tau, cfg.detector, cfg.quadrature);
    const double thermal =
        thermalStaticResponse(grid[i], beta, cfg.detector, cfg.quadrature).value;
    out.rows[i].numbers = {grid[i], accelerated, thermal, accelerated / thermal};
  });
  return out;
}

std::string formatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunOutput runMode(const RunConfig& cfg, int jobs) {
  switch (cfg.mode) {
    case Mode::Spectrum: return runSpectrum(cfg, jobs);
    case Mode::TrajectoryScan: return runTrajectoryScan(cfg, jobs);
    case Mode::G2: return runG2(cfg, jobs);
    case Mode::CompareThermal: return runCompareThermal(cfg, jobs);
    case Mode::Validate: break;
  }
  throw ConfigError("validate mode does not produce a scan table");
}

int runValidateMode(std::ostream& os) {
  const std::vector<CriterionResult> results = runAcceptanceSuite(os);
  return summarizeAcceptance(results, os);
}

void writeCsv(const RunOutput& out, std::ostream& os) {
  for (std::size_t c = 0; c < out.columns.size(); ++c)
    os << (c ? "," : "") << out.columns[c];
  if (!out.tagColumn.empty()) os << ',' << out.tagColumn;
  os << '\n';
  for (const Row& row : out.rows) {
    for (std::size_t c = 0; c < row.numbers.size(); ++c)
      os << (c ? "," : "") << formatDouble(row.numbers[c]);
    if (!out.tagColumn.empty()) os << ',' << row.tag;
    os << '\n';
  }
}

void writeJson(const RunOutput& out, const RunConfig& cfg, std::ostream& os) {
  nlohmann::json doc;
  doc["config"] = cfg.echo;
  doc["results"] = nlohmann::json::array();
  for (const Row& row : out.rows) {
    nlohmann::json item;
    for (std::size_t c = 0; c < row.numbers.size(); ++c)
      item[out.columns[c]] = row.numbers[c];
    if (!out.tagColumn.empty()) item[out.tagColumn] = row.tag;
    doc["results"].push_back(std::move(item));
  }
  os << doc.dump(2) << '\n';
}

}  // namespace udw::cli
