//! End-to-end checks of the command-line tool: output schema, full-precision
//! numeric round-trip, worker-count determinism, and the exit-code contract
//! (0 ok, 1 failed validation gate, 2 config/usage error, 3 numeric error).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "udw/response.hpp"

namespace {

struct RunResult {
  int exitCode = -1;
  std::string out;
};

/// Run the tool with `args`, capturing stdout (stderr is dropped).
RunResult run(const std::string& args) {
  const std::string cmd = std::string(UDW_CLI_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  RunResult result;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

/// Same, with an environment assignment prefixed (the shell handles it).
RunResult runWithEnv(const std::string& env, const std::string& args) {
  const std::string cmd =
      env + " " + std::string(UDW_CLI_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  RunResult result;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

double toDouble(const std::string& token) { return std::strtod(token.c_str(), nullptr); }

const char* kSpectrumConfig = R"({
  "mode": "spectrum",
  "trajectory": {"type": "uniform", "a": 1.0},
  "detector": {"sigma": 50.0, "alpha": {"kind": "unit", "support": [0.25, 4.0]}},
  "scan": {"min": 0.5, "max": 2.5, "points": 5},
  "tau": 0.0
})";

}  // namespace

TEST_CASE("spectrum scans emit full-precision CSV") {
  writeFile("cli_spectrum.json", kSpectrumConfig);
  const RunResult r = run("--config cli_spectrum.json");
  REQUIRE(r.exitCode == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "energy,response,error,panels");

  const auto atUnitGap = fields(rows[2]);
  REQUIRE(atUnitGap.size() == 4);
  CHECK(toDouble(atUnitGap[0]) == 1.0);
  // The corrected closed form drops terms of order (sigma a)^-4 ~ 1e-6.
  const udw::DetectorModel det = udw::makeDetector(
      50.0, udw::CallableAlpha{[](double) { return 1.0; }, 0.25, 4.0});
  CHECK(toDouble(atUnitGap[1]) ==
        doctest::Approx(udw::planckWithCorrection(1.0, 1.0, det)).epsilon(1e-5));

  // Values must round-trip: re-printing the parsed number at 17 significant
  // digits reproduces the emitted token exactly.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", toDouble(atUnitGap[1]));
  CHECK(atUnitGap[1] == buf);
}

TEST_CASE("json output echoes the config next to the results") {
  writeFile("cli_spectrum.json", kSpectrumConfig);
  const RunResult r = run("--config cli_spectrum.json --format json");
  REQUIRE(r.exitCode == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["config"]["detector"]["sigma"].get<double>() == 50.0);
  CHECK(doc["config"]["trajectory"]["type"].get<std::string>() == "uniform");
  REQUIRE(doc["results"].size() == 5);
  CHECK(doc["results"][2]["energy"].get<double>() == 1.5);
  CHECK(doc["results"][2]["response"].get<double>() > 0.0);
}

TEST_CASE("the worker count never changes a byte of output") {
  writeFile("cli_spectrum.json", kSpectrumConfig);
  const RunResult serial = run("--config cli_spectrum.json --jobs 1");
  const RunResult parallel = run("--config cli_spectrum.json --jobs 4");
  REQUIRE(serial.exitCode == 0);
  REQUIRE(parallel.exitCode == 0);
  CHECK(serial.out == parallel.out);
  CHECK(!serial.out.empty());
}

TEST_CASE("--output writes the same bytes to a file") {
  writeFile("cli_spectrum.json", kSpectrumConfig);
  const RunResult direct = run("--config cli_spectrum.json");
  const RunResult toFile = run("--config cli_spectrum.json --output cli_spectrum_out.csv");
  REQUIRE(toFile.exitCode == 0);
  CHECK(toFile.out.empty());
  std::ifstream in("cli_spectrum_out.csv");
  std::stringstream contents;
  contents << in.rdbuf();
  CHECK(contents.str() == direct.out);
}

TEST_CASE("g2 scans pin the revival points onto the grid") {
  writeFile("cli_g2far.json", R"({
    "mode": "g2",
    "trajectory": {"type": "uniform", "a": 1.0},
    "detector": {"sigma": 1.0, "alpha": {"kind": "unit", "support": [0.5, 1.5]}},
    "scan": {"min": -12.0, "max": 12.0, "points": 5},
    "pair": {"a": 1.0, "r": 8.0}
  })");
  const RunResult r = run("--config cli_g2far.json");
  REQUIRE(r.exitCode == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 8);  // 5 grid points + the two inserted +-r markers
  CHECK(rows[0] == "dtau,g2,regime");
  double g2AtZero = 0.0, g2AtRevival = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cols = fields(rows[i]);
    REQUIRE(cols.size() == 3);
    CHECK(cols[2] == "far");
    if (toDouble(cols[0]) == 0.0) g2AtZero = toDouble(cols[1]);
    if (toDouble(cols[0]) == 8.0) g2AtRevival = toDouble(cols[1]);
  }
  // The correlation revives (dips) when the delay matches the light delay.
  CHECK(g2AtRevival < g2AtZero);
  CHECK(g2AtZero == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(g2AtRevival > 0.9);
}

TEST_CASE("compare-thermal reproduces the bath at beta = 2 pi / a") {
  writeFile("cli_thermal.json", R"({
    "mode": "compare-thermal",
    "trajectory": {"type": "uniform", "a": 1.0},
    "detector": {"sigma": 50.0, "alpha": {"kind": "unit", "support": [0.25, 4.0]}},
    "scan": {"min": 0.5, "max": 1.5, "points": 3}
  })");
  const RunResult r = run("--config cli_thermal.json");
  REQUIRE(r.exitCode == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "energy,accelerated,thermal,ratio");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cols = fields(rows[i]);
    REQUIRE(cols.size() == 4);
    CHECK(toDouble(cols[3]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(toDouble(cols[1]) == doctest::Approx(toDouble(cols[2])).epsilon(1e-10));
  }
}

TEST_CASE("trajectory scans cross from inert to the Planck plateau") {
  writeFile("cli_switch.json", R"({
    "mode": "trajectory-scan",
    "trajectory": {"type": "variable",
                   "profile": {"kind": "tanh-step", "a_initial": 0.0, "a_final": 1.0,
                               "tau_mid": 0.0, "width": 25.0},
                   "tau_min": -537.5, "tau_max": 650.0},
    "detector": {"sigma": 25.0, "alpha": {"kind": "unit", "support": [0.5, 1.5]}},
    "quadrature": {"abs_tol": 1e-12},
    "scan": {"min": -175.0, "max": 175.0, "points": 3},
    "energy": 1.0
  })");
  const RunResult r = run("--config cli_switch.json");
  REQUIRE(r.exitCode == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  const double before = toDouble(fields(rows[1])[1]);
  const double after = toDouble(fields(rows[3])[1]);
  const udw::DetectorModel det = udw::makeDetector(
      25.0, udw::CallableAlpha{[](double) { return 1.0; }, 0.5, 1.5});
  CHECK(std::abs(before) <= 1e-10);
  CHECK(after == doctest::Approx(udw::planckResponse(1.0, 1.0, det)).epsilon(0.01));
}

TEST_CASE("schema violations and usage errors exit with code 2") {
  writeFile("cli_bad.json", "{\"mode\": \"spectrum\"");
  CHECK(run("--config cli_bad.json").exitCode == 2);

  writeFile("cli_noscan.json", R"({
    "mode": "spectrum",
    "trajectory": {"type": "uniform", "a": 1.0},
    "detector": {"sigma": 50.0, "alpha": {"kind": "unit", "support": [0.25, 4.0]}}
  })");
  CHECK(run("--config cli_noscan.json").exitCode == 2);

  writeFile("cli_spectrum.json", kSpectrumConfig);
  CHECK(run("--config cli_spectrum.json --mode banana").exitCode == 2);
  CHECK(run("--config cli_spectrum.json --format yaml").exitCode == 2);
  CHECK(run("--mode spectrum").exitCode == 2);  // no config
  CHECK(runWithEnv("UDW_EPS_SCALE=banana", "--config cli_spectrum.json").exitCode == 2);
}

TEST_CASE("numeric domain and regime problems exit with code 3") {
  writeFile("cli_midpair.json", R"({
    "mode": "g2",
    "trajectory": {"type": "uniform", "a": 1.0},
    "detector": {"sigma": 1.0, "alpha": {"kind": "unit", "support": [0.5, 1.5]}},
    "scan": {"min": -1.0, "max": 1.0, "points": 3},
    "pair": {"a": 1.0, "r": 2.0}
  })");
  CHECK(run("--config cli_midpair.json").exitCode == 3);

  writeFile("cli_badsigma.json", R"({
    "mode": "spectrum",
    "trajectory": {"type": "uniform", "a": 1.0},
    "detector": {"sigma": -1.0, "alpha": {"kind": "unit", "support": [0.25, 4.0]}},
    "scan": {"min": 0.5, "max": 2.5, "points": 3}
  })");
  CHECK(run("--config cli_badsigma.json").exitCode == 3);
}

TEST_CASE("the regulator scale from the environment is accepted") {
  writeFile("cli_spectrum.json", kSpectrumConfig);
  const RunResult r = runWithEnv("UDW_EPS_SCALE=2.0", "--config cli_spectrum.json");
  REQUIRE(r.exitCode == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  // The response is regulator-insensitive; doubling the scale must not move
  // the value beyond the quadrature tolerance.
  const RunResult base = run("--config cli_spectrum.json");
  CHECK(toDouble(fields(rows[2])[1]) ==
        doctest::Approx(toDouble(fields(lines(base.out)[2])[1])).epsilon(1e-8));
}

TEST_CASE("validate mode prints one line per criterion and mirrors the gate") {
  const RunResult r = run("--mode validate");
  const auto rows = lines(r.out);
  int passLines = 0, failLines = 0;
  for (const auto& line : rows) {
    if (line.rfind("[PASS]", 0) == 0) ++passLines;
    if (line.rfind("[FAIL]", 0) == 0) ++failLines;
  }
  CHECK(passLines + failLines == 10);
  REQUIRE(!rows.empty());
  CHECK(rows.back().find("criteria passed") != std::string::npos);
  CHECK(r.exitCode == (failLines > 0 ? 1 : 0));
}
