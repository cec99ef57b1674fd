//! Mode drivers: evaluate the configured scan and serialize the results as
//! CSV or JSON. Scans are grid-parallel; each grid point is computed
//! independently and stored by index, so the output is byte-identical for
//! any worker count.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace udw::cli {

/// One output row: the numeric columns plus an optional trailing tag
/// (e.g. the closed-form regime that produced a g2 value).
struct Row {
  std::vector<double> numbers;
  std::string tag;
};

struct RunOutput {
  std::vector<std::string> columns;  ///< names of the numeric columns
  std::string tagColumn;             ///< name of the tag column; empty if none
  std::vector<Row> rows;
};

/// Dispatch on cfg.mode (Validate is handled by runValidateMode instead).
RunOutput runMode(const RunConfig& cfg, int jobs);

/// Acceptance gate; returns the process exit code (0 iff all criteria pass).
int runValidateMode(std::ostream& os);

void writeCsv(const RunOutput& out, std::ostream& os);
void writeJson(const RunOutput& out, const RunConfig& cfg, std::ostream& os);

}  // namespace udw::cli
