//! Acceptance gate: the ten library-level validation criteria, each with its
//! tolerance pinned in code. Every criterion prints one line
//!   [PASS|FAIL] criterion N: <name>  measured=... expected=... tol=... (t=... ms)
//! and the suite exits nonzero if any criterion fails.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace udw {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string note;   ///< extra diagnostics appended to the line
  double wallMs = 0.0;
};

/// Run all criteria, streaming one result line per criterion to `out`.
std::vector<CriterionResult> runAcceptanceSuite(std::ostream& out);

/// Print the summary line; returns the process exit code (0 iff all passed).
int summarizeAcceptance(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace udw
