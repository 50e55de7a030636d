#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ybp/problem.hpp"

namespace ybp {

enum class Verdict { pass, fail, skipped, refused };
const char* verdict_name(Verdict v);

struct CheckResult {
  std::string check;
  Verdict verdict = Verdict::pass;
  std::string detail;
  std::string witness;  // exact counterexample; never empty on fail
  long long elapsed_ms = 0;
  std::optional<std::string> expected;
  bool data_skip = false;  // skipped for missing input data (not a failed dep)
};

struct Report {
  std::string problem;
  std::vector<CheckResult> results;
};

struct RunOptions {
  std::vector<std::string> only;  // empty: run everything, skipping absent data
  bool verbose = false;           // adds elapsed_ms to the emitted report
};

/// Runs the checks in pipeline order. With `only`, a selected check whose
/// input data is absent is refused instead of skipped.
Report run_pipeline(const ProblemSpec& spec, const RunOptions& opt);

std::string emit_report_json(const Report& r, bool verbose);
std::string emit_report_text(const Report& r);

/// 0 when every emitted verdict is acceptable (matches its declared
/// expectation, or pass/skipped when none is declared); 1 otherwise.
int report_exit_code(const Report& r);

}  // namespace ybp
