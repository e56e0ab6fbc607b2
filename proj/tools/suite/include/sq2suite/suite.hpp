#pragma once

// The reproduction suite: every numerical claim the library is built around,
// packaged as named pass/fail checks, plus the chart files that go with them.
// Shared between the `sq2 reproduce` subcommand and the acceptance test
// binary so both run the identical checks.

#include <string>
#include <vector>

namespace sq2suite {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;   // one line: what was measured vs. expected
    double seconds = 0.0;
};

struct SuiteOptions {
    int workers = 1;
    std::string only;  // run just the check with this name ("" = all)
};

// Registered check names, in execution order.
std::vector<std::string> check_names();

// Runs the checks (all, or the one named in options.only). A check that
// throws is reported as a failure carrying the exception text.
std::vector<CheckResult> run_suite(const SuiteOptions& options);

// Writes the chart artifacts (TSV + SVG pairs) into dir, creating it if
// needed; returns the paths written. Deterministic byte-for-byte.
std::vector<std::string> emit_figures(const std::string& dir, int workers);

// One line per result ("PASS name (1.23s): detail"), plus a summary line.
std::string format_results(const std::vector<CheckResult>& results);

// True when every result passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace sq2suite
