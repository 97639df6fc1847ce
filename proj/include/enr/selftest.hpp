// Property suites over every module, shared by the CLI selftest subcommand and
// the test binaries.  Deterministic seeds; quick runs ~10^3 samples per
// randomized suite, full runs ~10^4 plus the exhaustive small-height sweeps.

#pragma once

#include <string>
#include <vector>

namespace enr {

enum class SelftestLevel { quick, full };

struct SuiteResult {
    std::string name;
    long long checks = 0;
    long long failures = 0;
    double ms = 0;
    std::vector<std::string> messages;
};

std::vector<SuiteResult> run_selftest(SelftestLevel level);

} // namespace enr
