#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace singseries::acceptance {

struct CheckResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;  // measured values against their thresholds
    double seconds;
};

struct Options {
    // Fault injection for testing the harness itself.
    bool flip_c2_sign = false;
    double scan_step_log = 0.02;
    std::uint64_t prime_cutoff = 100'000;
};

std::vector<CheckResult> run_all(const Options& options = {});

// "[PASS] 1 C2 reproduction: ... (0.01 s)"
std::string format_line(const CheckResult& result);

}  // namespace singseries::acceptance
