#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "singseries/mean.hpp"

namespace singseries::cli {

enum class Format { csv, json };

struct RunConfig {
    double x_max = 1e7;
    double step_log = 0.02;
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    std::uint64_t prime_cutoff = 100'000;
    std::string output_path;  // empty: stdout
    Format format = Format::json;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws UsageError on an out-of-range field.
void validate(const RunConfig& cfg, double x_min);

int cmd_constants(const RunConfig& cfg, std::ostream& out);
int cmd_scan(const RunConfig& cfg, std::ostream& out);
int cmd_zeros(const RunConfig& cfg, std::ostream& out);
int cmd_compare(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out, bool flip_c2_sign = false);

// Row formatting shared with the tests: "%.11e" for each field.
std::string csv_row(const mean::ErrorSample& s);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace singseries::cli
