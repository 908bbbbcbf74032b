#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "singseries/compensated.hpp"

namespace singseries::mean {

#ifdef SINGSERIES_WIDE_RANGE
inline constexpr std::uint64_t kScanXMaxCap = 1'000'000'000;
#else
inline constexpr std::uint64_t kScanXMaxCap = 100'000'000;
#endif

struct SingularTerm {
    std::uint64_t k;
    double value;
};

struct AccumulatorSnapshot {
    std::uint64_t upto = 0;
    DoubleDouble t0;  // sum_{k <= upto} S(k)
    DoubleDouble t1;  // sum_{k <= upto} k S(k)
};

// Running sums of the singular series and its first moment, kept in
// double-double. Near x = 1e8, t1 ~ 1e15 while E(x) ~ 10, so plain binary64
// would leave E(x) at the rounding level of t1.
//
// Accumulator error: each absorbed value is exact to ~16 ulp (g(k) is a
// product of at most 15 ratios, times 2 C2), and the double-double sums add
// O(1e-32) relative, so |error in x t0 - t1| <= 4e-15 x^2 in the worst
// coherent case and far less in practice. At the default x_max = 1e7 that
// bound is 0.4 against |E| ~ 10.
class PartialSumStream {
public:
    PartialSumStream() = default;

    // Record a snapshot each time upto reaches one of these k (any order,
    // duplicates ignored).
    explicit PartialSumStream(std::vector<std::uint64_t> checkpoints);

    // values[i].k must equal upto() + 1 + i; throws SequencingError otherwise.
    void absorb(std::span<const SingularTerm> values);

    // values[i] is S(first_k + i); first_k must equal upto() + 1.
    void absorb_run(std::uint64_t first_k, std::span<const double> values);

    std::uint64_t upto() const { return current_.upto; }
    DoubleDouble t0() const { return current_.t0; }
    DoubleDouble t1() const { return current_.t1; }

    // Accumulators as of upto == k. Throws PreconditionError if k > upto()
    // or no snapshot was recorded for k.
    AccumulatorSnapshot at(std::uint64_t k) const;

private:
    void push(std::uint64_t k, double value);

    AccumulatorSnapshot current_;
    std::vector<std::uint64_t> checkpoints_;
    std::size_t next_checkpoint_ = 0;
    std::vector<AccumulatorSnapshot> snapshots_;
};

struct ErrorSample {
    double x;
    double s_of_x;
    double e_of_x;
    double normalized;  // e_of_x / x^{1/4}
};

// S(x) = x t0(floor x) - t1(floor x).
double cesaro_mean(const PartialSumStream& stream, double x);
DoubleDouble cesaro_mean_dd(const PartialSumStream& stream, double x);

// x^2/2 - x log(x)/2 + (1 - gamma - log 2 pi) x / 2, x >= 1.
double main_term(double x);
DoubleDouble main_term_dd(double x);

ErrorSample error_term(const PartialSumStream& stream, double x);

// t0(floor x) - (x - log(x)/2).
double first_moment_check(const PartialSumStream& stream, double x);

// x_min e^{j step_log} for every j with the value <= x_max (a relative slack
// of 1e-12 keeps an endpoint that lands on x_max). step_log in (0, 0.05].
std::vector<double> geometric_grid(double x_min, double x_max, double step_log);

// Distinct floor(x) over a grid, ascending; feed to the stream constructor.
std::vector<std::uint64_t> grid_checkpoints(std::span<const double> grid);

std::vector<ErrorSample> sample_geometric(const PartialSumStream& stream, double x_min,
                                          double x_max, double step_log);

// Push S(k) for k = upto()+1 .. x_max into the stream, computing g(k) by
// segmented sieve. Segments are computed in parallel (threads > 1) and
// absorbed in ascending order, so the result does not depend on either
// segment_size or threads.
void drive_stream(PartialSumStream& stream, std::uint64_t x_max, std::uint64_t segment_size,
                  double c2, unsigned threads = 0);

struct ScanConfig {
    double x_min = 100.0;
    double x_max = 1e7;
    double step_log = 0.02;
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    unsigned threads = 0;  // 0: hardware concurrency
};

// Validates the config, then grid + stream + samples in one pass.
std::vector<ErrorSample> error_scan(const ScanConfig& cfg, double c2);

struct SignChange {
    double x_lo;      // last sample before the change
    double x_hi;      // first sample after it
    double crossing;  // zero estimated by linear interpolation in log x
    int direction;    // +1 for - to +, -1 for + to -
};

struct OscillationReport {
    std::vector<SignChange> sign_changes;
    double running_max;
    double running_min;
    // crossing[i+2] / crossing[i]: one full period between changes of the
    // same direction.
    std::vector<double> ratios;
};

// Throws DomainError for fewer than two samples and PreconditionError when
// x is not strictly increasing.
OscillationReport oscillation_report(std::span<const ErrorSample> samples);
OscillationReport oscillation_report(std::span<const double> xs, std::span<const double> values);

double median(std::vector<double> values);

}  // namespace singseries::mean
