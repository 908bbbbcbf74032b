#include "singseries/mean.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>
#include <thread>

#include "singseries/arith.hpp"
#include "singseries/ceval.hpp"
#include "singseries/errors.hpp"

namespace singseries::mean {

PartialSumStream::PartialSumStream(std::vector<std::uint64_t> checkpoints)
    : checkpoints_(std::move(checkpoints)) {
    std::sort(checkpoints_.begin(), checkpoints_.end());
    checkpoints_.erase(std::unique(checkpoints_.begin(), checkpoints_.end()), checkpoints_.end());
    // upto == 0 is the initial state and needs no snapshot.
    while (next_checkpoint_ < checkpoints_.size() && checkpoints_[next_checkpoint_] == 0) {
        snapshots_.push_back(current_);
        ++next_checkpoint_;
    }
    snapshots_.reserve(checkpoints_.size());
}

void PartialSumStream::push(std::uint64_t k, double value) {
    current_.t0 += value;
    current_.t1 += two_prod(static_cast<double>(k), value);
    current_.upto = k;
    if (next_checkpoint_ < checkpoints_.size() && checkpoints_[next_checkpoint_] == k) {
        snapshots_.push_back(current_);
        ++next_checkpoint_;
    }
}

void PartialSumStream::absorb(std::span<const SingularTerm> values) {
    for (const auto& term : values) {
        if (term.k != current_.upto + 1) {
            throw SequencingError("PartialSumStream::absorb: expected k=" +
                                  std::to_string(current_.upto + 1) + ", got k=" +
                                  std::to_string(term.k));
        }
        push(term.k, term.value);
    }
}

void PartialSumStream::absorb_run(std::uint64_t first_k, std::span<const double> values) {
    if (values.empty()) return;
    if (first_k != current_.upto + 1) {
        throw SequencingError("PartialSumStream::absorb_run: expected k=" +
                              std::to_string(current_.upto + 1) + ", got k=" +
                              std::to_string(first_k));
    }
    std::uint64_t k = first_k;
    for (const double v : values) push(k++, v);
}

AccumulatorSnapshot PartialSumStream::at(std::uint64_t k) const {
    if (k > current_.upto) {
        throw PreconditionError("PartialSumStream: k=" + std::to_string(k) +
                                " beyond absorbed range (upto=" + std::to_string(current_.upto) + ")");
    }
    if (k == current_.upto) return current_;
    if (k == 0) return AccumulatorSnapshot{};
    const auto it = std::lower_bound(snapshots_.begin(), snapshots_.end(), k,
                                     [](const AccumulatorSnapshot& s, std::uint64_t v) { return s.upto < v; });
    if (it == snapshots_.end() || it->upto != k) {
        throw PreconditionError("PartialSumStream: no snapshot recorded at k=" + std::to_string(k));
    }
    return *it;
}

namespace {

std::uint64_t floor_index(double x) {
    if (!(x >= 0.0)) throw DomainError("cesaro_mean: x must be non-negative");
    return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

DoubleDouble cesaro_mean_dd(const PartialSumStream& stream, double x) {
    const auto snap = stream.at(floor_index(x));
    return snap.t0 * x - snap.t1;
}

double cesaro_mean(const PartialSumStream& stream, double x) {
    return cesaro_mean_dd(stream, x).value();
}

DoubleDouble main_term_dd(double x) {
    if (!(x >= 1.0)) throw DomainError("main_term: x must be >= 1");
    const double c = 0.5 * (1.0 - ceval::euler_gamma() - ceval::log_two_pi());
    DoubleDouble sum = two_prod(0.5 * x, x);
    sum = sum - two_prod(0.5 * x, std::log(x));
    sum = sum + two_prod(c, x);
    return sum;
}

double main_term(double x) { return main_term_dd(x).value(); }

ErrorSample error_term(const PartialSumStream& stream, double x) {
    const DoubleDouble s = cesaro_mean_dd(stream, x);
    const DoubleDouble e = s - main_term_dd(x);
    const double ev = e.value();
    return {x, s.value(), ev, ev / std::pow(x, 0.25)};
}

double first_moment_check(const PartialSumStream& stream, double x) {
    if (!(x >= 1.0)) throw DomainError("first_moment_check: x must be >= 1");
    const auto snap = stream.at(floor_index(x));
    return (snap.t0 - DoubleDouble(x) + 0.5 * std::log(x)).value();
}

std::vector<double> geometric_grid(double x_min, double x_max, double step_log) {
    if (!(step_log > 0.0 && step_log <= 0.05)) {
        throw DomainError("geometric_grid: step_log must lie in (0, 0.05]");
    }
    if (!(x_min >= 1.0)) throw DomainError("geometric_grid: x_min must be >= 1");
    if (!(x_max >= x_min)) {
        throw DomainError("geometric_grid: empty range, x_max < x_min");
    }
    const double limit = x_max * (1.0 + 1e-12);
    std::vector<double> grid;
    for (std::uint64_t j = 0;; ++j) {
        const double x = x_min * std::exp(static_cast<double>(j) * step_log);
        if (x > limit) break;
        grid.push_back(std::min(x, x_max));
    }
    return grid;
}

std::vector<std::uint64_t> grid_checkpoints(std::span<const double> grid) {
    std::vector<std::uint64_t> out;
    out.reserve(grid.size());
    for (const double x : grid) {
        const auto k = floor_index(x);
        if (out.empty() || out.back() != k) out.push_back(k);
    }
    return out;
}

std::vector<ErrorSample> sample_geometric(const PartialSumStream& stream, double x_min,
                                          double x_max, double step_log) {
    const auto grid = geometric_grid(x_min, x_max, step_log);
    if (floor_index(grid.back()) > stream.upto()) {
        throw PreconditionError("sample_geometric: x_max=" + std::to_string(x_max) +
                                " exceeds the sieved range (upto=" + std::to_string(stream.upto()) + ")");
    }
    std::vector<ErrorSample> out;
    out.reserve(grid.size());
    for (const double x : grid) out.push_back(error_term(stream, x));
    return out;
}

void drive_stream(PartialSumStream& stream, std::uint64_t x_max, std::uint64_t segment_size,
                  double c2, unsigned threads) {
    if (segment_size == 0 || segment_size > arith::kMaxSegmentLength) {
        throw DomainError("drive_stream: segment size must lie in [1, " +
                          std::to_string(arith::kMaxSegmentLength) + "]");
    }
    if (x_max > kScanXMaxCap) {
        throw DomainError("drive_stream: x_max=" + std::to_string(x_max) + " exceeds the build cap " +
                          std::to_string(kScanXMaxCap));
    }
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    const auto primes = arith::shared_primes(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x_max))) + 1);
    const double two_c2 = 2.0 * c2;
    const auto compute = [&](std::uint64_t lo, std::uint64_t hi) {
        auto seg = arith::segmented_g(arith::SegmentRange(lo, hi, primes));
        for (std::size_t i = 0; i < seg.g.size(); ++i) {
            seg.g[i] = (lo + i) % 2 == 0 ? two_c2 * seg.g[i] : 0.0;
        }
        return seg;
    };

    std::uint64_t next = stream.upto() + 1;
    while (next <= x_max) {
        std::vector<std::future<arith::GSegment>> batch;
        for (unsigned t = 0; t < threads && next <= x_max; ++t) {
            const std::uint64_t hi = std::min(next + segment_size, x_max + 1);
            batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                       compute, next, hi));
            next = hi;
        }
        for (auto& f : batch) {
            const auto seg = f.get();
            stream.absorb_run(seg.lo, seg.g);
        }
    }
}

std::vector<ErrorSample> error_scan(const ScanConfig& cfg, double c2) {
    if (!(cfg.x_max <= static_cast<double>(kScanXMaxCap))) {
        throw DomainError("error_scan: x_max exceeds the build cap " + std::to_string(kScanXMaxCap));
    }
    const auto grid = geometric_grid(cfg.x_min, cfg.x_max, cfg.step_log);
    PartialSumStream stream(grid_checkpoints(grid));
    drive_stream(stream, static_cast<std::uint64_t>(std::floor(grid.back())), cfg.segment_size, c2,
                 cfg.threads);
    return sample_geometric(stream, cfg.x_min, cfg.x_max, cfg.step_log);
}

OscillationReport oscillation_report(std::span<const double> xs, std::span<const double> values) {
    if (xs.size() != values.size()) throw PreconditionError("oscillation_report: size mismatch");
    if (xs.size() < 2) throw DomainError("oscillation_report: need at least two samples");
    OscillationReport report{{}, values[0], values[0], {}};
    int last_sign = 0;
    std::size_t last_index = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0 && !(xs[i] > xs[i - 1])) {
            throw PreconditionError("oscillation_report: x must be strictly increasing");
        }
        const double v = values[i];
        report.running_max = std::max(report.running_max, v);
        report.running_min = std::min(report.running_min, v);
        const int sign = (v > 0) - (v < 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) {
            const double v0 = values[last_index];
            const double l0 = std::log(xs[last_index]);
            const double l1 = std::log(xs[i]);
            const double crossing = std::exp(l0 + (l1 - l0) * v0 / (v0 - v));
            report.sign_changes.push_back({xs[last_index], xs[i], crossing, sign});
        }
        last_sign = sign;
        last_index = i;
    }
    const auto& changes = report.sign_changes;
    for (std::size_t i = 0; i + 2 < changes.size(); ++i) {
        report.ratios.push_back(changes[i + 2].crossing / changes[i].crossing);
    }
    return report;
}

OscillationReport oscillation_report(std::span<const ErrorSample> samples) {
    std::vector<double> xs;
    std::vector<double> values;
    xs.reserve(samples.size());
    values.reserve(samples.size());
    for (const auto& s : samples) {
        xs.push_back(s.x);
        values.push_back(s.normalized);
    }
    return oscillation_report(xs, values);
}

double median(std::vector<double> values) {
    if (values.empty()) throw DomainError("median: empty input");
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (values.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

}  // namespace singseries::mean
