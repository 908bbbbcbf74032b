#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "singseries/arith.hpp"
#include "singseries/errors.hpp"
#include "singseries/mean.hpp"

using namespace singseries;
using namespace singseries::mean;

namespace {

std::vector<double> direct_singular(std::uint64_t n) {
    const auto table = arith::build_spf_table(std::max<std::uint64_t>(n, 2));
    std::vector<double> sing(n + 1, 0.0);
    for (std::uint64_t k = 2; k <= n; k += 2) sing[k] = 2.0 * arith::c2() * arith::g_from_table(table, k);
    return sing;
}

}  // namespace

TEST_CASE("stream rejects gaps and reports missing snapshots") {
    PartialSumStream stream({3});
    const SingularTerm first[] = {{1, 0.0}, {2, 1.0}};
    stream.absorb(first);
    const SingularTerm gap[] = {{4, 1.0}};
    CHECK_THROWS_AS(stream.absorb(gap), SequencingError);
    const double run[] = {0.0, 2.0};
    CHECK_THROWS_AS(stream.absorb_run(5, run), SequencingError);
    stream.absorb_run(3, run);
    CHECK(stream.upto() == 4);
    CHECK(stream.at(3).t0.value() == 1.0);
    CHECK(stream.at(4).t1.value() == 2.0 + 8.0);
    CHECK(stream.at(0).t0.value() == 0.0);
    CHECK_THROWS_AS(stream.at(2), PreconditionError);
    CHECK_THROWS_AS(stream.at(5), PreconditionError);
}

TEST_CASE("Cesaro mean against the double sum") {
    constexpr std::uint64_t n = 1500;
    const auto sing = direct_singular(n);
    std::vector<std::uint64_t> all(n);
    for (std::uint64_t i = 0; i < n; ++i) all[i] = i + 1;
    PartialSumStream stream(all);
    drive_stream(stream, n, 64, arith::c2(), 3);
    for (std::uint64_t x = 2; x <= n; x += 7) {
        double direct = 0.0;
        for (std::uint64_t k = 1; k <= x; ++k) direct += static_cast<double>(x - k) * sing[k];
        CHECK(cesaro_mean(stream, static_cast<double>(x)) == doctest::Approx(direct).epsilon(1e-12));
        // Non-integer x uses the accumulators at floor(x).
        const double y = x + 0.25;
        CHECK(cesaro_mean(stream, y) == doctest::Approx(direct + 0.25 * stream.at(x).t0.value()).epsilon(1e-12));
    }
}

TEST_CASE("accumulators do not depend on segment size or thread count") {
    constexpr std::uint64_t n = 300'000;
    PartialSumStream reference;
    drive_stream(reference, n, n, arith::c2(), 1);
    for (const auto [seg, threads] : {std::pair{777u, 4u}, {65'536u, 2u}, {4096u, 0u}}) {
        PartialSumStream s;
        drive_stream(s, n, seg, arith::c2(), threads);
        CHECK(s.t0().hi == reference.t0().hi);
        CHECK(s.t0().lo == reference.t0().lo);
        CHECK(s.t1().hi == reference.t1().hi);
        CHECK(s.t1().lo == reference.t1().lo);
    }
    PartialSumStream unit;
    drive_stream(unit, 20'000, 1, arith::c2(), 2);
    PartialSumStream single;
    drive_stream(single, 20'000, 20'000, arith::c2(), 1);
    CHECK(unit.t1().hi == single.t1().hi);
    CHECK(unit.t1().lo == single.t1().lo);
    PartialSumStream s;
    CHECK_THROWS_AS(drive_stream(s, 10, 0, arith::c2()), DomainError);
    CHECK_THROWS_AS(drive_stream(s, kScanXMaxCap + 1, 100, arith::c2()), DomainError);
}

TEST_CASE("resuming a stream continues where it stopped") {
    PartialSumStream whole;
    drive_stream(whole, 50'000, 1000, arith::c2(), 1);
    PartialSumStream parts;
    drive_stream(parts, 12'345, 1000, arith::c2(), 1);
    drive_stream(parts, 50'000, 1000, arith::c2(), 1);
    CHECK(parts.t1().hi == whole.t1().hi);
    CHECK(parts.t1().lo == whole.t1().lo);
}

TEST_CASE("main term and error sample identity") {
    CHECK(main_term(1.0) == doctest::Approx(0.5 + 0.5 * (1.0 - 0.5772156649015329 - 1.8378770664093453)));
    CHECK_THROWS_AS(main_term(0.5), DomainError);
    const auto grid = geometric_grid(100.0, 1e6, 0.05);
    PartialSumStream stream(grid_checkpoints(grid));
    drive_stream(stream, 1'000'000, 1 << 16, arith::c2());
    for (const double x : grid) {
        const auto e = error_term(stream, x);
        CHECK(e.x == x);
        CHECK(e.s_of_x == cesaro_mean(stream, x));
        const double recomposed = e.e_of_x + main_term(x);
        CHECK(std::abs(recomposed - e.s_of_x) <= 4.0 * (std::nextafter(e.s_of_x, INFINITY) - e.s_of_x));
        CHECK(e.normalized == doctest::Approx(e.e_of_x / std::pow(x, 0.25)).epsilon(1e-15));
        CHECK(std::abs(e.normalized) < 5.0);
    }
}

TEST_CASE("first moment stays bounded") {
    const std::vector<std::uint64_t> xs = {1000, 100'000, 1'000'000};
    PartialSumStream stream(xs);
    drive_stream(stream, 1'000'000, 1 << 16, arith::c2());
    for (const auto x : xs) CHECK(std::abs(first_moment_check(stream, static_cast<double>(x))) < 10.0);
    CHECK_THROWS_AS(first_moment_check(stream, 0.0), DomainError);
}

TEST_CASE("geometric grid") {
    const auto grid = geometric_grid(100.0, 1e7, 0.05);
    CHECK(grid.size() == 231);
    CHECK(grid.front() == 100.0);
    CHECK(grid.back() <= 1e7);
    CHECK(geometric_grid(100.0, 1e4, 0.05).size() == 93);
    CHECK(geometric_grid(5.0, 5.0, 0.01).size() == 1);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(std::log(grid[i] / grid[i - 1]) == doctest::Approx(0.05).epsilon(1e-9));
    }
    CHECK_THROWS_AS(geometric_grid(100.0, 50.0, 0.01), DomainError);
    CHECK_THROWS_AS(geometric_grid(100.0, 1e4, 0.0), DomainError);
    CHECK_THROWS_AS(geometric_grid(100.0, 1e4, 0.051), DomainError);
    CHECK_THROWS_AS(geometric_grid(0.5, 1e4, 0.01), DomainError);
    const double pts[] = {1.5, 1.9, 2.0, 2.7, 3.0};
    CHECK(grid_checkpoints(pts) == std::vector<std::uint64_t>{1, 2, 3});
}

TEST_CASE("sampling past the sieved range is refused") {
    PartialSumStream stream;
    drive_stream(stream, 1000, 100, arith::c2());
    CHECK_THROWS_AS(sample_geometric(stream, 100.0, 2000.0, 0.05), PreconditionError);
}

TEST_CASE("error scan validates its range") {
    ScanConfig cfg;
    cfg.x_max = static_cast<double>(kScanXMaxCap) * 2;
    CHECK_THROWS_AS(error_scan(cfg, arith::c2()), DomainError);
}

TEST_CASE("oscillation report on a synthetic log-periodic signal") {
    const double gamma = 14.134725141734693;
    std::vector<double> xs;
    std::vector<double> vs;
    for (double l = std::log(100.0); l <= std::log(1e7); l += 1e-4) {
        xs.push_back(std::exp(l));
        vs.push_back(std::cos(gamma / 2 * l + 0.3));
    }
    const auto r = oscillation_report(xs, vs);
    REQUIRE(r.ratios.size() > 10);
    const double expected = std::exp(4.0 * std::numbers::pi / gamma);
    for (const double ratio : r.ratios) CHECK(std::abs(ratio - expected) < 1e-6 * expected);
    CHECK(std::abs(median(r.ratios) - expected) < 1e-6 * expected);
    CHECK(r.running_max == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.running_min == doctest::Approx(-1.0).epsilon(1e-6));
    for (std::size_t i = 1; i < r.sign_changes.size(); ++i) {
        CHECK(r.sign_changes[i].direction == -r.sign_changes[i - 1].direction);
        CHECK(r.sign_changes[i].x_lo < r.sign_changes[i].crossing);
        CHECK(r.sign_changes[i].crossing < r.sign_changes[i].x_hi);
    }
}

TEST_CASE("oscillation report edge cases") {
    const double one[] = {1.0};
    CHECK_THROWS_AS(oscillation_report(one, one), DomainError);
    const double xs[] = {1.0, 1.0};
    const double vs[] = {1.0, -1.0};
    CHECK_THROWS_AS(oscillation_report(xs, vs), PreconditionError);
    const double xs3[] = {1.0, 2.0, 3.0, 4.0};
    const double vs3[] = {1.0, 0.0, 0.0, -1.0};
    const auto r = oscillation_report(xs3, vs3);
    REQUIRE(r.sign_changes.size() == 1);
    CHECK(r.sign_changes[0].x_lo == 1.0);
    CHECK(r.sign_changes[0].x_hi == 4.0);
    CHECK(r.sign_changes[0].direction == -1);
    CHECK(r.ratios.empty());
}

TEST_CASE("median") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK_THROWS_AS(median({}), DomainError);
}

TEST_CASE("property: S(x) is nondecreasing and linear between integers") {
    const auto grid = geometric_grid(1.0, 200'000.0, 0.003);
    PartialSumStream stream(grid_checkpoints(grid));
    drive_stream(stream, 200'000, 4096, arith::c2());
    double previous = -1.0;
    for (const double x : grid) {
        const double s = cesaro_mean(stream, x);
        CHECK(s >= previous);
        previous = s;
        const auto k = static_cast<std::uint64_t>(std::floor(x));
        const double at_floor = cesaro_mean(stream, static_cast<double>(k));
        CHECK(s - at_floor == doctest::Approx((x - k) * stream.at(k).t0.value()).epsilon(1e-9).scale(1.0));
    }
}
