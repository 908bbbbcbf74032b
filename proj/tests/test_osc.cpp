#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "singseries/errors.hpp"
#include "singseries/osc.hpp"

using namespace singseries;
using namespace singseries::osc;

namespace {

std::vector<mean::ErrorSample> synthetic(double x_min, double x_max, double step,
                                         const std::function<double(double)>& f) {
    std::vector<mean::ErrorSample> out;
    for (double l = std::log(x_min); l <= std::log(x_max); l += step) {
        const double x = std::exp(l);
        out.push_back({x, 0.0, 0.0, f(x)});
    }
    return out;
}

}  // namespace

TEST_CASE("zero table refines to known ordinates") {
    const double known[] = {14.134725141734693, 21.022039638771555, 25.010857580145688,
                            30.424876125859513, 32.935061587739189, 37.586178158825671,
                            40.918719012147495, 43.327073280914999, 48.005150881167159,
                            49.773832477672302};
    const auto table = zero_table();
    REQUIRE(table.size() == 10);
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK_FALSE(table[i].refined);
        const auto z = refine_zero(table[i].gamma);
        CHECK(z.refined);
        CHECK(z.simple);
        CHECK(z.gamma == doctest::Approx(known[i]).epsilon(1e-12));
        CHECK(z.residual < 1e-8);
        CHECK(z.derivative_abs > 1e-3);
    }
}

TEST_CASE("refinement rejects a seed far from a zero") {
    CHECK_THROWS_AS(refine_zero(20.0), PreconditionError);
    CHECK_NOTHROW(refine_zero(14.2));
}

TEST_CASE("first oscillation constant") {
    const auto c = c_rho(refine_zero(14.134725));
    CHECK(std::abs(c.c_value) == doctest::Approx(0.085).epsilon(0.005 / 0.085));
    CHECK(c.s_pole.real() == doctest::Approx(-0.75));
    CHECK(c.s_pole.imag() == doctest::Approx(14.134725141734693 / 2));
    // Doubling the Euler-product cutoff leaves c1 alone.
    ceval::ProductConfig wide;
    wide.prime_cutoff = 200'000;
    const auto c_wide = c_rho(refine_zero(14.134725), wide);
    CHECK(std::abs(c_wide.c_value - c.c_value) < 1e-12);
    // A negated ordinate gives the conjugate constant.
    auto mirrored = refine_zero(14.134725);
    mirrored.gamma = -mirrored.gamma;
    CHECK(std::abs(c_rho(mirrored).c_value - std::conj(c.c_value)) < 1e-12);
    CHECK_THROWS_AS(c_rho(zero_table().front()), PreconditionError);
}

TEST_CASE("model is log periodic") {
    const std::vector<OscillationConstant> model = {c_rho(refine_zero(14.134725))};
    const double period = std::exp(4.0 * std::numbers::pi / model[0].zero.gamma);
    for (const double x : {10.0, 1234.5, 1e6}) {
        CHECK(predicted_normalized(x * period, model) == doctest::Approx(predicted_normalized(x, model)).epsilon(1e-9));
        CHECK(std::abs(predicted_normalized(x, model)) <= 2.0 * std::abs(model[0].c_value) + 1e-15);
    }
    CHECK_THROWS_AS(predicted_normalized(1.5, model), DomainError);
}

TEST_CASE("compare: model against itself") {
    const std::vector<OscillationConstant> model = {c_rho(refine_zero(14.134725))};
    const auto samples = synthetic(1e3, 1e7, 0.01, [&](double x) { return predicted_normalized(x, model); });
    const auto r = compare(samples, model);
    CHECK(r.samples == samples.size());
    CHECK(r.correlation == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.amplitude_ratio == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(r.phase_lag) < 1e-9);
    CHECK(r.fitted_amplitude == doctest::Approx(2.0 * std::abs(model[0].c_value)).epsilon(1e-9));
    CHECK(r.span_periods > 10.0);
}

TEST_CASE("compare: white noise does not correlate") {
    const std::vector<OscillationConstant> model = {c_rho(refine_zero(14.134725))};
    std::mt19937_64 rng(99);
    std::normal_distribution<double> noise(0.0, 1.0);
    const auto samples = synthetic(1e3, 1e7, 0.01, [&](double) { return noise(rng); });
    CHECK(std::abs(compare(samples, model).correlation) < 0.2);
}

TEST_CASE("compare preconditions") {
    const std::vector<OscillationConstant> model = {c_rho(refine_zero(14.134725))};
    const auto few = synthetic(1e3, 1e4, 0.1, [](double) { return 1.0; });
    CHECK_THROWS_AS(compare(few, model), PreconditionError);
    const auto narrow = synthetic(1e3, 2e3, 0.001, [](double x) { return std::sin(x); });
    CHECK_THROWS_AS(compare(narrow, model), PreconditionError);
    const auto ok = synthetic(1e3, 1e7, 0.05, [](double) { return 1.0; });
    CHECK_THROWS_AS(compare(ok, {}), PreconditionError);
}

TEST_CASE("property: pole abscissa and single-zero period ratios") {
    for (const auto& seed : zero_table()) {
        const auto c = c_rho(refine_zero(seed.gamma));
        CHECK(c.s_pole.real() == -0.75);
        CHECK(c.zero.residual < 1e-8);
    }
    const std::vector<OscillationConstant> model = {c_rho(refine_zero(14.134725))};
    std::vector<double> xs;
    std::vector<double> vs;
    for (double l = std::log(100.0); l <= std::log(1e7); l += 1e-4) {
        xs.push_back(std::exp(l));
        vs.push_back(predicted_normalized(xs.back(), model));
    }
    const auto report = mean::oscillation_report(xs, vs);
    REQUIRE(report.ratios.size() > 10);
    const double expected = std::exp(4.0 * std::numbers::pi / model[0].zero.gamma);
    for (const double r : report.ratios) CHECK(std::abs(r - expected) < 1e-6 * expected);
}
