#include "singseries/osc.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "singseries/arith.hpp"
#include "singseries/errors.hpp"

namespace singseries::osc {

std::vector<ZetaZero> zero_table() {
    static constexpr double kSeeds[] = {
        14.134725, 21.022040, 25.010858, 30.424876, 32.935062,
        37.586178, 40.918719, 43.327073, 48.005151, 49.773832,
    };
    std::vector<ZetaZero> out;
    for (const double g : kSeeds) out.push_back({g, false, 0.0, 0.0, true});
    return out;
}

ZetaZero refine_zero(double seed) {
    constexpr double kSeedSlack = 0.1;
    constexpr double kResidualTarget = 1e-8;
    constexpr double kSimpleThreshold = 1e-3;
    constexpr int kMaxSteps = 20;

    const double seed_residual = std::abs(ceval::zeta(Complex(0.5, seed)));
    if (!(seed_residual < kSeedSlack)) {
        throw PreconditionError("refine_zero: |zeta(1/2 + i*" + std::to_string(seed) + ")| = " +
                                std::to_string(seed_residual) + " is not below 0.1");
    }

    double t = seed;
    for (int step = 0; step < kMaxSteps; ++step) {
        const auto z = ceval::zeta_and_derivative(Complex(0.5, t));
        const Complex dz_dt = Complex(0.0, 1.0) * z.derivative;
        const double delta = (z.value / dz_dt).real();
        t -= delta;
        if (std::abs(delta) < 1e-13 * std::max(1.0, std::abs(t))) {
            const auto fin = ceval::zeta_and_derivative(Complex(0.5, t));
            ZetaZero zero{t, true, std::abs(fin.value), std::abs(fin.derivative), true};
            if (zero.residual >= kResidualTarget) break;
            if (zero.derivative_abs <= kSimpleThreshold) {
                zero.simple = false;
                std::cerr << "warning: zero near t=" << t << " has |zeta'| = " << zero.derivative_abs
                          << "; treating it as a multiple zero\n";
            }
            return zero;
        }
    }
    throw RefinementError("refine_zero: no convergence from seed " + std::to_string(seed));
}

OscillationConstant c_rho(const ZetaZero& zero, const ceval::ProductConfig& cfg) {
    if (!zero.refined) throw PreconditionError("c_rho: zero must be refined first");
    if (!zero.simple) {
        throw PreconditionError("c_rho: only simple zeros are supported");
    }
    const Complex rho(0.5, zero.gamma);
    const Complex s = rho / 2.0 - 1.0;
    const Complex zeta_prime = ceval::zeta_derivative(rho);
    const Complex two = std::exp((s + 1.0) * std::log(2.0));
    const Complex c = 4.0 * arith::c2() / (two + 1.0) * ceval::zeta(s) * ceval::zeta(s + 1.0) /
                      (2.0 * zeta_prime * s * (s + 1.0)) * ceval::gcal(s, cfg);
    return {zero, s, c};
}

double predicted_normalized(double x, std::span<const OscillationConstant> constants) {
    if (!(x >= 2.0)) throw DomainError("predicted_normalized: x must be >= 2");
    const double lx = std::log(x);
    double sum = 0.0;
    for (const auto& c : constants) {
        sum += 2.0 * std::abs(c.c_value) * std::cos(0.5 * c.zero.gamma * lx + std::arg(c.c_value));
    }
    return sum;
}

ComparisonReport compare(std::span<const mean::ErrorSample> measured,
                         std::span<const OscillationConstant> model) {
    if (model.empty()) throw PreconditionError("compare: empty model");
    if (measured.size() < 50) throw PreconditionError("compare: need at least 50 samples");

    double min_gamma = std::abs(model.front().zero.gamma);
    double amplitude = 0.0;
    for (const auto& c : model) {
        min_gamma = std::min(min_gamma, std::abs(c.zero.gamma));
        amplitude += 2.0 * std::abs(c.c_value);
    }
    const double period = 4.0 * std::numbers::pi / min_gamma;
    ComparisonReport report;
    report.samples = measured.size();
    report.span_periods = std::log(measured.back().x / measured.front().x) / period;
    if (report.span_periods < 3.0) {
        throw PreconditionError("compare: samples span " + std::to_string(report.span_periods) +
                                " model periods, need >= 3");
    }

    const double n = static_cast<double>(measured.size());
    double mean_m = 0.0, mean_p = 0.0, peak = 0.0;
    std::vector<double> predicted(measured.size());
    for (std::size_t i = 0; i < measured.size(); ++i) {
        predicted[i] = predicted_normalized(measured[i].x, model);
        mean_m += measured[i].normalized;
        mean_p += predicted[i];
        peak = std::max(peak, std::abs(measured[i].normalized));
    }
    mean_m /= n;
    mean_p /= n;
    double smm = 0.0, spp = 0.0, smp = 0.0;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        const double dm = measured[i].normalized - mean_m;
        const double dp = predicted[i] - mean_p;
        smm += dm * dm;
        spp += dp * dp;
        smp += dm * dp;
    }
    report.correlation = (smm > 0 && spp > 0) ? smp / std::sqrt(smm * spp) : 0.0;
    report.amplitude_ratio = amplitude > 0 ? peak / amplitude : 0.0;

    // Least squares  measured ~ a cos(theta) + b sin(theta),  theta = (gamma_1/2) log x,
    // which is R cos(theta + phi) with R cos(phi) = a, R sin(phi) = -b.
    const auto& first = model.front();
    double cc = 0.0, ss = 0.0, cs = 0.0, yc = 0.0, ys = 0.0;
    for (const auto& m : measured) {
        const double theta = 0.5 * first.zero.gamma * std::log(m.x);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        cc += c * c;
        ss += s * s;
        cs += c * s;
        yc += m.normalized * c;
        ys += m.normalized * s;
    }
    const double det = cc * ss - cs * cs;
    if (det > 0) {
        const double a = (yc * ss - ys * cs) / det;
        const double b = (ys * cc - yc * cs) / det;
        report.fitted_amplitude = std::hypot(a, b);
        double lag = std::atan2(-b, a) - std::arg(first.c_value);
        lag = std::remainder(lag, 2.0 * std::numbers::pi);
        if (lag <= -std::numbers::pi) lag += 2.0 * std::numbers::pi;
        report.phase_lag = lag;
    }
    return report;
}

}  // namespace singseries::osc
