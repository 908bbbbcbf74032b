#pragma once

#include <span>
#include <vector>

#include "singseries/ceval.hpp"
#include "singseries/mean.hpp"

namespace singseries::osc {

using ceval::Complex;

struct ZetaZero {
    double gamma = 0.0;
    bool refined = false;
    double residual = 0.0;        // |zeta(1/2 + i gamma)|
    double derivative_abs = 0.0;  // |zeta'(1/2 + i gamma)|
    bool simple = true;           // derivative_abs > 1e-3
};

// Ordinates of the first ten nontrivial zeros to six decimals, unrefined.
std::vector<ZetaZero> zero_table();

// Newton on t -> zeta(1/2 + it) with d/dt = i zeta'. The seed must satisfy
// |zeta(1/2 + i seed)| < 0.1 (PreconditionError otherwise). Stops once the
// residual is below 1e-8 and the step below 1e-13; RefinementError after
// 20 steps without that. A zero with |zeta'| <= 1e-3 is returned with
// simple = false and a warning on stderr.
ZetaZero refine_zero(double seed);

struct OscillationConstant {
    ZetaZero zero;
    Complex s_pole;   // rho/2 - 1
    Complex c_value;  // residue of the Mellin transform of E at s_pole
};

// (4 C2/(2^{s+1}+1)) zeta(s) zeta(s+1) gcal(s) / (2 zeta'(rho) s (s+1)) at
// s = rho/2 - 1. A negative gamma gives the conjugate zero.
OscillationConstant c_rho(const ZetaZero& zero, const ceval::ProductConfig& cfg = {});

// sum over constants of 2|c| cos((gamma/2) log x + arg c); x >= 2.
double predicted_normalized(double x, std::span<const OscillationConstant> constants);

struct ComparisonReport {
    std::size_t samples = 0;
    double span_periods = 0.0;     // log-x span over the longest model period 4 pi / gamma
    double correlation = 0.0;      // Pearson, measured vs model
    double amplitude_ratio = 0.0;  // max |measured| / (2 sum |c|)
    double phase_lag = 0.0;        // fitted phase of the first zero minus arg c, in (-pi, pi]
    double fitted_amplitude = 0.0; // amplitude of the least-squares first-zero fit
};

// Descriptive only. Needs >= 50 samples spanning >= 3 model periods
// (PreconditionError otherwise).
ComparisonReport compare(std::span<const mean::ErrorSample> measured,
                         std::span<const OscillationConstant> model);

}  // namespace singseries::osc
