#include <cmath>
#include <string>

#include "complex_util.hpp"
#include "euler_product.hpp"
#include "singseries/arith.hpp"
#include "singseries/ceval.hpp"
#include "singseries/compensated.hpp"
#include "singseries/errors.hpp"

namespace singseries::ceval {

namespace {

using detail::BivariateSeries;

constexpr int kMaxA = 10;
constexpr int kMaxB = 64;
constexpr double kPoleGuard = 1e-6;

// 1 + g3(p,s) with g3 = 2/((p-2)(p^{s+1}+1)); in u = 1/p, z = p^{-(s+1)}:
// g3 = 2uz / ((1-2u)(1+z)).
const BivariateSeries& gcal_log_series() {
    static const BivariateSeries series = [] {
        auto f = BivariateSeries::monomial(kMaxA, kMaxB, 2.0, 1, 1) *
                 BivariateSeries::geometric_u(kMaxA, kMaxB, 2.0) *
                 BivariateSeries::geometric_z(kMaxA, kMaxB, -1.0);
        return f.log1p();
    }();
    return series;
}

// g1 = ((p-1)/(p-2)) / (p^s - 1) = (1-u)/(1-2u) * z/(1-z), z = p^-s.
const BivariateSeries& raw_log_series() {
    static const BivariateSeries series = [] {
        auto one_minus_u = BivariateSeries::monomial(kMaxA, kMaxB, 1.0, 0, 0) +
                           BivariateSeries::monomial(kMaxA, kMaxB, -1.0, 1, 0);
        auto z_over = BivariateSeries::monomial(kMaxA, kMaxB, 1.0, 0, 1) *
                      BivariateSeries::geometric_z(kMaxA, kMaxB, 1.0);
        auto f = one_minus_u * BivariateSeries::geometric_u(kMaxA, kMaxB, 2.0) * z_over;
        return f.log1p();
    }();
    return series;
}

// g2 = 1/((p-2)p^s) = uz/(1-2u), z = p^-s.
const BivariateSeries& stage2_log_series() {
    static const BivariateSeries series = [] {
        auto f = BivariateSeries::monomial(kMaxA, kMaxB, 1.0, 1, 1) *
                 BivariateSeries::geometric_u(kMaxA, kMaxB, 2.0);
        return f.log1p();
    }();
    return series;
}

// log(1 + sign z), z = p^-s.
const BivariateSeries& sign_z_log_series(double sign) {
    static const BivariateSeries plus =
        BivariateSeries::monomial(kMaxA, kMaxB, 1.0, 0, 1).log1p();
    static const BivariateSeries minus =
        BivariateSeries::monomial(kMaxA, kMaxB, -1.0, 0, 1).log1p();
    return sign > 0 ? plus : minus;
}

Complex two_pow(Complex s) { return std::exp(s * std::log(2.0)); }

// zeta(s) zeta(s+1) / zeta(2s+2) with the pole and zero guards.
Complex zeta_ratio(Complex s, const char* what) {
    if (std::abs(s - 1.0) < kPoleGuard || std::abs(s) < kPoleGuard) {
        throw IllConditionedError(std::string(what) + ": within 1e-6 of a pole (s = 0 or 1)");
    }
    const Complex denom = zeta(2.0 * s + 2.0);
    if (std::abs(denom) < kPoleGuard) {
        throw IllConditionedError(std::string(what) + ": zeta(2s+2) within 1e-6 of zero");
    }
    return zeta(s) * zeta(s + 1.0) / denom;
}

}  // namespace

Complex gcal(Complex s, const ProductConfig& cfg) {
    EvalDomain{}.require(s, "gcal");
    const detail::EulerProductSpec spec{
        [](double p, Complex z) { return 2.0 / ((p - 2.0) * (1.0 / z + 1.0)); },
        &gcal_log_series()};
    return detail::euler_product(spec, s + 1.0, cfg.prime_cutoff, cfg.tail_tolerance);
}

Complex G_of(Complex s, const ProductConfig& cfg) {
    EvalDomain{}.require(s, "G_of");
    const Complex two = two_pow(s + 1.0);
    return detail::checked(two / (two + 1.0) * zeta_ratio(s, "G_of") * gcal(s, cfg), "G_of");
}

Complex F_of(Complex s, const ProductConfig& cfg) {
    EvalDomain{}.require(s, "F_of");
    const Complex two = two_pow(s + 1.0);
    return detail::checked(4.0 * arith::c2() / (two + 1.0) * zeta_ratio(s, "F_of") * gcal(s, cfg),
                           "F_of");
}

Complex G_raw_product(Complex s, const ProductConfig& cfg) {
    if (!(s.real() >= 1.05)) throw DomainError("G_raw_product: needs Re(s) >= 1.05");
    const detail::EulerProductSpec spec{
        [](double p, Complex z) { return (p - 1.0) / (p - 2.0) * z / (1.0 - z); },
        &raw_log_series()};
    const Complex product = detail::euler_product(spec, s, cfg.prime_cutoff, cfg.tail_tolerance);
    return product / (1.0 - 1.0 / two_pow(s));
}

Complex G_stage2(Complex s, const ProductConfig& cfg) {
    if (!(s.real() >= 0.05)) throw DomainError("G_stage2: needs Re(s) >= 0.05");
    if (std::abs(s - 1.0) < kPoleGuard) throw IllConditionedError("G_stage2: within 1e-6 of s = 1");
    const detail::EulerProductSpec spec{
        [](double p, Complex z) { return z / (p - 2.0); },
        &stage2_log_series()};
    return zeta(s) * detail::euler_product(spec, s, cfg.prime_cutoff, cfg.tail_tolerance);
}

Complex U_of(Complex s, const ProductConfig& cfg) {
    EvalDomain{}.require(s, "U_of");
    if (std::abs(s - 1.0) < kPoleGuard) throw IllConditionedError("U_of: within 1e-6 of s = 1");
    const Complex denom = zeta(2.0 * s + 2.0);
    if (std::abs(denom) < kPoleGuard) throw IllConditionedError("U_of: zeta(2s+2) within 1e-6 of zero");
    const Complex two = two_pow(s + 1.0);
    return detail::checked(
        4.0 * arith::c2() * zeta(s) * gcal(s, cfg) / ((two + 1.0) * denom * (s + 1.0)), "U_of");
}

ConstantsBundle constants_bundle(const ProductConfig& cfg) {
    ConstantsBundle out{};
    out.euler_gamma = euler_gamma();
    out.log_two_pi = log_two_pi();
    out.c2 = arith::c2();

    const auto residue_sample = [&](double h) {
        const Complex s(1.0 + h, 0.0);
        return (h * F_of(s, cfg) / (s * (s + 1.0))).real();
    };
    constexpr double kResidueStep = 1e-4;
    out.a_const = 2.0 * residue_sample(kResidueStep / 2) - residue_sample(kResidueStep);

    const double u0 = U_of(0.0, cfg).real();
    constexpr double kDiffStep = 1e-5;
    const double du = (U_of(kDiffStep, cfg).real() - U_of(-kDiffStep, cfg).real()) / (2 * kDiffStep);
    out.b_const = u0;
    out.u_log_derivative = du / u0;
    out.c_numeric = (out.u_log_derivative + out.euler_gamma) * u0;
    out.c_const = 0.5 * (1.0 - out.euler_gamma - out.log_two_pi);

    const auto z0 = zeta_and_derivative(0.0);
    out.zeta_at_zero = z0.value.real();
    out.zeta_log_derivative_at_zero = (z0.derivative / z0.value).real();
    return out;
}

double prime_sum_identity_residual(std::uint64_t prime_limit) {
    // Each summand vanishes exactly, since (p-2)(p+1) + 2 = p(p-1); the
    // remainder beyond prime_limit is therefore zero and what is left is
    // rounding.
    const auto primes = arith::shared_primes(prime_limit);
    NeumaierSum<double> sum;
    for (const std::uint32_t prime : *primes) {
        if (prime > prime_limit) break;
        if (prime == 2) continue;
        const double p = prime;
        const double lp = std::log(p);
        const double first = -2.0 * p * lp /
                             ((p - 2.0) * (p + 1.0) * (p + 1.0) * (1.0 + 2.0 / ((p - 2.0) * (p + 1.0))));
        const double second = 2.0 * lp / (p * p - 1.0);
        sum.add(first);
        sum.add(second);
    }
    return std::abs(sum.value());
}

double log_derivative_identity_residual(const ProductConfig& cfg) {
    constexpr double h = 1e-5;
    const double g0 = gcal(0.0, cfg).real();
    const double dg = (gcal(h, cfg).real() - gcal(-h, cfg).real()) / (2 * h);
    const auto z2 = zeta_and_derivative(2.0);
    const double zeta_log_deriv = (z2.derivative / z2.value).real();
    return std::abs(dg / g0 - 2.0 / 3.0 * std::log(2.0) - 2.0 * zeta_log_deriv);
}

InsertionResiduals zeta_insertion_check(Complex s, const ProductConfig& cfg) {
    if (!(s.real() > 1.0)) throw DomainError("zeta_insertion_check: needs Re(s) > 1");
    const Complex two = two_pow(s);
    const detail::EulerProductSpec minus{[](double, Complex z) { return -z; }, &sign_z_log_series(-1.0)};
    const detail::EulerProductSpec plus{[](double, Complex z) { return z; }, &sign_z_log_series(1.0)};
    const Complex zs = zeta(s);
    const Complex first =
        (1.0 - 1.0 / two) * zs * detail::euler_product(minus, s, cfg.prime_cutoff, cfg.tail_tolerance);
    const Complex second = (1.0 + 1.0 / two) * zeta(2.0 * s) / zs *
                           detail::euler_product(plus, s, cfg.prime_cutoff, cfg.tail_tolerance);
    return {std::abs(first - 1.0), std::abs(second - 1.0)};
}

}  // namespace singseries::ceval
