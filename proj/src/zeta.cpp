#include <array>
#include <cmath>
#include <string>

#include "complex_util.hpp"
#include "singseries/arith.hpp"
#include "singseries/ceval.hpp"
#include "singseries/compensated.hpp"
#include "singseries/errors.hpp"

namespace singseries::ceval {

namespace {

constexpr int kBernoulliOrder = 12;

// B_{2k} / (2k)! for k = 1..12.
constexpr std::array<double, kBernoulliOrder> kBernoulliOverFactorial = [] {
    constexpr std::array<double, kBernoulliOrder> b = {
        1.0 / 6,          -1.0 / 30,         1.0 / 42,          -1.0 / 30,
        5.0 / 66,         -691.0 / 2730,     7.0 / 6,           -3617.0 / 510,
        43867.0 / 798,    -174611.0 / 330,   854513.0 / 138,    -236364091.0 / 2730,
    };
    std::array<double, kBernoulliOrder> out{};
    double fact = 1.0;
    for (int k = 1; k <= kBernoulliOrder; ++k) {
        fact *= (2.0 * k - 1) * (2.0 * k);
        out[k - 1] = b[k - 1] / fact;
    }
    return out;
}();

struct EmParts {
    Complex value;
    Complex derivative;
};

std::uint64_t em_cutoff(Complex s) {
    const double t = std::abs(s.imag());
    return std::max<std::uint64_t>(20, static_cast<std::uint64_t>(std::ceil(2.0 * t)));
}

// Euler-Maclaurin for sum_{n >= first} n^-s, first in {1, 2}.
EmParts euler_maclaurin(Complex s, int first, bool want_derivative) {
    const std::uint64_t cutoff = em_cutoff(s);
    NeumaierSum<Complex> sum;
    NeumaierSum<Complex> dsum;
    for (std::uint64_t n = static_cast<std::uint64_t>(first); n < cutoff; ++n) {
        const double ln = std::log(static_cast<double>(n));
        const Complex term = std::exp(-s * ln);
        sum.add(term);
        if (want_derivative) dsum.add(-ln * term);
    }

    const double big_n = static_cast<double>(cutoff);
    const double log_n = std::log(big_n);
    const Complex n_pow = std::exp(-s * log_n);  // N^-s
    const Complex sm1 = s - 1.0;

    Complex value = sum.value() + big_n * n_pow / sm1 + 0.5 * n_pow;
    Complex deriv = dsum.value();
    if (want_derivative) {
        deriv += -log_n * big_n * n_pow / sm1 - big_n * n_pow / (sm1 * sm1) - 0.5 * log_n * n_pow;
    }

    // k-th correction: B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}.
    Complex rising = s;
    Complex drising = 1.0;
    Complex power = n_pow / big_n;
    const double inv_n2 = 1.0 / (big_n * big_n);
    for (int k = 1; k <= kBernoulliOrder; ++k) {
        const double c = kBernoulliOverFactorial[k - 1];
        value += c * rising * power;
        if (want_derivative) deriv += c * (drising - log_n * rising) * power;
        if (k == kBernoulliOrder) break;
        for (int j : {2 * k - 1, 2 * k}) {
            drising = drising * (s + static_cast<double>(j)) + rising;
            rising *= s + static_cast<double>(j);
        }
        power *= inv_n2;
    }
    return {value, deriv};
}

void require_zeta_region(Complex s, const char* what) {
    if (s == Complex(1.0, 0.0)) {
        throw IllConditionedError(std::string(what) + ": pole at s = 1");
    }
    if (!(s.real() >= kZetaSigmaMin) || !(std::abs(s.imag()) <= kZetaTMax)) {
        throw DomainError(std::string(what) + ": s = (" + std::to_string(s.real()) + ", " +
                          std::to_string(s.imag()) + ") outside sigma >= -2, |t| <= 100");
    }
}

}  // namespace

double euler_gamma() { return kEulerGamma; }
double log_two_pi() { return kLogTwoPi; }

void EvalDomain::require(Complex s, const char* what) const {
    if (!contains(s)) {
        throw DomainError(std::string(what) + ": s = (" + std::to_string(s.real()) + ", " +
                          std::to_string(s.imag()) + ") outside sigma >= " +
                          std::to_string(sigma_min) + ", |t| <= " + std::to_string(t_max));
    }
}

Complex zeta(Complex s) {
    require_zeta_region(s, "zeta");
    return detail::checked(euler_maclaurin(s, 1, false).value, "zeta");
}

Complex zeta_derivative(Complex s) {
    require_zeta_region(s, "zeta_derivative");
    return detail::checked(euler_maclaurin(s, 1, true).derivative, "zeta_derivative");
}

ZetaWithDerivative zeta_and_derivative(Complex s) {
    require_zeta_region(s, "zeta_and_derivative");
    const auto parts = euler_maclaurin(s, 1, true);
    return {detail::checked(parts.value, "zeta"), detail::checked(parts.derivative, "zeta_derivative")};
}

Complex zeta_minus_one(Complex s) {
    if (s == Complex(1.0, 0.0)) throw IllConditionedError("zeta_minus_one: pole at s = 1");
    const double sigma = s.real();
    if (sigma >= 12.0) {
        // Direct sum; stop once the integral tail bound M^{1-sigma}/(sigma-1)
        // drops below 1e-18 of the leading term 2^-sigma.
        NeumaierSum<Complex> sum;
        const double lead = std::pow(2.0, -sigma);
        for (std::uint64_t m = 2;; ++m) {
            const double lm = std::log(static_cast<double>(m));
            sum.add(std::exp(-s * lm));
            const double tail = std::exp((1.0 - sigma) * lm) / (sigma - 1.0);
            if (tail < 1e-18 * lead) break;
        }
        return sum.value();
    }
    return detail::checked(euler_maclaurin(s, 2, false).value, "zeta_minus_one");
}

Complex prime_zeta(Complex w) {
    if (!(w.real() >= 1.05)) {
        throw DomainError("prime_zeta: Re(w) = " + std::to_string(w.real()) + " below 1.05");
    }
    NeumaierSum<Complex> sum;
    for (std::uint64_t n = 1; n < 4096; ++n) {
        const int mu = arith::mobius(arith::factorize_trial(n));
        if (mu == 0) continue;
        const Complex log_zeta = detail::log1p(zeta_minus_one(static_cast<double>(n) * w));
        sum.add(static_cast<double>(mu) / static_cast<double>(n) * log_zeta);
        if (std::abs(log_zeta) < 1e-16 * std::max(std::abs(sum.value()), 1e-300)) break;
    }
    return detail::checked(sum.value(), "prime_zeta");
}

Complex prime_zeta_tail(Complex w, std::uint64_t cutoff) {
    const Complex total = prime_zeta(w);
    const auto primes = arith::shared_primes(cutoff);
    NeumaierSum<Complex> head;
    for (const std::uint32_t p : *primes) {
        if (p > cutoff) break;
        head.add(std::exp(-w * std::log(static_cast<double>(p))));
    }
    return total - head.value();
}

}  // namespace singseries::ceval
