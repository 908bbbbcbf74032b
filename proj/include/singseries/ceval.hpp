#pragma once

#include <complex>
#include <cstdint>

namespace singseries::ceval {

using Complex = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kLogTwoPi = 1.83787706640934548356065947281123527;

// Single source for the constants used across the library.
double euler_gamma();
double log_two_pi();

// Region where the Euler product and the generating functions are trusted.
// Continuation holds for sigma > -1 but the tail model degrades towards the
// natural boundary, so evaluation stops at -0.9.
struct EvalDomain {
    double sigma_min = -0.9;
    double t_max = 50.0;

    bool contains(Complex s) const {
        return s.real() >= sigma_min && std::abs(s.imag()) <= t_max;
    }
    // Throws DomainError naming `what`.
    void require(Complex s, const char* what) const;
};

// Supported region for the public zeta entry points.
inline constexpr double kZetaSigmaMin = -2.0;
inline constexpr double kZetaTMax = 100.0;

// Euler-Maclaurin summation. Cutoff N = max(20, ceil(2|t|)), twelve Bernoulli
// corrections (B_2 .. B_24); the direct part is summed with compensation.
// Relative error is below 1e-10 across the supported region.
Complex zeta(Complex s);
Complex zeta_derivative(Complex s);

struct ZetaWithDerivative {
    Complex value;
    Complex derivative;
};
ZetaWithDerivative zeta_and_derivative(Complex s);

// zeta(s) - 1 with no region restriction beyond s != 1; accurate for large
// Re(s) where zeta(s) - 1 is tiny.
Complex zeta_minus_one(Complex s);

// Sum over primes of p^-w via sum_n mu(n)/n log zeta(n w). Re(w) >= 1.05.
Complex prime_zeta(Complex w);

// Sum over primes p > cutoff of p^-w.
Complex prime_zeta_tail(Complex w, std::uint64_t cutoff);

struct ProductConfig {
    std::uint64_t prime_cutoff = 100'000;
    // Tail-expansion terms whose estimated size falls below this are dropped.
    double tail_tolerance = 1e-16;
};

// prod_{p>2} (1 + 2/((p-2)(p^{s+1}+1))): direct over p <= cutoff, the rest
// through a bivariate expansion in 1/p and p^{-(s+1)} summed with prime-zeta
// tails.
Complex gcal(Complex s, const ProductConfig& cfg = {});

// Closed forms for the Dirichlet series of g(k) and of the singular series.
// Throw IllConditionedError within 1e-6 of s = 1, s = 0 or a zero of
// zeta(2s+2).
Complex G_of(Complex s, const ProductConfig& cfg = {});
Complex F_of(Complex s, const ProductConfig& cfg = {});

// G(s) through the two intermediate Euler products, for cross-checking the
// closed form:
//   raw     (1 - 2^-s)^-1 prod_{p>2} (1 + (p-1)/((p-2)(p^s-1)))   sigma > 1
//   stage 2 zeta(s) prod_{p>2} (1 + 1/((p-2)p^s))                   sigma > 0
Complex G_raw_product(Complex s, const ProductConfig& cfg = {});
Complex G_stage2(Complex s, const ProductConfig& cfg = {});

// U(s) = 4 C2 zeta(s) gcal(s) / ((2^{s+1}+1) zeta(2s+2) (s+1)), analytic at 0.
Complex U_of(Complex s, const ProductConfig& cfg = {});

struct ConstantsBundle {
    double euler_gamma;
    double log_two_pi;
    double c2;
    double a_const;           // residue of F(s)/(s(s+1)) at s = 1
    double b_const;           // U(0)
    double c_const;           // (1 - gamma - log 2 pi) / 2
    double c_numeric;         // (U'(0)/U(0) + gamma) U(0)
    double u_log_derivative;  // U'(0)/U(0)
    double zeta_at_zero;
    double zeta_log_derivative_at_zero;
};

// A from (s-1)F(s)/(s(s+1)) at s = 1 + 1e-4 with one Richardson halving step;
// U'(0) by central difference, h = 1e-5.
ConstantsBundle constants_bundle(const ProductConfig& cfg = {});

// |sum_{3 <= p <= limit} [-2p log p/((p-2)(p+1)^2 (1 + 2/((p-2)(p+1))))
//                          + 2 log p/(p^2-1)]|
double prime_sum_identity_residual(std::uint64_t prime_limit = 10'000'000);

// Same identity reached analytically:
// gcal'/gcal(0) - (2/3) log 2 - 2 zeta'/zeta(2), gcal' by central difference.
double log_derivative_identity_residual(const ProductConfig& cfg = {});

struct InsertionResiduals {
    double plain;        // (1-2^-s) zeta(s) prod_{p>2}(1-p^-s) - 1
    double squarefree;   // (1+2^-s) zeta(2s)/zeta(s) prod_{p>2}(1+p^-s) - 1
};

// Requires Re(s) > 1.
InsertionResiduals zeta_insertion_check(Complex s, const ProductConfig& cfg = {});

}  // namespace singseries::ceval
