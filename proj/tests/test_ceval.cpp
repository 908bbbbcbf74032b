#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "singseries/arith.hpp"
#include "singseries/ceval.hpp"
#include "singseries/compensated.hpp"
#include "singseries/errors.hpp"

using namespace singseries;
using namespace singseries::ceval;

namespace {

// Borwein's accelerated alternating series for the Dirichlet eta function.
Complex zeta_via_eta(Complex s, int n = 60) {
    std::vector<double> d(n + 1);
    double term = 1.0 / n;
    double sum = term;
    d[0] = sum;
    for (int i = 1; i <= n; ++i) {
        term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1) * (2.0 * i));
        sum += term;
        d[i] = sum * n / n;
    }
    Complex acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const Complex pk = std::exp(-s * std::log(static_cast<double>(k + 1)));
        acc += (k % 2 == 0 ? 1.0 : -1.0) * (d[k] - d[n]) * pk;
    }
    const Complex eta = -acc / d[n];
    return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("zeta at classical points") {
    const double pi = std::numbers::pi;
    CHECK(rel(zeta(2.0), pi * pi / 6) < 1e-14);
    CHECK(rel(zeta(4.0), std::pow(pi, 4) / 90) < 1e-14);
    CHECK(zeta(0.0).real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(rel(zeta(-1.0), -1.0 / 12) < 1e-12);
    CHECK(std::abs(zeta(-2.0)) < 1e-13);
    CHECK(rel(zeta(3.0), 1.2020569031595942) < 1e-14);
}

TEST_CASE("zeta agrees with the accelerated eta series") {
    CHECK(rel(zeta(0.5), zeta_via_eta(0.5)) < 1e-12);
    CHECK(zeta(0.5).real() == doctest::Approx(-1.4603545088095868).epsilon(1e-13));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> sigma(0.05, 3.0);
    std::uniform_real_distribution<double> t(-30.0, 30.0);
    for (int i = 0; i < 40; ++i) {
        const Complex s(sigma(rng), t(rng));
        CHECK(rel(zeta(s), zeta_via_eta(s)) < 1e-10);
    }
}

TEST_CASE("zeta derivative against central differences") {
    CHECK(zeta_derivative(2.0).real() == doctest::Approx(-0.93754825431584375).epsilon(1e-13));
    for (const Complex s : {Complex(0.5, 14.0), Complex(-1.5, 3.0), Complex(2.5, -40.0), Complex(0.3, 90.0)}) {
        const double h = 1e-3;
        const Complex fd =
            (zeta(s - 2 * h) - 8.0 * zeta(s - h) + 8.0 * zeta(s + h) - zeta(s + 2 * h)) / (12 * h);
        CHECK(rel(zeta_derivative(s), fd) < 1e-8);
        const auto both = zeta_and_derivative(s);
        CHECK(both.value == zeta(s));
        CHECK(both.derivative == zeta_derivative(s));
    }
}

TEST_CASE("zeta is conjugate symmetric") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> sigma(kZetaSigmaMin, 4.0);
    std::uniform_real_distribution<double> t(0.0, kZetaTMax);
    for (int i = 0; i < 100; ++i) {
        const Complex s(sigma(rng), t(rng));
        CHECK(std::abs(zeta(std::conj(s)) - std::conj(zeta(s))) <= 1e-14 * std::abs(zeta(s)));
    }
}

TEST_CASE("zeta domain and pole handling") {
    CHECK_THROWS_AS(zeta(1.0), IllConditionedError);
    CHECK_THROWS_AS(zeta_derivative(1.0), IllConditionedError);
    CHECK_THROWS_AS(zeta(Complex(-2.5, 0.0)), DomainError);
    CHECK_THROWS_AS(zeta(Complex(0.5, 101.0)), DomainError);
    const double direct = std::pow(2.0, -40.0) + std::pow(3.0, -40.0) + std::pow(4.0, -40.0);
    CHECK(zeta_minus_one(40.0).real() == doctest::Approx(direct).epsilon(1e-15));
}

TEST_CASE("prime zeta against direct prime sums") {
    const auto primes = arith::sieve_primes(1'000'000);
    NeumaierSum<double> p4;
    NeumaierSum<double> p2;
    for (const auto p : primes) {
        p4.add(std::pow(static_cast<double>(p), -4.0));
        p2.add(std::pow(static_cast<double>(p), -2.0));
    }
    CHECK(std::abs(prime_zeta(4.0).real() - p4.value()) < 1e-15);
    // Remainder of the p^-2 sum past 1e6 is about 1/(1e6 log 1e6) = 7.2e-8.
    const double tail2 = prime_zeta(2.0).real() - p2.value();
    CHECK(tail2 == doctest::Approx(prime_zeta_tail(2.0, 1'000'000).real()).epsilon(1e-8));
    CHECK(tail2 > 6e-8);
    CHECK(tail2 < 8e-8);
    CHECK(prime_zeta(2.0).real() == doctest::Approx(0.45224742004106550).epsilon(1e-14));
    CHECK_THROWS_AS(prime_zeta(1.0), DomainError);
}

TEST_CASE("gcal is stable under doubling the prime cutoff") {
    ProductConfig a;
    ProductConfig b;
    b.prime_cutoff = 2 * a.prime_cutoff;
    for (const Complex s : {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(-0.9, 50.0), Complex(-0.5, 7.0),
                            Complex(2.0, -20.0)}) {
        CHECK(rel(gcal(s, a), gcal(s, b)) < 1e-10);
        CHECK(std::abs(gcal(std::conj(s), a) - std::conj(gcal(s, a))) < 1e-14);
    }
    CHECK_THROWS_AS(gcal(Complex(-0.95, 0.0)), DomainError);
    CHECK_THROWS_AS(gcal(Complex(0.0, 51.0)), DomainError);
}

TEST_CASE("zeta insertion reproduces one") {
    for (const Complex s : {Complex(1.1, 0.0), Complex(2.0, 0.0), Complex(3.0, 5.0)}) {
        const auto r = zeta_insertion_check(s);
        CHECK(r.plain < 1e-12);
        CHECK(r.squarefree < 1e-12);
    }
    CHECK_THROWS_AS(zeta_insertion_check(1.0), DomainError);
}

TEST_CASE("generating function cascade") {
    for (const Complex s : {Complex(1.5, 0.0), Complex(2.0, 10.0), Complex(3.0, -4.0)}) {
        const Complex closed = G_of(s);
        CHECK(rel(G_raw_product(s), closed) < 1e-12);
        CHECK(rel(G_stage2(s), closed) < 1e-12);
    }
    CHECK(rel(G_stage2(Complex(0.3, 2.0)), G_of(Complex(0.3, 2.0))) < 1e-12);
    CHECK_THROWS_AS(G_raw_product(1.0), DomainError);
    CHECK_THROWS_AS(G_stage2(0.0), DomainError);
    CHECK_THROWS_AS(G_of(1.0), IllConditionedError);
    CHECK_THROWS_AS(F_of(Complex(0.0, 0.0)), IllConditionedError);
}

TEST_CASE("reciprocal twin constant from two evaluations") {
    const double inv = 1.0 / arith::c2();
    CHECK((4.0 * zeta(2.0) * gcal(1.0) / (5.0 * zeta(4.0))).real() == doctest::Approx(inv).epsilon(1e-14));
    CHECK((4.0 * gcal(0.0) / (3.0 * zeta(2.0))).real() == doctest::Approx(inv).epsilon(1e-14));
}

TEST_CASE("constants bundle") {
    const auto b = constants_bundle();
    CHECK(std::abs(b.a_const - 0.5) < 1e-7);
    CHECK(std::abs(b.b_const + 0.5) < 1e-12);
    CHECK(std::abs(b.u_log_derivative - (kLogTwoPi - 1.0)) < 1e-8);
    CHECK(std::abs(b.c_numeric - b.c_const) < 1e-8);
    CHECK(b.zeta_at_zero == -0.5);
    CHECK(std::abs(b.zeta_log_derivative_at_zero - kLogTwoPi) < 1e-12);
    CHECK(euler_gamma() == kEulerGamma);
    CHECK(log_two_pi() == kLogTwoPi);
}

TEST_CASE("prime sum identity") {
    CHECK(prime_sum_identity_residual(1'000'000) < 1e-15);
    CHECK(log_derivative_identity_residual() < 1e-8);
}

namespace {

struct Fraction {
    __int128 num;
    __int128 den;
};

Fraction make(__int128 n, __int128 d) { return {n, d}; }
Fraction add(Fraction a, Fraction b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Fraction mul(Fraction a, Fraction b) { return {a.num * b.num, a.den * b.den}; }
Fraction inv(Fraction a) { return {a.den, a.num}; }
bool is_zero(Fraction a) { return a.num == 0; }

}  // namespace

TEST_CASE("property: local factor rewrites hold in exact rationals") {
    for (const __int128 p : {3, 5, 7}) {
        for (int s = 1; s <= 3; ++s) {
            __int128 ps = 1;
            for (int i = 0; i < s; ++i) ps *= p;
            const Fraction one = make(1, 1);
            const Fraction g2 = make(1, (p - 2) * ps);
            // (1 - p^-s)(1 + ((p-1)/(p-2))/(p^s - 1)) - 1 - 1/((p-2) p^s)
            const Fraction lhs2 = mul(make(ps - 1, ps), add(one, make(p - 1, (p - 2) * (ps - 1))));
            CHECK(is_zero(add(add(lhs2, make(-1, 1)), make(-g2.num, g2.den))));
            // (1 + p^-(s+1))^-1 (1 + g2) - 1 - 2/((p-2)(p^{s+1}+1))
            const Fraction lhs3 = mul(inv(make(ps * p + 1, ps * p)), add(one, g2));
            CHECK(is_zero(add(add(lhs3, make(-1, 1)), make(-2, (p - 2) * (ps * p + 1)))));
        }
    }
}

TEST_CASE("property: F is 2 C2 2^-s G across the domain") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> sigma(-0.9, 3.0);
    std::uniform_real_distribution<double> t(-50.0, 50.0);
    for (int i = 0; i < 20; ++i) {
        const Complex s(sigma(rng), t(rng));
        const Complex expected = 2.0 * arith::c2() * std::exp(-s * std::log(2.0)) * G_of(s);
        CHECK(rel(F_of(s), expected) < 1e-10);
    }
}

TEST_CASE("property: conjugate symmetry of the generating functions") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> sigma(-0.9, 3.0);
    std::uniform_real_distribution<double> t(0.5, 50.0);
    for (int i = 0; i < 20; ++i) {
        const Complex s(sigma(rng), t(rng));
        CHECK(rel(gcal(std::conj(s)), std::conj(gcal(s))) < 1e-14);
        CHECK(rel(G_of(std::conj(s)), std::conj(G_of(s))) < 1e-14);
        CHECK(rel(F_of(std::conj(s)), std::conj(F_of(s))) < 1e-14);
        CHECK(rel(U_of(std::conj(s)), std::conj(U_of(s))) < 1e-14);
    }
}
