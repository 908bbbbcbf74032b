#include "singseries/arith.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "singseries/ceval.hpp"
#include "singseries/compensated.hpp"
#include "singseries/errors.hpp"

namespace singseries::arith {

Factorization factorize_trial(std::uint64_t n) {
    if (n == 0) throw DomainError("factorize_trial: n must be positive");
    Factorization f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

int mobius(const Factorization& f) {
    for (const auto& pp : f) {
        if (pp.exponent > 1) return 0;
    }
    return f.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t euler_phi(const Factorization& f) {
    std::uint64_t phi = 1;
    for (const auto& [p, e] : f) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

double g_of(std::uint64_t k, std::span<const std::uint64_t> odd_prime_factors) {
    if (k == 0) throw DomainError("g_of: k must be positive");
    double g = 1.0;
    for (const std::uint64_t p : odd_prime_factors) {
        if (p < 3 || k % p != 0) {
            throw DomainError("g_of: " + std::to_string(p) + " is not an odd prime factor of " +
                              std::to_string(k));
        }
        g *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
    }
    return g;
}

double g_from_table(const SpfTable& table, std::uint64_t k) {
    if (k == 1) return 1.0;
    const auto factors = table.odd_prime_factors(k);
    return g_of(k, factors);
}

SingularValue singular_value(std::uint64_t k, double g, double c2) {
    return {k, g, k % 2 == 0 ? 2.0 * c2 * g : 0.0};
}

double twin_prime_constant(double rel_tol, std::uint64_t prime_cutoff) {
    if (!(rel_tol >= 1e-12 && rel_tol <= 1e-4)) {
        throw DomainError("twin_prime_constant: rel_tol must lie in [1e-12, 1e-4]");
    }
    if (prime_cutoff < 100) throw DomainError("twin_prime_constant: prime cutoff must be >= 100");

    const auto primes = shared_primes(prime_cutoff);
    NeumaierSum<double> log_c2;
    for (const std::uint32_t p : *primes) {
        if (p > prime_cutoff) break;
        if (p == 2) continue;
        const double d = static_cast<double>(p - 1);
        log_c2.add(std::log1p(-1.0 / (d * d)));
    }

    // Tail: log(1 - 1/(p-1)^2) = log(1 - 2/p) - 2 log(1 - 1/p)
    //                          = sum_{a>=2} (2 - 2^a)/a p^-a.
    // After order a the remainder is below 2^{a+1} P^-a / (a (a+1) (1 - 2/P)).
    const double cutoff = static_cast<double>(prime_cutoff);
    for (int a = 2; a < 64; ++a) {
        const double coeff = (2.0 - std::ldexp(1.0, a)) / a;
        log_c2.add(coeff * ceval::prime_zeta_tail(ceval::Complex(a, 0.0), prime_cutoff).real());
        const double remainder =
            std::ldexp(1.0, a + 1) * std::pow(cutoff, -a) / (a * (a + 1.0) * (1.0 - 2.0 / cutoff));
        if (remainder < rel_tol / 4) break;
    }
    return std::exp(log_c2.value());
}

double c2() {
    static const double value = twin_prime_constant(1e-12);
    return value;
}

std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t n) {
    if (q == 0) throw DomainError("ramanujan_sum: q must be positive");
    const std::uint64_t abs_n = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    const std::uint64_t d = abs_n == 0 ? q : std::gcd(abs_n, q);
    const std::uint64_t m = q / d;
    const auto fq = factorize_trial(q);
    const auto fm = m == 1 ? Factorization{} : factorize_trial(m);
    const int mu = mobius(fm);
    if (mu == 0) return 0;
    return mu * static_cast<std::int64_t>(euler_phi(fq) / euler_phi(fm));
}

std::int64_t ramanujan_sum_bruteforce(std::uint64_t q, std::int64_t n) {
    if (q == 0 || q > 100'000) {
        throw DomainError("ramanujan_sum_bruteforce: q must lie in [1, 1e5]");
    }
    const auto qi = static_cast<std::int64_t>(q);
    const std::int64_t residue = ((n % qi) + qi) % qi;
    NeumaierSum<double> re;
    NeumaierSum<double> im;
    for (std::int64_t a = 1; a <= qi; ++a) {
        if (std::gcd(a, qi) != 1) continue;
        const std::int64_t r = (a * residue) % qi;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(qi);
        re.add(std::cos(angle));
        im.add(std::sin(angle));
    }
    const double value = re.value();
    const double rounded = std::nearbyint(value);
    const double limit = 1e-8 * static_cast<double>(q);
    if (std::abs(im.value()) > limit || std::abs(value - rounded) > limit) {
        throw NumericalConsistencyError(
            "ramanujan_sum_bruteforce: q=" + std::to_string(q) + " n=" + std::to_string(n) +
            " sum " + std::to_string(value) + "+" + std::to_string(im.value()) +
            "i is not an integer");
    }
    return static_cast<std::int64_t>(rounded);
}

namespace {

// mu(q)^2/phi(q)^2 c_q(-k) for squarefree q; zero otherwise.
double ramanujan_series_term(const Factorization& fq, std::uint64_t abs_k) {
    if (mobius(fq) == 0) return 0.0;
    // q squarefree: with d = (k, q) and m = q/d, c_q(k) = mu(m) phi(q)/phi(m),
    // so the term is mu(m) / (phi(m) phi(q)).
    double phi_q = 1.0;
    double phi_m = 1.0;
    int mu_m = 1;
    for (const auto& pp : fq) {
        const double pm1 = static_cast<double>(pp.prime - 1);
        phi_q *= pm1;
        if (abs_k % pp.prime != 0) {
            phi_m *= pm1;
            mu_m = -mu_m;
        }
    }
    return mu_m / (phi_m * phi_q);
}

}  // namespace

double singular_series_truncated(std::int64_t k, std::uint64_t Q) {
    if (Q < 1) throw DomainError("singular_series_truncated: Q must be >= 1");
    const std::uint64_t abs_k = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    NeumaierSum<double> sum;
    sum.add(1.0);
    if (Q == 1) return sum.value();
    const SpfTable table = build_spf_table(Q);
    for (std::uint64_t q = 2; q <= Q; ++q) {
        sum.add(ramanujan_series_term(table.factorize(q), abs_k));
    }
    return sum.value();
}

}  // namespace singseries::arith
