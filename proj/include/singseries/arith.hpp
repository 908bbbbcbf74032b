#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace singseries::arith {

// SpfTable stores one uint32 per entry, so the cap is a 400 MB budget.
inline constexpr std::uint64_t kSpfTableCap = 100'000'000;

// Longest half-open range segmented_g will process in one call.
inline constexpr std::uint64_t kMaxSegmentLength = std::uint64_t{1} << 24;

// sieve_primes works on 32-bit primes.
inline constexpr std::uint64_t kPrimeSieveCap = 4'000'000'000ULL;

struct PrimePower {
    std::uint64_t prime;
    int exponent;

    bool operator==(const PrimePower&) const = default;
};

// Ascending by prime.
using Factorization = std::vector<PrimePower>;

Factorization factorize_trial(std::uint64_t n);

int mobius(const Factorization& f);
std::uint64_t euler_phi(const Factorization& f);

// Smallest-prime-factor table over [2, limit], immutable once built.
class SpfTable {
public:
    std::uint64_t limit() const { return spf_.empty() ? 0 : spf_.size() - 1; }

    std::uint32_t spf(std::uint64_t k) const;
    bool is_prime(std::uint64_t k) const { return k >= 2 && spf(k) == k; }
    Factorization factorize(std::uint64_t k) const;

    // Odd primes dividing k, ascending.
    std::vector<std::uint64_t> odd_prime_factors(std::uint64_t k) const;

    std::uint64_t prime_count() const;

private:
    friend SpfTable build_spf_table(std::uint64_t n, std::uint64_t cap);
    std::vector<std::uint32_t> spf_;
};

// Throws ResourceError when n > cap, DomainError when n < 2.
SpfTable build_spf_table(std::uint64_t n, std::uint64_t cap = kSpfTableCap);

// All primes <= limit, ascending (segmented odd-only Eratosthenes).
std::vector<std::uint32_t> sieve_primes(std::uint64_t limit);

// Process-wide cache; the returned list holds at least every prime <= limit
// and possibly more. Safe to call concurrently.
std::shared_ptr<const std::vector<std::uint32_t>> shared_primes(std::uint64_t limit);

// Product over the odd primes p | k of (p-1)/(p-2), multiplied in the order
// given. Throws DomainError for k == 0.
double g_of(std::uint64_t k, std::span<const std::uint64_t> odd_prime_factors);

double g_from_table(const SpfTable& table, std::uint64_t k);

struct SingularValue {
    std::uint64_t k;
    double g;
    double sing;
};

SingularValue singular_value(std::uint64_t k, double g, double c2);

// Half-open [lo, hi) with the primes <= sqrt(hi - 1).
class SegmentRange {
public:
    SegmentRange(std::uint64_t lo, std::uint64_t hi);
    SegmentRange(std::uint64_t lo, std::uint64_t hi,
                 std::shared_ptr<const std::vector<std::uint32_t>> primes);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    std::uint64_t size() const { return hi_ - lo_; }
    std::span<const std::uint32_t> primes() const {
        return {primes_->data(), prime_count_};
    }

private:
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::shared_ptr<const std::vector<std::uint32_t>> primes_;
    std::size_t prime_count_ = 0;
};

struct GSegment {
    std::uint64_t lo;
    std::vector<double> g;  // g[i] is g(lo + i)
};

GSegment segmented_g(const SegmentRange& range);

// C2 = prod_{p>2} (1 - 1/(p-1)^2). The product runs over primes <= cutoff;
// the remainder uses log(1 - 1/(p-1)^2) = sum_a (2 - 2^a)/a * p^-a with
// prime-zeta tails. rel_tol in [1e-12, 1e-4].
double twin_prime_constant(double rel_tol, std::uint64_t prime_cutoff = 100'000);

// twin_prime_constant(1e-12), computed once.
double c2();

// c_q(n) = mu(q/(n,q)) phi(q) / phi(q/(n,q)), with (0, q) = q.
std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t n);

// Rounded exponential sum; q <= 1e5. Throws NumericalConsistencyError when
// the imaginary part or rounding residual exceeds 1e-8 * q.
std::int64_t ramanujan_sum_bruteforce(std::uint64_t q, std::int64_t n);

// sum_{q <= Q} mu(q)^2/phi(q)^2 c_q(-k).
double singular_series_truncated(std::int64_t k, std::uint64_t Q);

}  // namespace singseries::arith
