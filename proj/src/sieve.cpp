#include "singseries/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "singseries/errors.hpp"

namespace singseries::arith {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::uint32_t SpfTable::spf(std::uint64_t k) const {
    if (k < 2 || k >= spf_.size()) {
        throw DomainError("SpfTable::spf: k=" + std::to_string(k) + " outside [2, " +
                          std::to_string(limit()) + "]");
    }
    return spf_[k];
}

Factorization SpfTable::factorize(std::uint64_t k) const {
    Factorization f;
    if (k == 1) return f;
    while (k > 1) {
        const std::uint32_t p = spf(k);
        int e = 0;
        while (k % p == 0) {
            k /= p;
            ++e;
        }
        f.push_back({p, e});
    }
    return f;
}

std::vector<std::uint64_t> SpfTable::odd_prime_factors(std::uint64_t k) const {
    std::vector<std::uint64_t> out;
    while (k > 1) {
        const std::uint32_t p = spf(k);
        if (p > 2) out.push_back(p);
        while (k % p == 0) k /= p;
    }
    return out;
}

std::uint64_t SpfTable::prime_count() const {
    std::uint64_t n = 0;
    for (std::uint64_t k = 2; k < spf_.size(); ++k) {
        if (spf_[k] == k) ++n;
    }
    return n;
}

SpfTable build_spf_table(std::uint64_t n, std::uint64_t cap) {
    if (n < 2) throw DomainError("build_spf_table: N must be >= 2");
    if (n > cap) {
        throw ResourceError("build_spf_table: N=" + std::to_string(n) +
                            " exceeds the table cap of " + std::to_string(cap) +
                            " entries; use segmented_g instead");
    }
    SpfTable table;
    table.spf_.assign(n + 1, 0);
    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(1.3 * n / std::log(static_cast<double>(n) + 1.0)) + 16);
    auto& spf = table.spf_;
    // Linear sieve: every composite is written exactly once, by its spf.
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t limit_p = spf[i];
        for (std::uint32_t p : primes) {
            if (p > limit_p) break;
            const std::uint64_t m = i * p;
            if (m > n) break;
            spf[m] = p;
        }
    }
    return table;
}

std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
    if (limit > kPrimeSieveCap) {
        throw ResourceError("sieve_primes: limit " + std::to_string(limit) + " exceeds " +
                            std::to_string(kPrimeSieveCap));
    }
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    primes.reserve(static_cast<std::size_t>(1.26 * limit / std::log(static_cast<double>(limit) + 2.0)) + 8);
    primes.push_back(2);
    if (limit < 3) return primes;

    const std::uint64_t root = isqrt(limit);
    std::vector<char> small(root + 1, 1);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 3; i <= root; i += 2) {
        if (!small[i]) continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += 2 * i) small[j] = 0;
    }

    // Index i stands for the odd number 2i + 1.
    const std::uint64_t last_index = (limit - 1) / 2;
    constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;
    std::vector<char> mark(kSegment);
    std::vector<std::uint64_t> next(base.size());
    for (std::size_t j = 0; j < base.size(); ++j) next[j] = (base[j] * base[j] - 1) / 2;

    for (std::uint64_t lo = 1; lo <= last_index; lo += kSegment) {
        const std::uint64_t hi = std::min(lo + kSegment, last_index + 1);
        std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(hi - lo), 1);
        for (std::size_t j = 0; j < base.size(); ++j) {
            std::uint64_t idx = next[j];
            const std::uint64_t p = base[j];
            for (; idx < hi; idx += p) mark[idx - lo] = 0;
            next[j] = idx;
        }
        for (std::uint64_t i = lo; i < hi; ++i) {
            if (mark[i - lo]) primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
        }
    }
    return primes;
}

std::shared_ptr<const std::vector<std::uint32_t>> shared_primes(std::uint64_t limit) {
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<std::uint32_t>> cache;
    static std::uint64_t cached_limit = 0;

    std::lock_guard lock(mutex);
    if (!cache || cached_limit < limit) {
        // Grow geometrically so a run of slightly larger requests sieves once.
        const std::uint64_t target = std::max<std::uint64_t>(limit, std::min(2 * cached_limit, kPrimeSieveCap));
        cache = std::make_shared<const std::vector<std::uint32_t>>(sieve_primes(target));
        cached_limit = target;
    }
    return cache;
}

SegmentRange::SegmentRange(std::uint64_t lo, std::uint64_t hi)
    : SegmentRange(lo, hi, nullptr) {}

SegmentRange::SegmentRange(std::uint64_t lo, std::uint64_t hi,
                           std::shared_ptr<const std::vector<std::uint32_t>> primes)
    : lo_(lo), hi_(hi), primes_(std::move(primes)) {
    if (lo < 1 || hi < lo) {
        throw PreconditionError("SegmentRange: need 1 <= lo <= hi, got [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + ")");
    }
    if (hi - lo > kMaxSegmentLength) {
        throw PreconditionError("SegmentRange: length " + std::to_string(hi - lo) +
                                " exceeds the segment size limit " +
                                std::to_string(kMaxSegmentLength));
    }
    const std::uint64_t root = hi > 1 ? isqrt(hi - 1) : 0;
    // A caller-supplied list must hold every prime <= root.
    if (!primes_) primes_ = shared_primes(root);
    prime_count_ = static_cast<std::size_t>(
        std::upper_bound(primes_->begin(), primes_->end(), root) - primes_->begin());
}

GSegment segmented_g(const SegmentRange& range) {
    const std::uint64_t lo = range.lo();
    const std::uint64_t hi = range.hi();
    const std::size_t n = range.size();
    GSegment out{lo, std::vector<double>(n, 1.0)};
    if (n == 0) return out;

    // acc[i] collects the part of lo+i made of primes <= sqrt(hi-1); what is
    // left over after the sweep is 1 or a single larger prime.
    std::vector<std::uint64_t> acc(n, 1);
    const std::uint64_t top = hi - 1;
    for (const std::uint64_t p : range.primes()) {
        const double ratio = p > 2 ? static_cast<double>(p - 1) / static_cast<double>(p - 2) : 1.0;
        const std::uint64_t first = (lo + p - 1) / p * p;
        for (std::uint64_t m = first; m < hi; m += p) {
            acc[m - lo] *= p;
            if (p > 2) out.g[m - lo] *= ratio;
        }
        for (std::uint64_t pk = p; pk <= top / p;) {
            pk *= p;
            for (std::uint64_t m = (lo + pk - 1) / pk * pk; m < hi; m += pk) acc[m - lo] *= p;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t cof = (lo + i) / acc[i];
        if (cof > 2) {
            out.g[i] *= static_cast<double>(cof - 1) / static_cast<double>(cof - 2);
        }
    }
    return out;
}

}  // namespace singseries::arith
