#include "euler_product.hpp"

#include <cmath>
#include <string>

#include "complex_util.hpp"
#include "singseries/arith.hpp"
#include "singseries/ceval.hpp"
#include "singseries/compensated.hpp"
#include "singseries/errors.hpp"

namespace singseries::detail {

BivariateSeries::BivariateSeries(int max_a, int max_b)
    : max_a_(max_a), max_b_(max_b), c_(static_cast<std::size_t>((max_a + 1) * (max_b + 1)), 0.0) {}

BivariateSeries BivariateSeries::operator*(const BivariateSeries& other) const {
    BivariateSeries out(max_a_, max_b_);
    for (int a1 = 0; a1 <= max_a_; ++a1) {
        for (int b1 = 0; b1 <= max_b_; ++b1) {
            const double x = at(a1, b1);
            if (x == 0.0) continue;
            for (int a2 = 0; a1 + a2 <= max_a_; ++a2) {
                for (int b2 = 0; b1 + b2 <= max_b_; ++b2) {
                    out.at(a1 + a2, b1 + b2) += x * other.at(a2, b2);
                }
            }
        }
    }
    return out;
}

BivariateSeries BivariateSeries::operator+(const BivariateSeries& other) const {
    BivariateSeries out = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] += other.c_[i];
    return out;
}

BivariateSeries BivariateSeries::scaled(double factor) const {
    BivariateSeries out = *this;
    for (double& x : out.c_) x *= factor;
    return out;
}

BivariateSeries BivariateSeries::log1p() const {
    BivariateSeries result(max_a_, max_b_);
    BivariateSeries power = *this;
    for (int m = 1; m <= max_b_; ++m) {
        result = result + power.scaled((m % 2 == 1 ? 1.0 : -1.0) / m);
        power = power * *this;
    }
    return result;
}

BivariateSeries BivariateSeries::geometric_u(int max_a, int max_b, double ratio) {
    BivariateSeries out(max_a, max_b);
    double c = 1.0;
    for (int a = 0; a <= max_a; ++a, c *= ratio) out.at(a, 0) = c;
    return out;
}

BivariateSeries BivariateSeries::geometric_z(int max_a, int max_b, double ratio) {
    BivariateSeries out(max_a, max_b);
    double c = 1.0;
    for (int b = 0; b <= max_b; ++b, c *= ratio) out.at(0, b) = c;
    return out;
}

BivariateSeries BivariateSeries::monomial(int max_a, int max_b, double coeff, int a, int b) {
    BivariateSeries out(max_a, max_b);
    out.at(a, b) = coeff;
    return out;
}

namespace {

struct TailTerm {
    int a;
    int b;
    double coeff;
    Complex w;
};

}  // namespace

Complex euler_product(const EulerProductSpec& spec, Complex kappa, std::uint64_t cutoff,
                      double tail_tolerance) {
    const BivariateSeries& series = *spec.log_series;
    const double big_p = static_cast<double>(cutoff);
    const double log_p = std::log(big_p);

    std::vector<TailTerm> terms;
    for (int a = 0; a <= series.max_a(); ++a) {
        for (int b = 0; b <= series.max_b(); ++b) {
            const double c = series.at(a, b);
            if (c == 0.0) continue;
            const Complex w = static_cast<double>(a) + static_cast<double>(b) * kappa;
            const double sigma = w.real();
            if (sigma < 1.05) {
                throw DomainError("euler_product: tail term p^-(" + std::to_string(a) + " + " +
                                  std::to_string(b) + " kappa) does not converge fast enough");
            }
            // sum_{p > P} p^-sigma ~ P^{1-sigma} / ((sigma - 1) log P)
            const double estimate = std::abs(c) * std::exp((1.0 - sigma) * log_p) / ((sigma - 1.0) * log_p);
            if (estimate < tail_tolerance) continue;
            if (b == series.max_b() || a == series.max_a()) {
                throw IllConditionedError(
                    "euler_product: tail expansion truncated too early for this cutoff and s");
            }
            terms.push_back({a, b, c, w});
        }
    }

    const auto primes = arith::shared_primes(cutoff);
    NeumaierSum<Complex> log_head;
    std::vector<NeumaierSum<Complex>> partial(terms.size());
    std::vector<double> u_pow(static_cast<std::size_t>(series.max_a() + 1));
    std::vector<Complex> z_pow(static_cast<std::size_t>(series.max_b() + 1));
    for (const std::uint32_t prime : *primes) {
        if (prime > cutoff) break;
        const double p = static_cast<double>(prime);
        const Complex z = std::exp(-kappa * std::log(p));
        if (prime > 2) log_head.add(log1p(spec.term(p, z)));
        if (terms.empty()) continue;
        u_pow[0] = 1.0;
        for (std::size_t a = 1; a < u_pow.size(); ++a) u_pow[a] = u_pow[a - 1] / p;
        z_pow[0] = 1.0;
        for (std::size_t b = 1; b < z_pow.size(); ++b) z_pow[b] = z_pow[b - 1] * z;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            partial[i].add(u_pow[static_cast<std::size_t>(terms[i].a)] *
                           z_pow[static_cast<std::size_t>(terms[i].b)]);
        }
    }

    NeumaierSum<Complex> log_tail;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Complex tail = ceval::prime_zeta(terms[i].w) - partial[i].value();
        log_tail.add(terms[i].coeff * tail);
    }
    return checked(std::exp(log_head.value() + log_tail.value()), "euler_product");
}

}  // namespace singseries::detail
