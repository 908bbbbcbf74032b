#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace singseries::detail {

using Complex = std::complex<double>;

// Truncated power series sum c[a][b] u^a z^b with a <= max_a, b <= max_b.
class BivariateSeries {
public:
    BivariateSeries(int max_a, int max_b);

    int max_a() const { return max_a_; }
    int max_b() const { return max_b_; }

    double& at(int a, int b) { return c_[static_cast<std::size_t>(a * (max_b_ + 1) + b)]; }
    double at(int a, int b) const { return c_[static_cast<std::size_t>(a * (max_b_ + 1) + b)]; }

    BivariateSeries operator*(const BivariateSeries& other) const;
    BivariateSeries operator+(const BivariateSeries& other) const;
    BivariateSeries scaled(double factor) const;

    // log(1 + f); f must have no constant term and every term of f must
    // carry z (b >= 1), so the expansion terminates at degree max_b.
    BivariateSeries log1p() const;

    // sum_{j>=0} (ratio * u)^j  and  sum_{j>=0} (ratio * z)^j.
    static BivariateSeries geometric_u(int max_a, int max_b, double ratio);
    static BivariateSeries geometric_z(int max_a, int max_b, double ratio);
    static BivariateSeries monomial(int max_a, int max_b, double coeff, int a, int b);

private:
    int max_a_;
    int max_b_;
    std::vector<double> c_;
};

// prod over primes 3 <= p <= cutoff of (1 + term(p)) times the exponentiated
// tail sum_{p > cutoff} log(1 + term(p)), where the tail is expanded as
// log_series in u = 1/p and z = p^-kappa and each monomial is summed with a
// prime-zeta tail at w = a + b kappa.
struct EulerProductSpec {
    std::function<Complex(double p, Complex kappa_power)> term;  // kappa_power = p^-kappa
    const BivariateSeries* log_series;
};

Complex euler_product(const EulerProductSpec& spec, Complex kappa, std::uint64_t cutoff,
                      double tail_tolerance);

}  // namespace singseries::detail
