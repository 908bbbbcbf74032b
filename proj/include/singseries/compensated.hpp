#pragma once

#include <cmath>
#include <complex>

namespace singseries {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2 (double-double).
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h) {}
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    [[nodiscard]] double value() const { return hi + lo; }
};

// Error-free transformations.
inline DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    DoubleDouble s = two_sum(a.hi, b.hi);
    DoubleDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator+(DoubleDouble a, double b) {
    DoubleDouble s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble& operator+=(DoubleDouble& a, double b) { return a = a + b; }
inline DoubleDouble& operator+=(DoubleDouble& a, DoubleDouble b) { return a = a + b; }

inline DoubleDouble operator*(DoubleDouble a, double b) {
    DoubleDouble p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

// Neumaier running sum; cheaper than full double-double when only the
// final value is needed.
template <typename T>
class NeumaierSum {
public:
    void add(T x) {
        if constexpr (std::is_same_v<T, double>) {
            add_real(sum_, comp_, x);
        } else {
            double re = sum_.real(), cre = comp_.real();
            double im = sum_.imag(), cim = comp_.imag();
            add_real(re, cre, x.real());
            add_real(im, cim, x.imag());
            sum_ = {re, im};
            comp_ = {cre, cim};
        }
    }

    [[nodiscard]] T value() const { return sum_ + comp_; }

private:
    static void add_real(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    T sum_{};
    T comp_{};
};

}  // namespace singseries
