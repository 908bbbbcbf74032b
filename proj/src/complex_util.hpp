#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "singseries/errors.hpp"

namespace singseries::detail {

using Complex = std::complex<double>;

// log(1 + z) without losing the low bits of a small z.
inline Complex log1p(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    const double re = 0.5 * std::log1p(2.0 * x + x * x + y * y);
    const double im = std::atan2(y, 1.0 + x);
    return {re, im};
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline Complex checked(Complex z, const char* what) {
    if (!is_finite(z)) {
        throw NumericalConsistencyError(std::string(what) + ": non-finite result");
    }
    return z;
}

}  // namespace singseries::detail
