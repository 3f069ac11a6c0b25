#pragma once

#include <complex>

namespace klein::detail {

// Reflection amplitude num / den together with |den|^2 - |num|^2, which the
// closed forms give without cancellation (p^2 z^2, k^2 z^2 sech^2(ka), ...).
// R and T are formed from it so that R <= 1 holds exactly and both stay
// accurate when the other is near 1.
struct Fraction {
    std::complex<double> num;
    std::complex<double> den;
    double excess;

    std::complex<double> value() const { return num / den; }
    double reflectivity() const { return std::norm(num) / (std::norm(num) + excess); }
    double transmissivity() const { return excess / (std::norm(num) + excess); }
};

inline double sech_squared(double x)
{
    const double s = 1.0 / std::cosh(x);
    return s * s;
}

}  // namespace klein::detail
