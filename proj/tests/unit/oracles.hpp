#pragma once

// Test-only closed forms, independent of the library's quadrature and Gamma
// paths (std::lgamma only). Every weighted integral of an extremal-family
// power on a uniform model reduces to a Beta function:
//
//   \int_0^inf t^A (lambda + t^kappa)^{-B} dt
//     = lambda^{(A+1)/kappa - B} Beta((A+1)/kappa, B - (A+1)/kappa) / kappa.

#include <cmath>

namespace oracle {

inline double beta_fn(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

inline double radial_power_integral(double A, double kappa, double B, double lambda) {
    const double x = (A + 1.0) / kappa;
    return std::pow(lambda, x - B) * beta_fn(x, B - x) / kappa;
}

}  // namespace oracle
