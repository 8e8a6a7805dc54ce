#include "ckn/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ckn/errors.hpp"

namespace ckn {

namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

// B_{2k} / (2k (2k-1)), k = 1..10. Exact rationals; the series is applied
// only for arguments >= kSeriesThreshold where the truncation error is
// below 1e-24 in log Gamma.
constexpr double kStirlingCoeff[] = {
    1.0 / 12,     -1.0 / 360,      1.0 / 1260,       -1.0 / 1680,      1.0 / 1188,
    -691.0 / 360360, 1.0 / 156,    -3617.0 / 122400, 43867.0 / 244188, -174611.0 / 125400,
};

constexpr double kSeriesThreshold = 16.0;

// Gamma overflows double just above this argument.
constexpr double kGammaOverflow = 171.624376956302725;

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0))
        throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));

    double shift = 0.0;
    double y = x;
    while (y < kSeriesThreshold) {
        shift += std::log(y);
        y += 1.0;
    }

    const double inv = 1.0 / y;
    const double inv2 = inv * inv;
    double term = inv;
    double series = 0.0;
    for (double c : kStirlingCoeff) {
        series += c * term;
        term *= inv2;
    }
    return (y - 0.5) * std::log(y) - y + kHalfLogTwoPi + series - shift;
}

double gamma_fn(double x) {
    if (!(x > 0.0))
        throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
    if (x > kGammaOverflow)
        throw OverflowError("gamma_fn: overflow at x = " + std::to_string(x));
    return std::exp(log_gamma(x));
}

double unit_ball_volume(int n) {
    if (n < 1) throw DomainError("unit_ball_volume: dimension must be >= 1");
    const double pi = 3.14159265358979323846264338327950288;
    return std::exp(0.5 * n * std::log(pi) - log_gamma(0.5 * n + 1.0));
}

}  // namespace ckn
