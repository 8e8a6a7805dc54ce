#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace ckn {

struct QuadConfig {
    double rel_tol = 1e-10;
    int max_level = 12;       // double-exponential refinement levels
    double split_point = 1.0; // boundary between the singular-origin and tail pieces
};

// A radial integrand on (0, upper) together with its endpoint behavior.
// weight_exp_zero is the power of t as t -> 0 (must exceed -1 for
// convergence); decay_exp_inf the power as t -> infinity (must be below -1
// unless the support is finite). Breakpoints mark kinks where the integrand
// loses smoothness; the quadrature splits there.
struct Integrand1D {
    std::function<double(double)> f;
    double weight_exp_zero = 0.0;
    double decay_exp_inf = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    std::vector<double> breakpoints{};
};

struct QuadResult {
    double value = 0.0;
    double rel_error = 0.0;
};

// Splits at QuadConfig::split_point (and at the breakpoints), applies a
// tanh-sinh transform on each finite piece and an exp-sinh transform on the
// tail, refining until successive estimates agree within rel_tol.
// Throws DivergentIntegral on a failed exponent check and QuadratureFailure
// when the tolerance is not reached within max_level refinements.
QuadResult quad_integrate(const Integrand1D& integrand, const QuadConfig& cfg);

// Integral of t^w * u(t)^rho * d(t) over [t0, t1] where u and d are the
// linear interpolants of (u0, u1) and (d0, d1) and u >= 0. Handles t0 == 0
// by absorbing the weight exactly with a power substitution; wide segments
// are split geometrically so the rule stays accurate near the origin.
// The node layout depends only on the ratio t1/t0, so results commute with
// dilations of the grid to rounding accuracy.
double power_segment_integral(double w, double rho, double t0, double t1, double u0, double u1,
                              double d0 = 1.0, double d1 = 1.0);

// Closed form for \int_{t0}^{t1} t^w d(t) dt with d linear (w > -1).
double power_weight_integral(double w, double t0, double t1, double d0 = 1.0, double d1 = 1.0);

}  // namespace ckn
