#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ckn/params.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/radial_model.hpp"

namespace ckn {

// ---- Comparison functionals -------------------------------------------------
//
// With kappa the extremal exponent and c_q = q(p-1)/(q-p):
//
//   F(lambda) = pref * \int_X d^{gamma r} (lambda + d^kappa)^{-c_q} dm,
//   G(lambda) = the same against Lebesgue measure on R^n,
//   pref      = (q-p)/(r(p-1)-(q-p)) = (q-p)/(q(p-1)).
//
// F_of evaluates the ball-volume kernel form (integrating m(B_h) against
// psi); F_direct the radial reduction of the measure form. The two agree by
// Fubini and make a cross-check pair.

double G_of(const CknParams& params, double lambda, const QuadConfig& quad);
double G_direct(const CknParams& params, double lambda, const QuadConfig& quad);
// Fast path: G(lambda) = lambda^{g_exp} g_at_1.
double G_power_law(const CknParams& params, double lambda, double g_at_1);
double G_prime(const CknParams& params, double lambda, const QuadConfig& quad);

double F_of(const RadialMeasure& model, const CknParams& params, double lambda,
            const QuadConfig& quad);
double F_direct(const RadialMeasure& model, const CknParams& params, double lambda,
                const QuadConfig& quad);
// F'(lambda) = -\int_X d^{gamma r} (lambda + d^kappa)^{-r(p-1)/(q-p)} dm, < 0.
double F_prime(const RadialMeasure& model, const CknParams& params, double lambda,
               const QuadConfig& quad);

// Coefficient of the differential inequality for a given constant C:
//   Gamma(C) = C^{p/a} (p(n-p-mu)/((n-p)(q-p)))^p (q(p-1)/(q-p))^{p(1-a)/(aq)}.
// The sharp ODE uses the same expression at C = C_opt.
double gamma_coefficient(const CknParams& params, double C);

// Relative residual of the sharp ODE
//   (-G')^{p/(ar)} = Gamma~ (q(p-1)/(q-p) G + lambda G') G^{p(1-a)/(aq)},
// computed as lhs/rhs - 1. C_opt comes from copt_quadrature internally.
double ode_residual_G(const CknParams& params, double lambda, const QuadConfig& quad);
double ode_residual_G(const CknParams& params, double lambda, const QuadConfig& quad,
                      double c_opt);

// H0(lambda) = (C_opt/C)^{n/a} G(lambda). Verifies that H0 satisfies the
// differential equation with Gamma(C) before returning; requires C >= C_opt.
double H0_of(const CknParams& params, double C, double lambda, const QuadConfig& quad);
double ode_residual_H0(const CknParams& params, double C, double lambda, const QuadConfig& quad,
                       double c_opt);

// RHS - LHS of the differential inequality at (model, C, lambda); nonnegative
// slack certifies the inequality, returned signed so violations are visible.
double ineq_slack_F(const RadialMeasure& model, const CknParams& params, double C, double lambda,
                    const QuadConfig& quad);

// The Case-1 kernel
//   psi(h) = h^{gamma r - 1} [-gamma r lambda + (pq/(q-p) (n-p-mu)/(n-p)
//            - gamma r) h^kappa] / (lambda + h^kappa)^{q(p-1)/(q-p) + 1}.
double psi_kernel(const CknParams& params, double lambda, double h);

// Root of the bracket in h, when one exists on (0, infinity). On this
// parameter family gamma < 0 makes both bracket terms positive, so psi
// never changes sign and the root is absent.
std::optional<double> psi_bracket_root(const CknParams& params, double lambda);

// \int_0^{h0} h^n psi(h) dh by quadrature, and its closed-form upper bound
// lambda^{-q(p-1)/(q-p)-1} [ -gamma r lambda h0^{n+gamma r}/(n+gamma r)
//   + (pq/(q-p)(n-p-mu)/(n-p) - gamma r) h0^{n+gamma r+kappa}/(n+gamma r+kappa) ].
double psi_truncated_moment(const CknParams& params, double lambda, double h0,
                            const QuadConfig& quad);
double psi_truncated_moment_bound(const CknParams& params, double lambda, double h0);

// The contradiction bound: lambda^eta [same bracket as above], with
// eta = -q(p-1)/(q-p) - 1 - g_exp. Decays as lambda -> infinity since
// eta + 1 = -n(p-1)/p < 0.
double case1_rhs_bound(const CknParams& params, double lambda, double h0);
double eta_exponent(const CknParams& params);

// C0^{-1} (C_opt/C)^{n/a} omega_n rho^n. Throws InvalidConstant for
// C < C_opt (the comparison forbids smaller constants; reported, not
// clamped).
double volume_lower_bound(const CknParams& params, double C, double C0, double rho,
                          const QuadConfig& quad);
double volume_lower_bound(const CknParams& params, double c_opt, double C, double C0, double rho);

struct SandwichRow {
    double rho = 0.0;
    double lower = 0.0;
    double measured = 0.0;
    double upper = 0.0;
    bool pass = false;
};

struct SandwichReport {
    std::vector<SandwichRow> rows;
    bool pass = false;
    double c_opt = 0.0;
    double C = 0.0;
    double C0 = 0.0;
};

// Per-radius verdicts of the two-sided volume comparison
//   C0^{-1} (C_opt/C)^{n/a} omega_n rho^n <= m(B_rho) <= C0 omega_n rho^n.
SandwichReport growth_sandwich(const RadialMeasure& model, const CknParams& params, double C,
                               double C0, std::span<const double> rho_grid,
                               const QuadConfig& quad);

struct CurveConstants {
    double C = 0.0;
    double c_opt = 0.0;
    double gamma_coeff = 0.0;        // Gamma(C)
    double gamma_tilde_coeff = 0.0;  // Gamma(C_opt)
};

struct ComparisonCurve {
    std::vector<double> lambda;
    std::vector<double> F;
    std::vector<double> G;
    std::vector<double> H0;
    std::vector<double> F_prime;
    std::vector<double> ode_residual_G;
    std::vector<double> ineq_slack_F;
    CurveConstants constants;
};

ComparisonCurve build_comparison_curve(const RadialMeasure& model, const CknParams& params,
                                       double C_multiple, std::span<const double> lambda_grid,
                                       const QuadConfig& quad);

}  // namespace ckn
