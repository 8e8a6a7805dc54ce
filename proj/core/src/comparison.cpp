#include "ckn/comparison.hpp"

#include <cmath>

#include "ckn/errors.hpp"
#include "ckn/special.hpp"

namespace ckn {

namespace {

// Doubles used by every kernel below, extracted once per call.
struct Kernel {
    double n;
    double p, q, r, a;
    double gr;        // gamma r
    double kappa;
    double c_q;       // q(p-1)/(q-p)
    double c_r;       // r(p-1)/(q-p) = c_q + 1
    double bracket;   // pq/(q-p) (n-p-mu)/(n-p) = kappa c_q
    double pref;      // (q-p)/(q(p-1))
    double omega_n;
    double n_omega_n;

    double psi(double lambda, double h) const {
        return std::pow(h, gr - 1.0) * psi_core(lambda, h);
    }

    // psi(h) / h^{gr - 1}, written so neither factor overflows: the h^kappa
    // in the numerator is absorbed as the bounded ratio h^kappa/(lambda+h^kappa).
    double psi_core(double lambda, double h) const {
        const double hk = std::pow(h, kappa);
        const double denom = lambda + hk;
        const double ratio = 1.0 / (1.0 + lambda / hk);
        return -gr * lambda * std::pow(denom, -(c_q + 1.0)) +
               (bracket - gr) * ratio * std::pow(denom, -c_q);
    }

    // h^{n + gr - 1} psi_core: the integrand of the ball-volume kernel form
    // divided by the bounded average density. psi_core underflows before the
    // power factor can overflow (tail exponent below -1).
    double kernel_n(double lambda, double h) const {
        const double core = psi_core(lambda, h);
        if (core == 0.0) return 0.0;
        return std::pow(h, n + gr - 1.0) * core;
    }
};

Kernel kernel_of(const CknParams& c) {
    Kernel k;
    k.n = c.n;
    k.p = c.p_d();
    k.q = c.q_d();
    k.r = c.r_d();
    k.a = c.a_d();
    k.gr = to_double(c.gamma * c.r);
    k.kappa = c.kappa_d();
    k.c_q = to_double(c.q * (c.p - Rational(1)) / (c.q - c.p));
    k.c_r = to_double(c.r * (c.p - Rational(1)) / (c.q - c.p));
    k.bracket = k.kappa * k.c_q;
    k.pref = to_double((c.q - c.p) / (c.q * (c.p - Rational(1))));
    k.omega_n = unit_ball_volume(c.n);
    k.n_omega_n = c.n * k.omega_n;
    return k;
}

// Exponent of the integrand m(B_h) psi(h) at infinity for an n-growth model.
double kernel_tail_exponent(const Kernel& k) {
    return k.n + k.gr - 1.0 - k.kappa * k.c_q;
}

}  // namespace

double G_of(const CknParams& params, double lambda, const QuadConfig& quad) {
    if (!(lambda > 0.0)) throw InvalidParams("G_of: lambda must be positive");
    const Kernel k = kernel_of(params);
    Integrand1D kernel_form;
    kernel_form.f = [k, lambda](double h) { return k.kernel_n(lambda, h); };
    kernel_form.weight_exp_zero = k.n + k.gr - 1.0;
    kernel_form.decay_exp_inf = kernel_tail_exponent(k);
    kernel_form.breakpoints.push_back(std::pow(lambda, 1.0 / k.kappa));
    return k.pref * k.omega_n * quad_integrate(kernel_form, quad).value;
}

double G_direct(const CknParams& params, double lambda, const QuadConfig& quad) {
    if (!(lambda > 0.0)) throw InvalidParams("G_direct: lambda must be positive");
    const Kernel k = kernel_of(params);
    Integrand1D measure_form;
    measure_form.f = [k, lambda](double t) {
        const double kernel = std::pow(lambda + std::pow(t, k.kappa), -k.c_q);
        if (kernel == 0.0) return 0.0;
        return std::pow(t, k.gr + k.n - 1.0) * kernel;
    };
    measure_form.weight_exp_zero = k.gr + k.n - 1.0;
    measure_form.decay_exp_inf = k.gr + k.n - 1.0 - k.kappa * k.c_q;
    measure_form.breakpoints.push_back(std::pow(lambda, 1.0 / k.kappa));
    return k.pref * k.n_omega_n * quad_integrate(measure_form, quad).value;
}

double F_of(const RadialMeasure& model, const CknParams& params, double lambda,
            const QuadConfig& quad) {
    if (!(lambda > 0.0)) throw InvalidParams("F_of: lambda must be positive");
    const Kernel k = kernel_of(params);
    Integrand1D kernel_form;
    kernel_form.f = [k, lambda, &model](double h) {
        return model.average_density(h) * k.kernel_n(lambda, h);
    };
    kernel_form.weight_exp_zero = k.n + k.gr - 1.0;
    kernel_form.decay_exp_inf = kernel_tail_exponent(k);
    if (model.kind() == RadialMeasure::Kind::tabulated)
        kernel_form.breakpoints = model.knots();
    kernel_form.breakpoints.push_back(std::pow(lambda, 1.0 / k.kappa));
    return k.pref * k.omega_n * quad_integrate(kernel_form, quad).value;
}

double G_power_law(const CknParams& params, double lambda, double g_at_1) {
    if (!(lambda > 0.0)) throw InvalidParams("G_power_law: lambda must be positive");
    return std::pow(lambda, params.g_exp_d()) * g_at_1;
}

double G_prime(const CknParams& params, double lambda, const QuadConfig& quad) {
    return F_prime(RadialMeasure::euclidean(params.n), params, lambda, quad);
}

double F_direct(const RadialMeasure& model, const CknParams& params, double lambda,
                const QuadConfig& quad) {
    if (!(lambda > 0.0)) throw InvalidParams("F_direct: lambda must be positive");
    const Kernel k = kernel_of(params);
    Integrand1D measure_form;
    measure_form.f = [k, lambda, &model](double t) {
        const double kernel = std::pow(lambda + std::pow(t, k.kappa), -k.c_q);
        if (kernel == 0.0) return 0.0;
        return model.relative_density(t) * std::pow(t, k.gr + k.n - 1.0) * kernel;
    };
    measure_form.weight_exp_zero = k.gr + k.n - 1.0;
    measure_form.decay_exp_inf = k.gr + k.n - 1.0 - k.kappa * k.c_q;
    if (model.kind() == RadialMeasure::Kind::tabulated)
        measure_form.breakpoints = model.knots();
    measure_form.breakpoints.push_back(std::pow(lambda, 1.0 / k.kappa));
    return k.pref * k.n_omega_n * quad_integrate(measure_form, quad).value;
}

double F_prime(const RadialMeasure& model, const CknParams& params, double lambda,
               const QuadConfig& quad) {
    if (!(lambda > 0.0)) throw InvalidParams("F_prime: lambda must be positive");
    const Kernel k = kernel_of(params);
    Integrand1D measure_form;
    measure_form.f = [k, lambda, &model](double t) {
        const double kernel = std::pow(lambda + std::pow(t, k.kappa), -k.c_r);
        if (kernel == 0.0) return 0.0;
        return model.relative_density(t) * std::pow(t, k.gr + k.n - 1.0) * kernel;
    };
    measure_form.weight_exp_zero = k.gr + k.n - 1.0;
    measure_form.decay_exp_inf = k.gr + k.n - 1.0 - k.kappa * k.c_r;
    if (model.kind() == RadialMeasure::Kind::tabulated)
        measure_form.breakpoints = model.knots();
    measure_form.breakpoints.push_back(std::pow(lambda, 1.0 / k.kappa));
    return -k.n_omega_n * quad_integrate(measure_form, quad).value;
}

double gamma_coefficient(const CknParams& params, double C) {
    if (!(C > 0.0)) throw InvalidParams("gamma_coefficient: C must be positive");
    const Kernel k = kernel_of(params);
    const double n = k.n, p = k.p, q = k.q, a = k.a;
    const double mu = params.mu_d();
    return std::pow(C, p / a) * std::pow(p * (n - p - mu) / ((n - p) * (q - p)), p) *
           std::pow(k.c_q, p * (1.0 - a) / (a * q));
}

namespace {

double ode_residual_from(const Kernel& k, double coeff, double value, double slope,
                         double lambda) {
    const double lhs = std::pow(-slope, k.p / (k.a * k.r));
    const double rhs = coeff * (k.c_q * value + lambda * slope) *
                       std::pow(value, k.p * (1.0 - k.a) / (k.a * k.q));
    return lhs / rhs - 1.0;
}

}  // namespace

double ode_residual_G(const CknParams& params, double lambda, const QuadConfig& quad,
                      double c_opt) {
    const Kernel k = kernel_of(params);
    const double g = G_of(params, lambda, quad);
    const double gp = G_prime(params, lambda, quad);
    return ode_residual_from(k, gamma_coefficient(params, c_opt), g, gp, lambda);
}

double ode_residual_G(const CknParams& params, double lambda, const QuadConfig& quad) {
    return ode_residual_G(params, lambda, quad, copt_quadrature(params, quad));
}

double ode_residual_H0(const CknParams& params, double C, double lambda, const QuadConfig& quad,
                       double c_opt) {
    const Kernel k = kernel_of(params);
    const double d = std::pow(c_opt / C, k.n / k.a);
    const double h0 = d * G_of(params, lambda, quad);
    const double h0p = d * G_prime(params, lambda, quad);
    return ode_residual_from(k, gamma_coefficient(params, C), h0, h0p, lambda);
}

double H0_of(const CknParams& params, double C, double lambda, const QuadConfig& quad) {
    const double c_opt = copt_quadrature(params, quad);
    if (C < c_opt * (1.0 - 1e-12))
        throw InvalidConstant("H0_of: C must be >= C_opt");
    const Kernel k = kernel_of(params);
    const double value = std::pow(c_opt / C, k.n / k.a) * G_of(params, lambda, quad);
    const double residual = ode_residual_H0(params, C, lambda, quad, c_opt);
    if (std::fabs(residual) > 1e-6)
        throw QuadratureFailure("H0_of: differential-equation residual " +
                                std::to_string(residual) + " exceeds 1e-6");
    return value;
}

double ineq_slack_F(const RadialMeasure& model, const CknParams& params, double C, double lambda,
                    const QuadConfig& quad) {
    const Kernel k = kernel_of(params);
    const double f = F_of(model, params, lambda, quad);
    const double fp = F_prime(model, params, lambda, quad);
    const double coeff = gamma_coefficient(params, C);
    const double lhs = std::pow(-fp, k.p / (k.a * k.r));
    const double rhs =
        coeff * (k.c_q * f + lambda * fp) * std::pow(f, k.p * (1.0 - k.a) / (k.a * k.q));
    return rhs - lhs;
}

double psi_kernel(const CknParams& params, double lambda, double h) {
    if (!(lambda > 0.0) || !(h > 0.0))
        throw InvalidParams("psi_kernel: lambda and h must be positive");
    return kernel_of(params).psi(lambda, h);
}

std::optional<double> psi_bracket_root(const CknParams& params, double lambda) {
    const Kernel k = kernel_of(params);
    // -gr lambda + (bracket - gr) h^kappa = 0  =>  h^kappa = gr lambda/(bracket - gr).
    const double rhs = k.gr * lambda / (k.bracket - k.gr);
    if (!(rhs > 0.0)) return std::nullopt;  // gamma < 0 on this family: no positive root
    return std::pow(rhs, 1.0 / k.kappa);
}

double psi_truncated_moment(const CknParams& params, double lambda, double h0,
                            const QuadConfig& quad) {
    if (!(h0 > 0.0)) throw InvalidParams("psi_truncated_moment: h0 must be positive");
    const Kernel k = kernel_of(params);
    Integrand1D moment;
    moment.f = [k, lambda](double h) { return k.kernel_n(lambda, h); };
    moment.weight_exp_zero = k.n + k.gr - 1.0;
    moment.upper = h0;
    moment.breakpoints.push_back(std::pow(lambda, 1.0 / k.kappa));
    return quad_integrate(moment, quad).value;
}

double psi_truncated_moment_bound(const CknParams& params, double lambda, double h0) {
    const Kernel k = kernel_of(params);
    const double first = -k.gr * lambda * std::pow(h0, k.n + k.gr) / (k.n + k.gr);
    const double second = (k.bracket - k.gr) * std::pow(h0, k.n + k.gr + k.kappa) /
                          (k.n + k.gr + k.kappa);
    return std::pow(lambda, -(k.c_q + 1.0)) * (first + second);
}

double eta_exponent(const CknParams& params) {
    return to_double(-params.q * (params.p - Rational(1)) / (params.q - params.p) - Rational(1) -
                     params.g_exp);
}

double case1_rhs_bound(const CknParams& params, double lambda, double h0) {
    const Kernel k = kernel_of(params);
    const double first = -k.gr * lambda * std::pow(h0, k.n + k.gr) / (k.n + k.gr);
    const double second = (k.bracket - k.gr) * std::pow(h0, k.n + k.gr + k.kappa) /
                          (k.n + k.gr + k.kappa);
    return std::pow(lambda, eta_exponent(params)) * (first + second);
}

double volume_lower_bound(const CknParams& params, double c_opt, double C, double C0,
                          double rho) {
    if (!(rho > 0.0)) throw InvalidParams("volume_lower_bound: rho must be positive");
    if (!(C0 >= 1.0)) throw InvalidParams("volume_lower_bound: C0 must be >= 1");
    if (C < c_opt * (1.0 - 1e-12))
        throw InvalidConstant("volume_lower_bound: C < C_opt is forbidden by the comparison");
    const double n = params.n;
    return (1.0 / C0) * std::pow(c_opt / C, n / params.a_d()) * unit_ball_volume(params.n) *
           std::pow(rho, n);
}

double volume_lower_bound(const CknParams& params, double C, double C0, double rho,
                          const QuadConfig& quad) {
    return volume_lower_bound(params, copt_quadrature(params, quad), C, C0, rho);
}

SandwichReport growth_sandwich(const RadialMeasure& model, const CknParams& params, double C,
                               double C0, std::span<const double> rho_grid,
                               const QuadConfig& quad) {
    const double c_opt = copt_quadrature(params, quad);
    const double omega_n = unit_ball_volume(params.n);
    constexpr double kRelTol = 1e-9;

    SandwichReport report;
    report.c_opt = c_opt;
    report.C = C;
    report.C0 = C0;
    report.pass = true;
    for (double rho : rho_grid) {
        SandwichRow row;
        row.rho = rho;
        row.lower = volume_lower_bound(params, c_opt, C, C0, rho);
        row.measured = model.ball_volume(rho);
        row.upper = C0 * omega_n * std::pow(rho, params.n);
        row.pass = row.measured >= row.lower * (1.0 - kRelTol) &&
                   row.measured <= row.upper * (1.0 + kRelTol);
        report.pass = report.pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

ComparisonCurve build_comparison_curve(const RadialMeasure& model, const CknParams& params,
                                       double C_multiple, std::span<const double> lambda_grid,
                                       const QuadConfig& quad) {
    if (!(C_multiple > 0.0)) throw InvalidParams("build_comparison_curve: C multiple must be > 0");
    const Kernel k = kernel_of(params);
    const double c_opt = copt_quadrature(params, quad);
    const double C = C_multiple * c_opt;
    const double d = std::pow(c_opt / C, k.n / k.a);
    const double coeff_c = gamma_coefficient(params, C);
    const double coeff_opt = gamma_coefficient(params, c_opt);

    ComparisonCurve curve;
    curve.constants = {C, c_opt, coeff_c, coeff_opt};
    for (double lambda : lambda_grid) {
        const double g = G_of(params, lambda, quad);
        const double gp = G_prime(params, lambda, quad);
        const double f = F_of(model, params, lambda, quad);
        const double fp = F_prime(model, params, lambda, quad);
        const double lhs = std::pow(-fp, k.p / (k.a * k.r));
        const double rhs =
            coeff_c * (k.c_q * f + lambda * fp) * std::pow(f, k.p * (1.0 - k.a) / (k.a * k.q));
        curve.lambda.push_back(lambda);
        curve.G.push_back(g);
        curve.F.push_back(f);
        curve.H0.push_back(d * g);
        curve.F_prime.push_back(fp);
        curve.ode_residual_G.push_back(ode_residual_from(k, coeff_opt, g, gp, lambda));
        curve.ineq_slack_F.push_back(rhs - lhs);
    }
    return curve;
}

}  // namespace ckn
