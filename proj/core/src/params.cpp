#include "ckn/params.hpp"

#include <cmath>
#include <sstream>

#include "ckn/errors.hpp"
#include "ckn/special.hpp"

namespace ckn {

ValidationReport validate(const RawParams& raw) {
    ValidationReport report;
    auto fail = [&](const std::string& name) { report.violations.push_back(name); };

    const Rational one(1);
    const Rational n(raw.n);

    if (raw.n < 2) fail("n >= 2");
    if (!(raw.p > one)) fail("1 < p");
    if (!(raw.mu > Rational(0))) fail("p < p + mu");
    if (!(raw.p + raw.mu < n)) fail("p + mu < n");
    if (!(raw.q >= one)) fail("1 <= q");

    // r = p(q-1)/(p-1) needs p > 1; the comparison against np/(n-p) needs
    // n > p. Skip what cannot be formed once the prerequisite already failed.
    if (raw.p > one) {
        const Rational r = raw.p * (raw.q - one) / (raw.p - one);
        if (!(raw.q < r)) fail("q < p(q-1)/(p-1)");
        if (n > raw.p) {
            if (!(r <= n * raw.p / (n - raw.p))) fail("p(q-1)/(p-1) <= np/(n-p)");
        } else {
            fail("p(q-1)/(p-1) <= np/(n-p)");
        }
    }

    report.ok = report.violations.empty();
    return report;
}

CknParams derive(const RawParams& raw) {
    const ValidationReport report = validate(raw);
    if (!report.ok) {
        std::ostringstream msg;
        msg << "derive: parameters (n=" << raw.n << ", p=" << rational_to_string(raw.p)
            << ", q=" << rational_to_string(raw.q) << ", mu=" << rational_to_string(raw.mu)
            << ") violate:";
        for (const auto& v : report.violations) msg << " [" << v << "]";
        throw InvalidParams(msg.str());
    }

    const Rational one(1);
    const Rational n(raw.n);
    const Rational& p = raw.p;
    const Rational& q = raw.q;
    const Rational& mu = raw.mu;

    CknParams out;
    out.n = raw.n;
    out.p = p;
    out.q = q;
    out.mu = mu;

    out.r = p * (q - one) / (p - one);
    out.theta = n * mu / (n - p);
    out.s = out.theta;
    out.nu = n * p - q * (n - p);
    out.a = n * (q - p) / ((q - one) * out.nu);

    out.alpha = -mu / p;
    out.beta = -out.theta / q;
    out.gamma = -out.s / out.r;
    out.sigma = (out.gamma - (one - out.a) * out.beta) / out.a;

    out.kappa = ((n - p - mu) / (n - p)) * (p / (p - one));
    out.g_exp = ((q - p) * (p - one) * n - p * q * (p - one)) / (p * (q - p));

    // Consequences of the admissibility chain; kept as hard checks so a
    // corrupted record can never reach the quadrature layer.
    if (!(out.a > Rational(0) && out.a <= one))
        throw InvalidParams("derive: a outside (0, 1]");
    if (out.a / p + (one - out.a) / q - one / out.r != out.a / n)
        throw InvalidParams("derive: zero-sum exponent identity failed");
    if (!(n + out.gamma * out.r - one > Rational(-1)))
        throw InvalidParams("derive: origin exponent check failed");
    if (!(n + out.gamma * out.r - one - out.kappa * q * (p - one) / (q - p) < Rational(-1)))
        throw InvalidParams("derive: tail exponent check failed");

    return out;
}

Rational dilation_residual_exact(const CknParams& c) {
    const Rational one(1);
    const Rational n(c.n);
    return -c.alpha * c.a - n * c.a / c.p + c.a - n * (one - c.a) / c.q -
           c.beta * (one - c.a) + n / c.r + c.gamma;
}

double dilation_residual(const CknParams& c) { return to_double(dilation_residual_exact(c)); }

CoptClosedFormTerms copt_closed_form_terms(const CknParams& c, double delta_interpretation) {
    const double n = c.n;
    const double p = c.p_d();
    const double q = c.q_d();
    const double mu = c.mu_d();
    const double r = c.r_d();
    const double a = c.a_d();
    const double nu = to_double(c.nu);
    const double sqrt_pi = std::sqrt(3.14159265358979323846264338327950288);

    CoptClosedFormTerms t;
    const double e1 = 1.0 / r + (p - 1.0) / p - (1.0 - a) / q - (p - 1.0) * (1.0 - a) / p;
    t.base_ratio_power = std::pow((n - p) / (n - p - mu), e1);
    t.sqrt_pi_power = std::pow((q - p) / (p * sqrt_pi), a);
    t.pq_power = std::pow(p * q / (n * (q - p)), a / p);
    t.nu_power = std::pow(nu / (p * q), 1.0 / r);

    const double g1 = q * (p - 1.0) / (q - p);
    const double g2 = 0.5 * n + 1.0;
    const double g3 = ((p - 1.0) / p) * delta_interpretation / (q - p);
    const double g4 = n * (p - 1.0) / p + 1.0;
    if (!(g1 > 0.0) || !(g2 > 0.0) || !(g3 > 0.0) || !(g4 > 0.0))
        throw DomainError("copt_closed_form: Gamma argument <= 0");
    t.gamma_ratio_power =
        std::pow(gamma_fn(g1) * gamma_fn(g2) / (gamma_fn(g3) * gamma_fn(g4)), a / n);

    t.value = t.base_ratio_power * t.sqrt_pi_power * t.pq_power * t.nu_power * t.gamma_ratio_power;
    return t;
}

double copt_closed_form(const CknParams& c, double delta_interpretation) {
    return copt_closed_form_terms(c, delta_interpretation).value;
}

}  // namespace ckn
