#pragma once

#include <string>
#include <vector>

#include "ckn/rational.hpp"

namespace ckn {

struct QuadConfig;  // quadrature.hpp

// Raw inputs of the parameter family: dimension n >= 2 and the three
// exponents p, q, mu. Everything else is derived from these.
struct RawParams {
    int n = 0;
    Rational p, q, mu;
};

struct ValidationReport {
    bool ok = false;
    std::vector<std::string> violations;
};

// Checks the chained admissibility inequalities
//
//   1 < p < p + mu < n,   1 <= q < p(q-1)/(p-1) <= n p/(n - p).
//
// The final comparison is non-strict: equality there is exactly the a = 1
// boundary (the q-term exponent vanishes), which the rest of the machinery
// supports. Violations are data, not faults.
ValidationReport validate(const RawParams& raw);

// The full derived parameter record. All fields are exact rationals;
// use the *_d() accessors in numeric code.
struct CknParams {
    int n = 0;
    Rational p, q, mu;

    Rational r;          // p(q-1)/(p-1)
    Rational theta, s;   // both n mu/(n-p)
    Rational a;          // n(q-p) / ((q-1)(np - q(n-p))), in (0, 1]
    Rational nu;         // np - q(n-p)

    Rational alpha;      // -mu/p
    Rational beta;       // -theta/q
    Rational gamma;      // -s/r
    Rational sigma;      // (gamma - (1-a) beta)/a

    Rational kappa;      // ((n-p-mu)/(n-p)) (p/(p-1)), the extremal profile exponent
    Rational g_exp;      // ((q-p)(p-1)n - pq(p-1)) / (p(q-p)), the G power law

    bool q_term_active() const { return a != Rational(1); }

    double p_d() const { return to_double(p); }
    double q_d() const { return to_double(q); }
    double mu_d() const { return to_double(mu); }
    double r_d() const { return to_double(r); }
    double a_d() const { return to_double(a); }
    double alpha_d() const { return to_double(alpha); }
    double beta_d() const { return to_double(beta); }
    double gamma_d() const { return to_double(gamma); }
    double kappa_d() const { return to_double(kappa); }
    double g_exp_d() const { return to_double(g_exp); }
};

// Derives every dependent exponent. Throws InvalidParams when validate()
// reports violations; the raised message lists them.
CknParams derive(const RawParams& raw);

// The scaling exponent of the quotient under u -> u(lambda x):
//   -alpha a - n a/p + a - n(1-a)/q - beta(1-a) + n/r + gamma.
// Identically zero on the valid family; nonzero if the exponents are
// perturbed by hand.
Rational dilation_residual_exact(const CknParams& params);
double dilation_residual(const CknParams& params);

// Optimal constant by quadrature at the extremal profile on the Euclidean
// model. Internally evaluated at two members of the family (B = 1 and
// B = 7); throws QuadratureFailure when the two disagree beyond tolerance.
double copt_quadrature(const CknParams& params, const QuadConfig& quad);

// The classical closed form with its Gamma factors. EXPERIMENTAL: the
// symbol delta inside one Gamma argument has no defined value, so the caller
// has to supply an interpretation; compare against copt_quadrature, never
// use as ground truth.
struct CoptClosedFormTerms {
    double base_ratio_power = 0;   // ((n-p)/(n-p-mu))^{1/r + (p-1)/p - (1-a)/q - (p-1)(1-a)/p}
    double sqrt_pi_power = 0;      // ((q-p)/(p sqrt(pi)))^a
    double pq_power = 0;           // (pq/(n(q-p)))^{a/p}
    double nu_power = 0;           // (nu/(pq))^{1/r}
    double gamma_ratio_power = 0;  // (Gamma(...) Gamma(...) / (Gamma(...) Gamma(...)))^{a/n}
    double value = 0;
};

CoptClosedFormTerms copt_closed_form_terms(const CknParams& params, double delta_interpretation);
double copt_closed_form(const CknParams& params, double delta_interpretation);

}  // namespace ckn
