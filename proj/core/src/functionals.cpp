#include "ckn/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "ckn/errors.hpp"
#include "ckn/special.hpp"

namespace ckn {

namespace {

struct Exponents {
    double n;
    double p, q, r;
    double gr;      // gamma r (= beta q)
    double ap;      // alpha p (= -mu)
    double kappa;
    double e;       // (p-1)/(q-p)
};

Exponents exponents_of(const CknParams& c) {
    Exponents x;
    x.n = c.n;
    x.p = c.p_d();
    x.q = c.q_d();
    x.r = c.r_d();
    x.gr = to_double(c.gamma * c.r);
    x.ap = to_double(c.alpha * c.p);
    x.kappa = c.kappa_d();
    x.e = to_double((c.p - Rational(1)) / (c.q - c.p));
    return x;
}

void merge_model_knots(std::vector<double>& breakpoints, const RadialMeasure& model) {
    if (model.kind() == RadialMeasure::Kind::tabulated)
        breakpoints.insert(breakpoints.end(), model.knots().begin(), model.knots().end());
}

// The weight powers and sphere density are folded into a single t-exponent
// per integrand; separate pow() factors under/overflow at the extreme nodes
// of the double-exponential transforms and poison the sum with inf * 0.
WeightedNorms extremal_norms(const RadialMeasure& model, const CknParams& params,
                             const RadialProfile& profile, const QuadConfig& quad) {
    const Exponents x = exponents_of(params);
    const double n_omega_n = x.n * unit_ball_volume(params.n);
    const double lambda = profile.lambda();
    const double amp = profile.amplitude();

    std::vector<double> breakpoints;
    merge_model_knots(breakpoints, model);
    // the kernel turns over at t ~ lambda^{1/kappa}; give the quadrature
    // that scale explicitly
    breakpoints.push_back(std::pow(lambda, 1.0 / x.kappa));

    WeightedNorms out;
    auto run = [&](double coeff, double t_exp, double pow_exp, QuadResult& res) {
        Integrand1D integrand;
        integrand.f = [&model, lambda, t_exp, pow_exp, kappa = x.kappa](double t) {
            // The kernel factor underflows before t^{t_exp} can overflow
            // (the tail exponent is below -1), so a zero kernel means the
            // true value is far below double range.
            const double kernel = std::pow(lambda + std::pow(t, kappa), -pow_exp);
            if (kernel == 0.0) return 0.0;
            return model.relative_density(t) * std::pow(t, t_exp) * kernel;
        };
        integrand.weight_exp_zero = t_exp;
        integrand.decay_exp_inf = t_exp - x.kappa * pow_exp;
        integrand.breakpoints = breakpoints;
        res = quad_integrate(integrand, quad);
        res.value *= coeff * n_omega_n;
    };

    QuadResult res_r, res_g, res_q;
    run(std::pow(amp, x.r), x.gr + x.n - 1.0, x.r * x.e, res_r);
    run(std::pow(amp * x.e * x.kappa, x.p), x.ap + x.n - 1.0 + (x.kappa - 1.0) * x.p,
        (x.e + 1.0) * x.p, res_g);
    out.t_r = res_r.value;
    out.t_grad = res_g.value;
    out.est_errors[0] = res_r.rel_error;
    out.est_errors[1] = res_g.rel_error;
    if (params.q_term_active()) {
        run(std::pow(amp, x.q), x.gr + x.n - 1.0, x.q * x.e, res_q);
        out.t_q = res_q.value;
        out.est_errors[2] = res_q.rel_error;
    }
    return out;
}

WeightedNorms cutoff_norms(const RadialMeasure& model, const CknParams& params,
                           const RadialProfile& profile, const QuadConfig& quad) {
    const Exponents x = exponents_of(params);
    const double n_omega_n = x.n * unit_ball_volume(params.n);
    const double upper = profile.support_end();

    std::vector<double> breakpoints = profile.kink_points();
    merge_model_knots(breakpoints, model);

    WeightedNorms out;
    // u and |u'| stay bounded on the support, so only the weight power needs
    // folding with the sphere density.
    auto run = [&](auto&& local, double t_exp, QuadResult& res) {
        Integrand1D integrand;
        integrand.f = [&model, local, t_exp](double t) {
            return model.relative_density(t) * std::pow(t, t_exp) * local(t);
        };
        integrand.weight_exp_zero = t_exp;
        integrand.upper = upper;
        integrand.breakpoints = breakpoints;
        res = quad_integrate(integrand, quad);
        res.value *= n_omega_n;
    };

    QuadResult res_r, res_g, res_q;
    run([&profile, x](double t) { return std::pow(profile.value(t), x.r); }, x.gr + x.n - 1.0,
        res_r);
    run([&profile, x](double t) { return std::pow(std::fabs(profile.deriv(t)), x.p); },
        x.ap + x.n - 1.0, res_g);
    out.t_r = res_r.value;
    out.t_grad = res_g.value;
    out.est_errors[0] = res_r.rel_error;
    out.est_errors[1] = res_g.rel_error;
    if (params.q_term_active()) {
        run([&profile, x](double t) { return std::pow(profile.value(t), x.q); },
            x.gr + x.n - 1.0, res_q);
        out.t_q = res_q.value;
        out.est_errors[2] = res_q.rel_error;
    }
    return out;
}

WeightedNorms sampled_norms(const RadialMeasure& model, const CknParams& params,
                            const RadialProfile& profile) {
    if (!profile.compact_support())
        throw DivergentIntegral("weighted_norms: sampled profiles must have compact support");

    const Exponents x = exponents_of(params);
    const double n_omega_n = x.n * unit_ball_volume(params.n);
    const double w_r = x.gr + x.n - 1.0;
    const double w_g = x.ap + x.n - 1.0;
    if (!(w_r > -1.0) || !(w_g > -1.0))
        throw DivergentIntegral("weighted_norms: weight exponent check failed");

    // Segment boundaries: origin, profile knots, and (for tabulated models)
    // the model knots inside the support.
    std::vector<double> bounds;
    bounds.push_back(0.0);
    for (double t : profile.knots())
        if (t > 0.0) bounds.push_back(t);
    const double top = profile.knots().back();
    if (model.kind() == RadialMeasure::Kind::tabulated)
        for (double t : model.knots())
            if (t > 0.0 && t < top) bounds.push_back(t);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    const bool with_q = params.q_term_active();

    WeightedNorms out;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double a = bounds[i];
        const double b = bounds[i + 1];
        const double ua = profile.value(a);
        const double ub = profile.value(b);
        const double da = model.relative_density(a);
        const double db = model.relative_density(b);
        out.t_r += n_omega_n * power_segment_integral(w_r, x.r, a, b, ua, ub, da, db);
        if (with_q) out.t_q += n_omega_n * power_segment_integral(w_r, x.q, a, b, ua, ub, da, db);
        if (ub != ua) {
            const double slope = (ub - ua) / (b - a);
            out.t_grad +=
                n_omega_n * std::pow(std::fabs(slope), x.p) * power_weight_integral(w_g, a, b, da, db);
        }
    }
    return out;
}

}  // namespace

WeightedNorms weighted_norms(const RadialMeasure& model, const CknParams& params,
                             const RadialProfile& profile, const QuadConfig& quad) {
    switch (profile.kind()) {
        case RadialProfile::Kind::sampled:
            return sampled_norms(model, params, profile);
        case RadialProfile::Kind::cutoff:
            return cutoff_norms(model, params, profile, quad);
        case RadialProfile::Kind::extremal:
            return extremal_norms(model, params, profile, quad);
    }
    throw InvalidParams("weighted_norms: unknown profile kind");
}

double ckn_quotient(const WeightedNorms& norms, const CknParams& params) {
    if (!(norms.t_r > 0.0))
        throw DegenerateProfile("ckn_quotient: the r-norm vanishes for this profile");
    const double a = params.a_d();
    double value = std::pow(norms.t_grad, a / params.p_d()) / std::pow(norms.t_r, 1.0 / params.r_d());
    if (params.q_term_active())
        value *= std::pow(norms.t_q, (1.0 - a) / params.q_d());
    return value;
}

double copt_quadrature(const CknParams& params, const QuadConfig& quad) {
    const RadialMeasure euclid = RadialMeasure::euclidean(params.n);
    const auto quotient_at_b = [&](double b) {
        const RadialProfile profile = RadialProfile::extremal(params, 1.0 / b, 1.0);
        return ckn_quotient(weighted_norms(euclid, params, profile, quad), params);
    };
    const double q1 = quotient_at_b(1.0);
    const double q7 = quotient_at_b(7.0);
    const double agreement = std::fabs(q1 - q7) / std::fabs(q1);
    const double tol = std::max(1e-8, 10.0 * quad.rel_tol);
    if (agreement > tol)
        throw QuadratureFailure("copt_quadrature: dilation probes disagree by rel. " +
                                std::to_string(agreement));
    return 1.0 / q1;
}

}  // namespace ckn
