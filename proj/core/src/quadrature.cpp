#include "ckn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ckn/errors.hpp"

namespace ckn {

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::tanh_sinh;

tanh_sinh<double>& finite_rule(int max_level) {
    thread_local std::map<int, std::unique_ptr<tanh_sinh<double>>> cache;
    auto& slot = cache[max_level];
    if (!slot) slot = std::make_unique<tanh_sinh<double>>(static_cast<size_t>(max_level));
    return *slot;
}

exp_sinh<double>& tail_rule(int max_level) {
    thread_local std::map<int, std::unique_ptr<exp_sinh<double>>> cache;
    auto& slot = cache[max_level];
    if (!slot) slot = std::make_unique<exp_sinh<double>>(static_cast<size_t>(max_level));
    return *slot;
}

struct PieceResult {
    double value = 0.0;
    double abs_error = 0.0;
};

PieceResult integrate_piece(const std::function<double(double)>& f, double a, double b,
                            const QuadConfig& cfg) {
    double error = 0.0, l1 = 0.0;
    double value = 0.0;
    // request margin below the caller's target; the reported last-refinement
    // difference wobbles near the noise floor
    const double piece_tol = 0.25 * cfg.rel_tol;
    try {
        if (std::isfinite(b)) {
            value = finite_rule(cfg.max_level).integrate(f, a, b, piece_tol, &error, &l1);
        } else {
            value = tail_rule(cfg.max_level)
                        .integrate(f, a, std::numeric_limits<double>::infinity(), piece_tol,
                                   &error, &l1);
        }
    } catch (const std::exception& e) {
        throw QuadratureFailure(std::string("quadrature evaluation failed: ") + e.what());
    }
    // boost reports |I_k - I_{k-1}| of the last refinement, an absolute
    // estimate already.
    (void)l1;
    PieceResult out;
    out.value = value;
    out.abs_error = error;
    return out;
}

}  // namespace

QuadResult quad_integrate(const Integrand1D& integrand, const QuadConfig& cfg) {
    if (!(integrand.weight_exp_zero > -1.0)) {
        std::ostringstream msg;
        msg << "integrand ~ t^" << integrand.weight_exp_zero << " at 0 diverges";
        throw DivergentIntegral(msg.str());
    }
    const bool infinite_tail = !std::isfinite(integrand.upper);
    if (infinite_tail && !(integrand.decay_exp_inf < -1.0)) {
        std::ostringstream msg;
        msg << "integrand ~ t^" << integrand.decay_exp_inf << " at infinity diverges";
        throw DivergentIntegral(msg.str());
    }

    std::vector<double> bounds;
    bounds.push_back(0.0);
    const double top = integrand.upper;
    if (cfg.split_point > 0.0 && cfg.split_point < top) bounds.push_back(cfg.split_point);
    for (double b : integrand.breakpoints)
        if (b > 0.0 && b < top) bounds.push_back(b);
    std::sort(bounds.begin(), bounds.end());
    // merge near-coincident boundaries; a piece a few ulps wide starves the
    // transform of resolvable nodes
    std::vector<double> merged;
    for (double b : bounds)
        if (merged.empty() || b - merged.back() > 1e-12 * b) merged.push_back(b);
    bounds = std::move(merged);
    if (std::isfinite(top) && !bounds.empty() && top - bounds.back() <= 1e-12 * top)
        bounds.pop_back();
    bounds.push_back(top);

    double total = 0.0;
    double abs_error = 0.0;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        const PieceResult piece = integrate_piece(integrand.f, bounds[i], bounds[i + 1], cfg);
        total += piece.value;
        abs_error += piece.abs_error;
    }

    QuadResult out;
    out.value = total;
    out.rel_error = abs_error / std::max(std::fabs(total), std::numeric_limits<double>::min());
    if (total == 0.0 && abs_error == 0.0) out.rel_error = 0.0;
    if (out.rel_error > cfg.rel_tol) {
        std::ostringstream msg;
        msg << "tolerance " << cfg.rel_tol << " not reached (estimate " << out.rel_error
            << ") within " << cfg.max_level << " levels";
        throw QuadratureFailure(msg.str());
    }
    return out;
}

namespace {

using GaussRule = boost::math::quadrature::gauss<double, 32>;

template <class G>
double gauss_on(double a, double b, const G& g) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const auto& xs = GaussRule::abscissa();  // nonnegative half of the nodes
    const auto& ws = GaussRule::weights();
    double sum = 0.0;
    // node 0 belongs to both halves when the count is odd; boost stores the
    // positive abscissas with x[0] == 0 for even rules of this size.
    for (size_t i = 0; i < xs.size(); ++i) {
        const double dx = half * xs[i];
        if (xs[i] == 0.0) {
            sum += ws[i] * g(mid);
        } else {
            sum += ws[i] * (g(mid + dx) + g(mid - dx));
        }
    }
    return sum * half;
}

}  // namespace

double power_weight_integral(double w, double t0, double t1, double d0, double d1) {
    if (!(w > -1.0)) throw DivergentIntegral("power_weight_integral: weight exponent <= -1");
    if (t1 <= t0) return 0.0;
    // d(t) = d0 + slope (t - t0) = (d0 - slope t0) + slope t
    const double slope = (d1 - d0) / (t1 - t0);
    const double c0 = d0 - slope * t0;
    const double p1 = (std::pow(t1, w + 1.0) - std::pow(t0, w + 1.0)) / (w + 1.0);
    const double p2 = (std::pow(t1, w + 2.0) - std::pow(t0, w + 2.0)) / (w + 2.0);
    return c0 * p1 + slope * p2;
}

double power_segment_integral(double w, double rho, double t0, double t1, double u0, double u1,
                              double d0, double d1) {
    if (!(w > -1.0)) throw DivergentIntegral("power_segment_integral: weight exponent <= -1");
    if (t1 <= t0) return 0.0;
    if (u0 == 0.0 && u1 == 0.0) return 0.0;

    if (t0 == 0.0) {
        // t = t1 z^{1/(w+1)} absorbs the weight exactly:
        //   \int_0^{t1} t^w g(t) dt = t1^{w+1}/(w+1) \int_0^1 g(t(z)) dz.
        const double c = 1.0 / (w + 1.0);
        const double du = u1 - u0;
        const double dd = d1 - d0;
        auto g = [&](double z) {
            const double frac = std::pow(z, c);  // t/t1
            const double u = u0 + du * frac;
            const double d = d0 + dd * frac;
            return std::pow(u, rho) * d;
        };
        // g may behave like z^c near zero; geometric panels keep the fixed
        // rule accurate without adaptivity.
        static const double panels[] = {0.0, 1e-6, 1e-3, 3e-2, 0.3, 1.0};
        double sum = 0.0;
        for (size_t i = 0; i + 1 < std::size(panels); ++i)
            sum += gauss_on(panels[i], panels[i + 1], g);
        return std::pow(t1, w + 1.0) * c * sum;
    }

    const double uslope = (u1 - u0) / (t1 - t0);
    const double dslope = (d1 - d0) / (t1 - t0);
    auto f = [&](double t) {
        const double u = u0 + uslope * (t - t0);
        const double d = d0 + dslope * (t - t0);
        return std::pow(t, w) * std::pow(u, rho) * d;
    };
    // Keep each panel narrow relative to its distance from the origin so the
    // t^w factor stays analytic-friendly. The split rule depends only on the
    // ratio t1/t0, so it commutes with grid dilations.
    double sum = 0.0;
    double lo = t0;
    while (t1 / lo > 1.5) {
        const double hi = std::min(t1, lo * 1.5);
        sum += gauss_on(lo, hi, f);
        lo = hi;
    }
    if (lo < t1) sum += gauss_on(lo, t1, f);
    return sum;
}

}  // namespace ckn
