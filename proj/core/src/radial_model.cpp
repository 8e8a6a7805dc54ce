#include "ckn/radial_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ckn/errors.hpp"
#include "ckn/special.hpp"

namespace ckn {

namespace {

// \int_{t0}^{t1} (d0 + slope (t - t0)) n omega_n t^{n-1} dt, exact.
double segment_volume(int n, double n_omega_n, double t0, double t1, double d0, double d1) {
    if (t1 <= t0) return 0.0;
    const double slope = (d1 - d0) / (t1 - t0);
    const double c0 = d0 - slope * t0;
    const double pn = (std::pow(t1, n) - std::pow(t0, n)) / n;
    const double pn1 = (std::pow(t1, n + 1) - std::pow(t0, n + 1)) / (n + 1);
    return n_omega_n * (c0 * pn + slope * pn1);
}

}  // namespace

RadialMeasure::RadialMeasure(int n, Kind kind, double factor, double b0)
    : n_(n), kind_(kind), factor_(factor), b0_(b0) {
    if (n < 1) throw InvalidParams("RadialMeasure: dimension must be >= 1");
    omega_n_ = unit_ball_volume(n);
    n_omega_n_ = n * omega_n_;
}

RadialMeasure RadialMeasure::euclidean(int n) { return RadialMeasure(n, Kind::euclidean, 1.0, 0.0); }

RadialMeasure RadialMeasure::cone(int n, double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw InvalidParams("cone: density factor must be positive and finite");
    return RadialMeasure(n, Kind::cone, c, 0.0);
}

RadialMeasure RadialMeasure::envelope_ricci(int n, double b0) {
    if (!(b0 >= 0.0) || !std::isfinite(b0))
        throw InvalidParams("envelope_ricci: b0 must be nonnegative and finite");
    return RadialMeasure(n, Kind::envelope_ricci, std::exp((n - 1) * b0), b0);
}

RadialMeasure RadialMeasure::tabulated(int n, std::vector<double> knots,
                                       std::vector<double> rel_density) {
    if (knots.size() != rel_density.size() || knots.size() < 2)
        throw InvalidParams("tabulated: need matching knot/density columns (>= 2 rows)");
    for (size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i] > 0.0) || !std::isfinite(knots[i]))
            throw InvalidParams("tabulated: knots must be positive and finite");
        if (i > 0 && !(knots[i] > knots[i - 1]))
            throw InvalidParams("tabulated: knots must be strictly increasing");
        if (!(rel_density[i] > 0.0) || !std::isfinite(rel_density[i]))
            throw InvalidParams("tabulated: densities must be positive and finite");
    }
    RadialMeasure m(n, Kind::tabulated, 1.0, 0.0);
    m.knots_ = std::move(knots);
    m.density_ = std::move(rel_density);

    // Prefix volumes at the knots; constant density below the first knot.
    m.cumulative_.resize(m.knots_.size());
    double acc = segment_volume(n, m.n_omega_n_, 0.0, m.knots_[0], m.density_[0], m.density_[0]);
    m.cumulative_[0] = acc;
    for (size_t i = 0; i + 1 < m.knots_.size(); ++i) {
        acc += segment_volume(n, m.n_omega_n_, m.knots_[i], m.knots_[i + 1], m.density_[i],
                              m.density_[i + 1]);
        m.cumulative_[i + 1] = acc;
    }
    return m;
}

RadialMeasure RadialMeasure::tabulated_from_csv(int n, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model CSV: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("model CSV is empty: " + path.string());
    // Header line is required; reject files that start with data.
    {
        std::istringstream probe(line);
        double x;
        char comma;
        if (probe >> x >> comma) throw IoError("model CSV must start with a header line");
    }
    std::vector<double> t, d;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        double ti, di;
        char comma;
        if (!(row >> ti >> comma >> di) || comma != ',')
            throw IoError("model CSV parse error at line " + std::to_string(lineno));
        t.push_back(ti);
        d.push_back(di);
    }
    try {
        return tabulated(n, std::move(t), std::move(d));
    } catch (const InvalidParams& e) {
        throw IoError("model CSV " + path.string() + ": " + e.what());
    }
}

double RadialMeasure::relative_density(double t) const {
    if (kind_ != Kind::tabulated) return factor_;
    if (knots_.empty()) return factor_;
    if (t <= knots_.front()) return density_.front();
    if (t >= knots_.back()) return density_.back();
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const size_t i = static_cast<size_t>(it - knots_.begin()) - 1;
    const double w = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
    return density_[i] + w * (density_[i + 1] - density_[i]);
}

bool RadialMeasure::flagged_super_euclidean() const {
    if (kind_ == Kind::tabulated) return false;
    return kind_ == Kind::cone && factor_ > 1.0;
}

double RadialMeasure::sphere_density(double t) const {
    if (!(t > 0.0)) return 0.0;
    return relative_density(t) * n_omega_n_ * std::pow(t, n_ - 1);
}

double RadialMeasure::ball_volume(double R) const {
    if (!(R > 0.0)) return 0.0;
    if (kind_ != Kind::tabulated) return factor_ * omega_n_ * std::pow(R, n_);
    if (R <= knots_.front())
        return segment_volume(n_, n_omega_n_, 0.0, R, density_.front(), density_.front());
    if (R >= knots_.back())
        return cumulative_.back() +
               segment_volume(n_, n_omega_n_, knots_.back(), R, density_.back(), density_.back());
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), R);
    const size_t i = static_cast<size_t>(it - knots_.begin()) - 1;
    return cumulative_[i] +
           segment_volume(n_, n_omega_n_, knots_[i], R, density_[i], relative_density(R));
}

double RadialMeasure::average_density(double R) const {
    if (kind_ != Kind::tabulated) return factor_;
    if (!(R > 0.0) || R <= knots_.front()) return density_.front();
    if (R >= knots_.back()) {
        // beyond the table the density is flat; fold the interior deficit
        // into a 1/R^n correction that vanishes cleanly as R^n overflows
        const double flat = density_.back();
        const double deficit =
            cumulative_.back() - flat * omega_n_ * std::pow(knots_.back(), n_);
        return flat + deficit / (omega_n_ * std::pow(R, n_));
    }
    return ball_volume(R) / (omega_n_ * std::pow(R, n_));
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2) throw InvalidParams("log_grid: bad range");
    std::vector<double> g(static_cast<size_t>(count));
    const double ratio = hi / lo;
    for (int i = 0; i < count; ++i)
        g[static_cast<size_t>(i)] = lo * std::pow(ratio, static_cast<double>(i) / (count - 1));
    g.back() = hi;
    return g;
}

double doubling_constant(const RadialMeasure& model, std::span<const double> radii) {
    if (radii.empty()) throw InvalidParams("doubling_constant: empty radius grid");
    const int n = model.dim();
    double worst = 0.0;
    for (size_t i = 0; i < radii.size(); ++i) {
        const double rho = radii[i];
        const double v_rho = model.ball_volume(rho);
        for (size_t j = i + 1; j < radii.size(); ++j) {
            const double R = radii[j];
            if (!(R > rho)) throw InvalidParams("doubling_constant: grid must be increasing");
            const double ratio = (model.ball_volume(R) / v_rho) * std::pow(rho / R, n);
            worst = std::max(worst, ratio);
        }
    }
    return worst;
}

double growth_envelope_constant(const RadialMeasure& model, std::span<const double> radii) {
    if (radii.empty()) throw InvalidParams("growth_envelope_constant: empty radius grid");
    const double omega_n = unit_ball_volume(model.dim());
    double sup = 0.0;
    for (double R : radii)
        sup = std::max(sup, model.ball_volume(R) / (omega_n * std::pow(R, model.dim())));
    return sup;
}

double volume_density_infimum(const RadialMeasure& model, std::span<const double> radii) {
    if (radii.empty()) throw InvalidParams("volume_density_infimum: empty radius grid");
    const double omega_n = unit_ball_volume(model.dim());
    double inf = std::numeric_limits<double>::infinity();
    for (double R : radii)
        inf = std::min(inf, model.ball_volume(R) / (omega_n * std::pow(R, model.dim())));
    return inf;
}

double origin_density(const RadialMeasure& model) {
    const double omega_n = unit_ball_volume(model.dim());
    double prev = std::numeric_limits<double>::quiet_NaN();
    double rho = 1.0;
    for (int k = 0; k <= 40; ++k, rho *= 0.5) {
        const double value = model.ball_volume(rho) / (omega_n * std::pow(rho, model.dim()));
        if (k > 0 && std::fabs(value - prev) <= 1e-9 * std::max(1.0, std::fabs(value)))
            return value;
        prev = value;
    }
    throw NoLimit("origin_density: ratio did not settle by rho = 2^-40");
}

RadialMeasure normalize(const RadialMeasure& model) {
    const double d = origin_density(model);
    if (!(d > 0.0) || !std::isfinite(d))
        throw NoLimit("normalize: origin density is not positive and finite");
    if (model.kind() == RadialMeasure::Kind::tabulated) {
        std::vector<double> knots = model.knots();
        std::vector<double> dens(knots.size());
        for (size_t i = 0; i < knots.size(); ++i)
            dens[i] = model.relative_density(knots[i]) / d;
        return RadialMeasure::tabulated(model.dim(), std::move(knots), std::move(dens));
    }
    const double f = model.density_factor() / d;
    if (f == 1.0) return RadialMeasure::euclidean(model.dim());
    return RadialMeasure::cone(model.dim(), f);
}

}  // namespace ckn
