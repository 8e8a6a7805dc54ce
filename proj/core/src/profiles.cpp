#include "ckn/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ckn/errors.hpp"

namespace ckn {

namespace {

double shape_exponent_of(const CknParams& c) {
    return to_double((c.p - Rational(1)) / (c.q - c.p));
}

}  // namespace

RadialProfile RadialProfile::extremal(const CknParams& params, double lambda, double amplitude) {
    if (!(lambda > 0.0)) throw InvalidParams("extremal profile: lambda must be positive");
    RadialProfile p;
    p.kind_ = Kind::extremal;
    p.lambda_ = lambda;
    p.amplitude_ = amplitude;
    p.kappa_ = params.kappa_d();
    p.exponent_ = shape_exponent_of(params);
    return p;
}

RadialProfile RadialProfile::cutoff(const CknParams& params, double lambda, int k) {
    if (!(lambda > 0.0)) throw InvalidParams("cutoff profile: lambda must be positive");
    if (k < 1) throw InvalidParams("cutoff profile: k must be a positive integer");
    RadialProfile p;
    p.kind_ = Kind::cutoff;
    p.lambda_ = lambda;
    p.amplitude_ = 1.0;
    p.kappa_ = params.kappa_d();
    p.exponent_ = shape_exponent_of(params);
    p.k_ = k;
    p.compact_ = true;
    return p;
}

RadialProfile RadialProfile::sampled(std::vector<double> knots, std::vector<double> values,
                                     bool compact_support) {
    if (knots.size() != values.size() || knots.size() < 2)
        throw InvalidParams("sampled profile: need matching knot/value columns (>= 2 rows)");
    for (size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i] >= 0.0) || !std::isfinite(knots[i]))
            throw InvalidParams("sampled profile: knots must be nonnegative and finite");
        if (i > 0 && !(knots[i] > knots[i - 1]))
            throw InvalidParams("sampled profile: knots must be strictly increasing");
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw InvalidParams("sampled profile: values must be nonnegative and finite");
    }
    if (compact_support && values.back() != 0.0)
        throw InvalidParams("sampled profile: compact support requires a zero final value");
    RadialProfile p;
    p.kind_ = Kind::sampled;
    p.compact_ = compact_support;
    p.knots_ = std::move(knots);
    p.values_ = std::move(values);
    return p;
}

double RadialProfile::value(double t) const {
    switch (kind_) {
        case Kind::extremal:
            return amplitude_ * std::pow(lambda_ + std::pow(t, kappa_), -exponent_);
        case Kind::cutoff: {
            if (t >= k_ + 1.0) return 0.0;
            const double ramp = t <= k_ ? 1.0 : (k_ + 1.0 - t);
            const double base = std::max(t, 1.0 / k_);
            return ramp * std::pow(lambda_ + std::pow(base, kappa_), -exponent_);
        }
        case Kind::sampled: {
            if (t <= knots_.front()) return values_.front();
            if (t >= knots_.back()) return compact_ ? 0.0 : values_.back();
            const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
            const size_t i = static_cast<size_t>(it - knots_.begin()) - 1;
            const double w = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
            return values_[i] + w * (values_[i + 1] - values_[i]);
        }
    }
    return 0.0;
}

double RadialProfile::deriv(double t) const {
    switch (kind_) {
        case Kind::extremal: {
            const double tk = std::pow(t, kappa_);
            return -amplitude_ * exponent_ * kappa_ * std::pow(t, kappa_ - 1.0) *
                   std::pow(lambda_ + tk, -exponent_ - 1.0);
        }
        case Kind::cutoff: {
            auto core = [&](double x) {
                return std::pow(lambda_ + std::pow(x, kappa_), -exponent_);
            };
            auto core_deriv = [&](double x) {
                return -exponent_ * kappa_ * std::pow(x, kappa_ - 1.0) *
                       std::pow(lambda_ + std::pow(x, kappa_), -exponent_ - 1.0);
            };
            const double freeze = 1.0 / k_;
            if (t < freeze) return 0.0;
            if (t < static_cast<double>(k_)) return core_deriv(std::max(t, freeze));
            // On [k, k+1] the ramp factor contributes; at the exact kinks
            // these expressions are the one-sided values of larger magnitude.
            if (t < k_ + 1.0) return -core(t) + (k_ + 1.0 - t) * core_deriv(t);
            if (t == k_ + 1.0) return -core(t);
            return 0.0;
        }
        case Kind::sampled: {
            if (t < knots_.front() || t > knots_.back()) return 0.0;
            // at a knot: one-sided maximum of the adjacent slopes
            const auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
            const size_t j = static_cast<size_t>(it - knots_.begin());
            auto slope = [&](size_t seg) {
                return (values_[seg + 1] - values_[seg]) / (knots_[seg + 1] - knots_[seg]);
            };
            if (j < knots_.size() && knots_[j] == t) {
                const double right = j + 1 < knots_.size() ? slope(j) : 0.0;
                const double left = j > 0 ? slope(j - 1) : 0.0;
                return std::fabs(right) > std::fabs(left) ? right : left;
            }
            return slope(j - 1);
        }
    }
    return 0.0;
}

double RadialProfile::support_end() const {
    switch (kind_) {
        case Kind::extremal:
            return std::numeric_limits<double>::infinity();
        case Kind::cutoff:
            return k_ + 1.0;
        case Kind::sampled:
            return compact_ ? knots_.back() : std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::infinity();
}

std::vector<double> RadialProfile::kink_points() const {
    switch (kind_) {
        case Kind::extremal:
            return {};
        case Kind::cutoff:
            return {1.0 / k_, static_cast<double>(k_), k_ + 1.0};
        case Kind::sampled:
            return knots_;
    }
    return {};
}

RadialProfile dilate_profile(const RadialProfile& profile, double lambda_scale) {
    if (!(lambda_scale > 0.0)) throw InvalidParams("dilate_profile: scale must be positive");
    switch (profile.kind()) {
        case RadialProfile::Kind::extremal: {
            // u(st) = A s^{-kappa e} (lambda s^{-kappa} + t^kappa)^{-e}
            RadialProfile p = profile;
            const double shrink = std::pow(lambda_scale, -profile.shape_kappa());
            p.lambda_ *= shrink;
            p.amplitude_ *= std::pow(shrink, profile.shape_exponent());
            return p;
        }
        case RadialProfile::Kind::sampled: {
            std::vector<double> knots = profile.knots();
            for (double& t : knots) t /= lambda_scale;
            return RadialProfile::sampled(std::move(knots), profile.values(),
                                          profile.compact_support());
        }
        case RadialProfile::Kind::cutoff:
            throw InvalidParams("dilate_profile: cutoff profiles are not dilatable");
    }
    throw InvalidParams("dilate_profile: unknown kind");
}

RadialProfile RadialProfile::sampled_from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile CSV: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("profile CSV is empty: " + path.string());
    {
        std::istringstream probe(line);
        double x;
        char comma;
        if (probe >> x >> comma) throw IoError("profile CSV must start with a header line");
    }
    std::vector<double> t, u;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        double ti, ui;
        char comma;
        if (!(row >> ti >> comma >> ui) || comma != ',')
            throw IoError("profile CSV parse error at line " + std::to_string(lineno));
        t.push_back(ti);
        u.push_back(ui);
    }
    const bool compact = !u.empty() && u.back() == 0.0;
    try {
        return sampled(std::move(t), std::move(u), compact);
    } catch (const InvalidParams& e) {
        throw IoError("profile CSV " + path.string() + ": " + e.what());
    }
}

void RadialProfile::save_csv(const std::filesystem::path& path) const {
    if (kind_ != Kind::sampled)
        throw InvalidParams("save_csv: only sampled profiles are stored as CSV");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write profile CSV: " + path.string());
    out << "t,u\n";
    char buf[64];
    for (size_t i = 0; i < knots_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", knots_[i], values_[i]);
        out << buf;
    }
}

}  // namespace ckn
