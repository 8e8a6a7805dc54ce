#pragma once

#include <filesystem>
#include <limits>
#include <vector>

#include "ckn/params.hpp"

namespace ckn {

// Radial test functions u(t) for the weighted norms:
//  - extremal(lambda):   u(t) = A (lambda + t^kappa)^{-(p-1)/(q-p)}
//  - cutoff(lambda, k):  the compactly supported truncation u_{lambda,k}
//                        (ramp to zero on [k, k+1], frozen below 1/k)
//  - sampled:            piecewise-linear values on an increasing grid
class RadialProfile {
  public:
    enum class Kind { extremal, cutoff, sampled };

    static RadialProfile extremal(const CknParams& params, double lambda, double amplitude = 1.0);
    static RadialProfile cutoff(const CknParams& params, double lambda, int k);
    // First knot may be 0 (origin value); u is constant below the first
    // positive knot. With compact_support the last value must be zero and u
    // vanishes beyond the last knot; otherwise it continues constant.
    static RadialProfile sampled(std::vector<double> knots, std::vector<double> values,
                                 bool compact_support);

    static RadialProfile sampled_from_csv(const std::filesystem::path& path);
    void save_csv(const std::filesystem::path& path) const;

    double value(double t) const;
    // Signed derivative where u is differentiable; at a kink, the one-sided
    // value of larger magnitude (the local Lipschitz constant for radial u).
    double deriv(double t) const;

    Kind kind() const { return kind_; }
    double lambda() const { return lambda_; }
    double amplitude() const { return amplitude_; }
    int cutoff_k() const { return k_; }
    double shape_kappa() const { return kappa_; }
    double shape_exponent() const { return exponent_; }
    bool compact_support() const { return compact_; }
    double support_end() const;
    // Points where the derivative may jump; quadrature splits here.
    std::vector<double> kink_points() const;

    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }

  private:
    RadialProfile() = default;

    friend RadialProfile dilate_profile(const RadialProfile& profile, double lambda_scale);

    Kind kind_ = Kind::extremal;
    double lambda_ = 1.0;
    double amplitude_ = 1.0;
    double kappa_ = 1.0;     // extremal/cutoff shape
    double exponent_ = 1.0;  // (p-1)/(q-p)
    int k_ = 0;              // cutoff truncation index
    bool compact_ = false;
    std::vector<double> knots_;
    std::vector<double> values_;
};

// t |-> u(lambda_scale * t). Extremal profiles map to rescaled members of the
// same family; sampled grids contract by the factor. Cutoff profiles are not
// supported (their ramp geometry is tied to the metric).
RadialProfile dilate_profile(const RadialProfile& profile, double lambda_scale);

}  // namespace ckn
