#pragma once

#include <array>

#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/radial_model.hpp"

namespace ckn {

// The three weighted integrals of the inequality:
//   t_r    = \int d^{gamma r} |u|^r dm
//   t_grad = \int d^{alpha p} |Du|^p dm
//   t_q    = \int d^{beta q}  |u|^q dm   (skipped when a = 1)
// est_errors are relative estimates in the same order; zero for the exact
// per-segment path used by sampled profiles.
struct WeightedNorms {
    double t_r = 0.0;
    double t_grad = 0.0;
    double t_q = 0.0;
    std::array<double, 3> est_errors{0.0, 0.0, 0.0};
};

// Radial reduction of the three integrals against the model's sphere
// density. Analytic profiles go through the double-exponential quadrature;
// sampled profiles through exact-per-segment rules. Throws DivergentIntegral
// when an endpoint exponent check fails (or a sampled profile lacks compact
// support) and QuadratureFailure when the tolerance cannot be met.
WeightedNorms weighted_norms(const RadialMeasure& model, const CknParams& params,
                             const RadialProfile& profile, const QuadConfig& quad);

// t_grad^{a/p} t_q^{(1-a)/q} / t_r^{1/r}; the q factor is omitted entirely
// when a = 1. Throws DegenerateProfile when t_r vanishes.
double ckn_quotient(const WeightedNorms& norms, const CknParams& params);

}  // namespace ckn
