#pragma once

#include <vector>

#include "ckn/functionals.hpp"
#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/radial_model.hpp"

namespace ckn {

enum class MinimizeMethod { simplex, golden_section, coordinate_descent };
enum class GridInit { truncated_extremal, random };

struct MinimizeConfig {
    MinimizeMethod method = MinimizeMethod::simplex;
    int max_iters = 200;
    double x_tol = 1e-9;
    double f_tol = 1e-10;
    int grid_size = 128;          // knots of the sampled profile (>= 16)
    double support_radius = 50.0; // compact support of the grid profile
    GridInit init = GridInit::truncated_extremal;
    unsigned seed = 1;            // random initialization seed, recorded in output
};

struct FamilyProbe {
    double amplitude = 0.0;
    double b = 0.0;
    double quotient = 0.0;
};

// (A, B) probe set for the extremal family A (1 + B t^kappa)^{-(p-1)/(q-p)}.
struct FamilySpec {
    std::vector<double> amplitudes{1.0, 3.0};
    std::vector<double> b_values{0.1, 1.0, 10.0};
};

struct MinimizeResult {
    explicit MinimizeResult(RadialProfile profile) : best_profile(std::move(profile)) {}

    double best_quotient = 0.0;
    RadialProfile best_profile;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;     // accepted quotient per iteration/sweep
    double flatness = 0.0;           // (max - min)/min over the family probes
    std::vector<FamilyProbe> probes; // family probe table
    unsigned seed = 0;
};

// Minimizes over the two-parameter extremal family. On Euclidean (and on any
// uniform rescaling of it) the quotient is constant in both A and B, so the
// probe table doubles as a flatness certificate; the common value is the
// reciprocal of the optimal constant.
MinimizeResult minimize_family(const RadialMeasure& model, const CknParams& params,
                               const FamilySpec& family, const MinimizeConfig& cfg,
                               const QuadConfig& quad);

// Coordinate descent over nonnegative piecewise-linear profiles on a
// log-spaced grid with compact support. Throws NonConvergence when max_iters
// sweeps pass without meeting f_tol.
MinimizeResult minimize_grid(const RadialMeasure& model, const CknParams& params,
                             const MinimizeConfig& cfg, const QuadConfig& quad);

struct BestConstantReport {
    double c_quotient = 0.0;     // 1 / best family quotient on the model
    double c_volume_route = 0.0; // C_opt (inf_rho m(B_rho)/(omega_n rho^n))^{-a/n}
    double flatness = 0.0;
};

struct PerturbationProbe {
    unsigned seed = 0;
    double quotient_delta = 0.0;  // perturbed minus baseline
};

// Adds `count` random log-Gaussian bumps of the given amplitude to a densely
// sampled truncation of the extremal profile on Euclidean space and reports
// the quotient change. Extremality means no bump may push the quotient below
// the baseline (beyond rounding).
std::vector<PerturbationProbe> extremal_perturbations(const CknParams& params, int count,
                                                      double amplitude, const QuadConfig& quad);

// Best-constant estimate from the quotient route, cross-reported against the
// volume-implied bound. The two agree on uniform-density models.
BestConstantReport best_constant(const RadialMeasure& model, const CknParams& params,
                                 const MinimizeConfig& cfg, const QuadConfig& quad);

}  // namespace ckn
