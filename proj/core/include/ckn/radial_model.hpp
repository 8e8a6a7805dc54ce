#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace ckn {

// A radially symmetric model metric measure space, described by its sphere
// density sigma(t) = (volume of the sphere of radius t). Analytic kinds are
// uniform rescalings of Lebesgue measure; the tabulated kind interpolates a
// density relative to t^{n-1} piecewise linearly (constant beyond the ends).
class RadialMeasure {
  public:
    enum class Kind { euclidean, cone, envelope_ricci, tabulated };

    static RadialMeasure euclidean(int n);
    static RadialMeasure cone(int n, double c);
    static RadialMeasure envelope_ricci(int n, double b0);
    static RadialMeasure tabulated(int n, std::vector<double> knots,
                                   std::vector<double> rel_density);
    // Two-column CSV (t, relative_density) with a mandatory header line.
    static RadialMeasure tabulated_from_csv(int n, const std::filesystem::path& path);

    int dim() const { return n_; }
    Kind kind() const { return kind_; }

    // sigma(t) / (n omega_n t^{n-1}); the uniform factor for analytic kinds.
    double relative_density(double t) const;
    double density_factor() const { return factor_; }
    double b0() const { return b0_; }
    // Cones with c > 1 are accepted but exceed the Euclidean origin density.
    bool flagged_super_euclidean() const;

    double sphere_density(double t) const;

    // m(B_R) = \int_0^R sigma(t) dt; closed form for analytic kinds, exact
    // per-segment integrals for tabulated ones.
    double ball_volume(double R) const;

    // m(B_R) / (omega_n R^n), bounded as R -> 0; safe inside singular
    // quadrature kernels where ball_volume and R^n would both underflow.
    double average_density(double R) const;

    const std::vector<double>& knots() const { return knots_; }

  private:
    RadialMeasure(int n, Kind kind, double factor, double b0);

    int n_ = 0;
    Kind kind_ = Kind::euclidean;
    double factor_ = 1.0;  // uniform density factor for analytic kinds
    double b0_ = 0.0;      // envelope_ricci only
    double n_omega_n_ = 0.0;
    double omega_n_ = 0.0;
    std::vector<double> knots_;
    std::vector<double> density_;
    std::vector<double> cumulative_;  // ball volume at each knot
};

std::vector<double> log_grid(double lo, double hi, int count);

// Smallest C0 with m(B_R)/m(B_rho) <= C0 (R/rho)^n over all ordered pairs in
// the grid, i.e. the max of (m(B_R)/m(B_rho)) (rho/R)^n.
double doubling_constant(const RadialMeasure& model, std::span<const double> radii);

// sup over the grid of m(B_R)/(omega_n R^n): the growth-envelope constant
// against Lebesgue measure (the bound m(B_R) <= C0 omega_n R^n).
double growth_envelope_constant(const RadialMeasure& model, std::span<const double> radii);

// inf over the grid of m(B_rho)/(omega_n rho^n); feeds the volume route of
// the best-constant bound.
double volume_density_infimum(const RadialMeasure& model, std::span<const double> radii);

// liminf_{rho -> 0} m(B_rho)/(omega_n rho^n), evaluated on rho_k = 2^{-k}
// down to 2^{-40} until successive values agree within 1e-9.
// Throws NoLimit when the sequence has not settled at the smallest radius.
double origin_density(const RadialMeasure& model);

// Rescales the measure so the origin density becomes 1.
RadialMeasure normalize(const RadialMeasure& model);

}  // namespace ckn
