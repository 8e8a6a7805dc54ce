#include <doctest.h>

#include <cmath>

#include "ckn/errors.hpp"
#include "ckn/optimizer.hpp"

using ckn::CknParams;
using ckn::MinimizeConfig;
using ckn::QuadConfig;
using ckn::RadialMeasure;
using ckn::Rational;

namespace {

CknParams desk_params() {
    return ckn::derive(ckn::RawParams{4, Rational(2), Rational(5, 2), Rational(1)});
}

bool non_increasing(const std::vector<double>& xs) {
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i] > xs[i - 1] + 1e-15) return false;
    return true;
}

}  // namespace

TEST_CASE("minimize_family: flat on euclidean, value is 1/C_opt") {
    const CknParams c = desk_params();
    QuadConfig quad;
    MinimizeConfig cfg;
    const auto result = ckn::minimize_family(RadialMeasure::euclidean(4), c,
                                             ckn::FamilySpec{}, cfg, quad);
    CHECK(result.converged);
    CHECK(result.flatness < 1e-8);
    CHECK(result.best_quotient ==
          doctest::Approx(1.0 / ckn::copt_quadrature(c, quad)).epsilon(1e-8));
    CHECK(non_increasing(result.history));
    REQUIRE(result.probes.size() == 6);

    // amplitude direction is exactly flat (degree-0 homogeneity)
    for (const auto& probe : result.probes) {
        if (probe.b != 1.0) continue;
        CHECK(probe.quotient ==
              doctest::Approx(result.probes.front().quotient).epsilon(1e-12));
    }
}

TEST_CASE("minimize_family: cone value scales by c^{a/n}; golden-section path agrees") {
    const CknParams c = desk_params();
    QuadConfig quad;
    MinimizeConfig cfg;
    const double copt_inv = 1.0 / ckn::copt_quadrature(c, quad);

    const auto simplex = ckn::minimize_family(RadialMeasure::cone(4, 0.5), c,
                                              ckn::FamilySpec{}, cfg, quad);
    CHECK(simplex.flatness < 1e-8);
    CHECK(simplex.best_quotient ==
          doctest::Approx(std::pow(0.5, c.a_d() / c.n) * copt_inv).epsilon(1e-8));

    cfg.method = ckn::MinimizeMethod::golden_section;
    const auto golden = ckn::minimize_family(RadialMeasure::cone(4, 0.5), c,
                                             ckn::FamilySpec{}, cfg, quad);
    CHECK(golden.best_quotient == doctest::Approx(simplex.best_quotient).epsilon(1e-9));
}

TEST_CASE("minimize_grid: truncated-extremal start converges immediately") {
    const CknParams c = desk_params();
    QuadConfig quad;
    MinimizeConfig cfg;
    cfg.grid_size = 96;
    cfg.support_radius = 30.0;
    cfg.f_tol = 1e-4;
    cfg.init = ckn::GridInit::truncated_extremal;

    const auto result = ckn::minimize_grid(RadialMeasure::euclidean(4), c, cfg, quad);
    CHECK(result.converged);
    CHECK(result.iterations <= 5);
    CHECK(non_increasing(result.history));

    const double copt_inv = 1.0 / ckn::copt_quadrature(c, quad);
    CHECK(result.best_quotient >= copt_inv * (1.0 - 5e-3));
    CHECK(std::fabs(result.best_quotient / copt_inv - 1.0) < 1e-3);
    CHECK(result.best_profile.compact_support());
}

TEST_CASE("minimize_grid: random start reaches the extremal level") {
    const CknParams c = desk_params();
    QuadConfig quad;
    MinimizeConfig cfg;
    cfg.grid_size = 64;
    cfg.support_radius = 30.0;
    cfg.f_tol = 1e-6;
    cfg.max_iters = 600;
    cfg.init = ckn::GridInit::random;
    cfg.seed = 3;

    const auto result = ckn::minimize_grid(RadialMeasure::euclidean(4), c, cfg, quad);
    CHECK(result.converged);
    CHECK(result.seed == 3);
    CHECK(non_increasing(result.history));

    const double copt_inv = 1.0 / ckn::copt_quadrature(c, quad);
    CHECK(result.best_quotient >= copt_inv * (1.0 - 5e-3));
    CHECK(result.best_quotient <= copt_inv * 1.01);
}

TEST_CASE("minimize_grid: rejects degenerate configuration") {
    const CknParams c = desk_params();
    QuadConfig quad;
    MinimizeConfig cfg;
    cfg.grid_size = 8;
    CHECK_THROWS_AS(ckn::minimize_grid(RadialMeasure::euclidean(4), c, cfg, quad),
                    ckn::InvalidParams);
}

TEST_CASE("best_constant: quotient and volume routes agree on uniform models") {
    const CknParams c = desk_params();
    QuadConfig quad;
    MinimizeConfig cfg;
    const double copt = ckn::copt_quadrature(c, quad);

    const auto euclid = ckn::best_constant(RadialMeasure::euclidean(4), c, cfg, quad);
    CHECK(euclid.c_quotient == doctest::Approx(copt).epsilon(1e-8));
    CHECK(euclid.c_volume_route == doctest::Approx(copt).epsilon(1e-8));

    for (double factor : {0.25, 0.5, 0.9}) {
        const auto report = ckn::best_constant(RadialMeasure::cone(4, factor), c, cfg, quad);
        const double expected = std::pow(factor, -c.a_d() / c.n) * copt;
        CHECK(report.c_quotient == doctest::Approx(expected).epsilon(1e-4));
        CHECK(report.c_volume_route == doctest::Approx(expected).epsilon(1e-4));
        CHECK(report.c_quotient == doctest::Approx(report.c_volume_route).epsilon(1e-4));
    }

    // more mass brings the constant down
    const auto envelope =
        ckn::best_constant(RadialMeasure::envelope_ricci(4, 0.3), c, cfg, quad);
    const double expected = std::exp(-3 * 0.3 * c.a_d() / c.n) * copt;
    CHECK(envelope.c_quotient == doctest::Approx(expected).epsilon(1e-4));
    CHECK(envelope.c_quotient < copt);
}

TEST_CASE("extremal perturbations never improve the quotient") {
    const CknParams c = desk_params();
    QuadConfig quad;
    const auto probes = ckn::extremal_perturbations(c, 5, 1e-2, quad);
    REQUIRE(probes.size() == 5);
    for (const auto& probe : probes) {
        CHECK(probe.quotient_delta >= -1e-9);
        CHECK(probe.quotient_delta < 1.0);  // sane magnitude
    }
}
