#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "ckn/errors.hpp"
#include "ckn/radial_model.hpp"
#include "ckn/special.hpp"

using ckn::RadialMeasure;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

std::filesystem::path temp_csv(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}
}  // namespace

TEST_CASE("ball volumes: closed forms") {
    CHECK(RadialMeasure::euclidean(3).ball_volume(2.0) ==
          doctest::Approx(4.0 * kPi / 3.0 * 8.0).epsilon(1e-14));
    CHECK(RadialMeasure::cone(3, 0.5).ball_volume(2.0) ==
          doctest::Approx(2.0 * kPi / 3.0 * 8.0).epsilon(1e-14));
    CHECK(RadialMeasure::envelope_ricci(2, 1.0).ball_volume(1.0) ==
          doctest::Approx(std::exp(1.0) * kPi).epsilon(1e-14));
}

TEST_CASE("ball volume: strictly increasing in R for every kind") {
    const auto models = {
        RadialMeasure::euclidean(4),
        RadialMeasure::cone(4, 0.5),
        RadialMeasure::envelope_ricci(4, 0.3),
        RadialMeasure::tabulated(4, {0.5, 1.0, 2.0}, {1.0, 2.0, 1.5}),
    };
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> radius(1e-4, 20.0);
    for (const auto& model : models) {
        for (int trial = 0; trial < 50; ++trial) {
            double a = radius(rng), b = radius(rng);
            if (a > b) std::swap(a, b);
            if (a == b) continue;
            CHECK(model.ball_volume(a) < model.ball_volume(b));
        }
    }
}

TEST_CASE("doubling constant: uniform kinds cancel to one") {
    const auto grid = ckn::log_grid(1e-2, 1e2, 17);
    CHECK(ckn::doubling_constant(RadialMeasure::euclidean(4), grid) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ckn::doubling_constant(RadialMeasure::cone(4, 0.25), grid) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ckn::doubling_constant(RadialMeasure::envelope_ricci(4, 0.3), grid) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("doubling constant: euclidean core with doubled density outside") {
    // density 1 on (0, 1], 2 beyond: ratios exceed pure n-growth but never 2x
    const auto model = RadialMeasure::tabulated(3, {1.0, 1.0000001, 50.0}, {1.0, 2.0, 2.0});
    const auto grid = ckn::log_grid(1e-2, 1e3, 41);
    const double c0 = ckn::doubling_constant(model, grid);
    CHECK(c0 > 1.0);
    CHECK(c0 <= 2.0);

    // brute-force oracle over the same grid pairs
    double worst = 0.0;
    for (size_t i = 0; i < grid.size(); ++i)
        for (size_t j = i + 1; j < grid.size(); ++j)
            worst = std::max(worst, model.ball_volume(grid[j]) / model.ball_volume(grid[i]) *
                                        std::pow(grid[i] / grid[j], 3));
    CHECK(c0 == doctest::Approx(worst).epsilon(1e-15));
}

TEST_CASE("doubling constant: invariant under uniform scaling of the density") {
    const auto grid = ckn::log_grid(1e-1, 1e2, 21);
    const auto base = RadialMeasure::tabulated(4, {0.5, 1.0, 4.0}, {1.0, 1.7, 1.2});
    const auto scaled = RadialMeasure::tabulated(4, {0.5, 1.0, 4.0}, {3.0, 5.1, 3.6});
    CHECK(ckn::doubling_constant(base, grid) ==
          doctest::Approx(ckn::doubling_constant(scaled, grid)).epsilon(1e-13));
}

TEST_CASE("growth envelope constant: the Lebesgue-anchored bound") {
    const auto grid = ckn::log_grid(1e-2, 1e2, 17);
    CHECK(ckn::growth_envelope_constant(RadialMeasure::euclidean(4), grid) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ckn::growth_envelope_constant(RadialMeasure::envelope_ricci(4, 0.3), grid) ==
          doctest::Approx(std::exp(3 * 0.3)).epsilon(1e-14));
    CHECK(ckn::volume_density_infimum(RadialMeasure::cone(4, 0.25), grid) ==
          doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("origin density: constant-factor kinds") {
    CHECK(ckn::origin_density(RadialMeasure::euclidean(3)) == doctest::Approx(1.0));
    CHECK(ckn::origin_density(RadialMeasure::cone(3, 0.7)) == doctest::Approx(0.7));
    CHECK(ckn::origin_density(RadialMeasure::envelope_ricci(2, 1.0)) ==
          doctest::Approx(std::exp(1.0)));
}

TEST_CASE("origin density: tabulated model settles to the first density") {
    const auto model = RadialMeasure::tabulated(3, {0.25, 1.0, 2.0}, {0.6, 1.4, 1.0});
    CHECK(ckn::origin_density(model) == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("origin density: no limit when the density oscillates on dyadic scales") {
    // density alternates between 1 and 2 on every dyadic shell down to 2^-45,
    // so the probe sequence never settles
    std::vector<double> knots, dens;
    for (int k = 45; k >= 0; --k) {
        knots.push_back(std::ldexp(1.0, -k));
        dens.push_back(k % 2 == 0 ? 1.0 : 2.0);
    }
    const auto model = RadialMeasure::tabulated(3, knots, dens);
    CHECK_THROWS_AS(ckn::origin_density(model), ckn::NoLimit);
}

TEST_CASE("normalize: rescales the origin density to one") {
    const auto cone_half = ckn::normalize(RadialMeasure::cone(3, 0.5));
    CHECK(ckn::origin_density(cone_half) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cone_half.kind() == RadialMeasure::Kind::euclidean);

    const auto eu = ckn::normalize(RadialMeasure::euclidean(3));
    CHECK(eu.density_factor() == 1.0);

    // envelope with b0 = 1 in n = 2 divides by e
    const auto envelope = ckn::normalize(RadialMeasure::envelope_ricci(2, 1.0));
    CHECK(ckn::origin_density(envelope) == doctest::Approx(1.0).epsilon(1e-12));

    const auto table =
        ckn::normalize(RadialMeasure::tabulated(3, {0.25, 1.0}, {0.5, 0.8}));
    CHECK(ckn::origin_density(table) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cone: flagging and argument checks") {
    CHECK_FALSE(RadialMeasure::cone(3, 0.5).flagged_super_euclidean());
    CHECK(RadialMeasure::cone(3, 1.5).flagged_super_euclidean());
    CHECK_THROWS_AS(RadialMeasure::cone(3, 0.0), ckn::InvalidParams);
    CHECK_THROWS_AS(RadialMeasure::cone(3, -1.0), ckn::InvalidParams);
}

TEST_CASE("tabulated: rejects malformed tables") {
    CHECK_THROWS_AS(RadialMeasure::tabulated(3, {1.0}, {1.0}), ckn::InvalidParams);
    CHECK_THROWS_AS(RadialMeasure::tabulated(3, {1.0, 1.0}, {1.0, 1.0}), ckn::InvalidParams);
    CHECK_THROWS_AS(RadialMeasure::tabulated(3, {2.0, 1.0}, {1.0, 1.0}), ckn::InvalidParams);
    CHECK_THROWS_AS(RadialMeasure::tabulated(3, {1.0, 2.0}, {1.0, -1.0}), ckn::InvalidParams);
    CHECK_THROWS_AS(RadialMeasure::tabulated(3, {0.0, 2.0}, {1.0, 1.0}), ckn::InvalidParams);
}

TEST_CASE("tabulated CSV: header required, strictly increasing knots") {
    const auto good = temp_csv("ckn_model_good.csv", "t,relative_density\n0.5,1.0\n1.0,2.0\n");
    const auto model = RadialMeasure::tabulated_from_csv(3, good);
    CHECK(model.relative_density(0.75) == doctest::Approx(1.5));

    const auto headerless = temp_csv("ckn_model_headerless.csv", "0.5,1.0\n1.0,2.0\n");
    CHECK_THROWS_AS(RadialMeasure::tabulated_from_csv(3, headerless), ckn::IoError);

    const auto decreasing = temp_csv("ckn_model_dec.csv", "t,d\n1.0,1.0\n0.5,2.0\n");
    CHECK_THROWS_AS(RadialMeasure::tabulated_from_csv(3, decreasing), ckn::IoError);

    CHECK_THROWS_AS(RadialMeasure::tabulated_from_csv(3, "/nonexistent/x.csv"), ckn::IoError);
}

TEST_CASE("tabulated: ball volume matches an independent Riemann sum") {
    const auto model = RadialMeasure::tabulated(3, {0.5, 1.0, 2.0}, {1.0, 2.0, 1.5});
    const double R = 1.7;
    const int steps = 400000;
    double riemann = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double t = (i + 0.5) * R / steps;
        riemann += model.sphere_density(t) * (R / steps);
    }
    CHECK(model.ball_volume(R) == doctest::Approx(riemann).epsilon(1e-6));
}
