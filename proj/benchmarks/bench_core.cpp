#include <benchmark/benchmark.h>

#include <cmath>

#include "ckn/comparison.hpp"
#include "ckn/functionals.hpp"
#include "ckn/optimizer.hpp"
#include "ckn/params.hpp"
#include "ckn/profiles.hpp"
#include "ckn/radial_model.hpp"

namespace {

ckn::CknParams desk() {
    return ckn::derive(ckn::RawParams{4, ckn::Rational(2), ckn::Rational(5, 2), ckn::Rational(1)});
}

void BM_DeriveParams(benchmark::State& state) {
    const ckn::RawParams raw{4, ckn::Rational(2), ckn::Rational(5, 2), ckn::Rational(1)};
    for (auto _ : state) {
        auto c = ckn::derive(raw);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_DeriveParams);

void BM_PowerKernelQuadrature(benchmark::State& state) {
    ckn::QuadConfig quad;
    quad.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    ckn::Integrand1D f;
    f.f = [](double t) {
        const double kernel = std::pow(1.0 + t, -6.0);
        if (kernel == 0.0) return 0.0;
        return t * kernel;
    };
    f.weight_exp_zero = 1.0;
    f.decay_exp_inf = -5.0;
    for (auto _ : state) {
        auto r = ckn::quad_integrate(f, quad);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_PowerKernelQuadrature)->Arg(8)->Arg(10)->Arg(12);

void BM_WeightedNormsExtremal(benchmark::State& state) {
    const auto c = desk();
    const auto euclid = ckn::RadialMeasure::euclidean(4);
    const auto profile = ckn::RadialProfile::extremal(c, 1.0);
    ckn::QuadConfig quad;
    for (auto _ : state) {
        auto norms = ckn::weighted_norms(euclid, c, profile, quad);
        benchmark::DoNotOptimize(norms.t_r);
    }
}
BENCHMARK(BM_WeightedNormsExtremal);

void BM_WeightedNormsSampled(benchmark::State& state) {
    const auto c = desk();
    const auto euclid = ckn::RadialMeasure::euclidean(4);
    std::vector<double> knots{0.0};
    for (double t : ckn::log_grid(5e-3, 50.0, static_cast<int>(state.range(0))))
        knots.push_back(t);
    std::vector<double> values;
    for (double t : knots) values.push_back(std::pow(1.0 + t, -2.0));
    values.back() = 0.0;
    const auto profile = ckn::RadialProfile::sampled(knots, values, true);
    ckn::QuadConfig quad;
    for (auto _ : state) {
        auto norms = ckn::weighted_norms(euclid, c, profile, quad);
        benchmark::DoNotOptimize(norms.t_r);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WeightedNormsSampled)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_GKernel(benchmark::State& state) {
    const auto c = desk();
    ckn::QuadConfig quad;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ckn::G_of(c, 0.7, quad));
    }
}
BENCHMARK(BM_GKernel);

void BM_CoptQuadrature(benchmark::State& state) {
    const auto c = desk();
    ckn::QuadConfig quad;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ckn::copt_quadrature(c, quad));
    }
}
BENCHMARK(BM_CoptQuadrature);

void BM_MinimizeGridExtremalInit(benchmark::State& state) {
    const auto c = desk();
    const auto euclid = ckn::RadialMeasure::euclidean(4);
    ckn::QuadConfig quad;
    ckn::MinimizeConfig cfg;
    cfg.grid_size = static_cast<int>(state.range(0));
    cfg.support_radius = 30.0;
    cfg.f_tol = 1e-4;
    for (auto _ : state) {
        auto result = ckn::minimize_grid(euclid, c, cfg, quad);
        benchmark::DoNotOptimize(result.best_quotient);
    }
}
BENCHMARK(BM_MinimizeGridExtremalInit)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
