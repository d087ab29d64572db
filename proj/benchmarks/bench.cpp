#include <benchmark/benchmark.h>

#include "contactforge/distinguished.hpp"
#include "contactforge/maps.hpp"
#include "contactforge/verify.hpp"

using namespace cf;

static void BM_ConformalSweep(benchmark::State& state) {
    const auto tw = make_twist(1, 2);
    SamplingGrid g;
    g.n = 2;
    g.shells = 2;
    g.sphere_points = static_cast<int>(state.range(0));
    g.time_samples = 4;
    for (auto _ : state) {
        auto r = conformal_factor_check(tw, g, 1e-8);
        benchmark::DoNotOptimize(r.max_residual);
    }
    state.SetItemsProcessed(state.iterations() * 2 * state.range(0) * 4);
}
BENCHMARK(BM_ConformalSweep)->Arg(64)->Arg(256);

static void BM_HamiltonianExtraction(benchmark::State& state) {
    const auto f = path_f_s(2, 2);
    const auto H = extract_hamiltonian(f);
    CVec z(2);
    z << std::complex<double>(0.4, -0.2), std::complex<double>(-0.6, 0.3);
    double t = 0.1;
    for (auto _ : state) {
        t = t < 0.9 ? t + 0.001 : 0.1;
        benchmark::DoNotOptimize(H(z, t, 0.7));
    }
}
BENCHMARK(BM_HamiltonianExtraction);

static void BM_DistinguishedApply(benchmark::State& state) {
    DistinguishedMap a(choose_shift_params(2),
                       OdeConfig{static_cast<int>(state.range(0))});
    CVec z(2);
    z << std::complex<double>(0.5, 0.1), std::complex<double>(-0.3, 0.7);
    z /= z.norm();
    for (auto _ : state) benchmark::DoNotOptimize(a.apply(z));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DistinguishedApply)->Arg(64)->Arg(256)->Arg(512);

static void BM_FundamentalInequality(benchmark::State& state) {
    SamplingGrid g;
    g.n = 2;
    g.shells = 1;
    g.r_min = g.r_max = 1.0;
    g.sphere_points = static_cast<int>(state.range(0));
    g.time_samples = 8;
    g.s_samples = 4;
    for (auto _ : state) {
        auto r = fundamental_inequality_check(2, g, 1e-6);
        benchmark::DoNotOptimize(r.min_value);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 8 * 4);
}
BENCHMARK(BM_FundamentalInequality)->Arg(64)->Arg(128);
