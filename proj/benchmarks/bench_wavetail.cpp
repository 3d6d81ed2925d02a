#include "wavetail/duhamel.hpp"
#include "wavetail/evolver.hpp"
#include "wavetail/freewave.hpp"
#include "wavetail/specfun.hpp"
#include "wavetail/tailfit.hpp"
#include "wavetail/wavedata.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace wavetail;

namespace {

GeneratingFunction standard_profile() {
    return GeneratingFunction{
        {{1.0, 1.0, 0.8, 8}, {-0.6, 1.9, 0.9, 8}}};
}

NonlinearityTerm cubic_term() {
    NonlinearityTerm t;
    t.p = 3;
    t.q = 0;
    t.c = 1.0;
    return t;
}

void bm_bump_derivative(benchmark::State& state) {
    BumpComponent b{1.25, 1.0, 0.5, 8};
    const int k = int(state.range(0));
    double x = 0.73;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bump_derivative(b, k, x));
        x = x == 0.73 ? 1.21 : 0.73;  // defeat value caching
    }
}
BENCHMARK(bm_bump_derivative)->Arg(0)->Arg(3)->Arg(6);

void bm_eval_phi0(benchmark::State& state) {
    GeneratingFunction a = standard_profile();
    const int l = int(state.range(0));
    double t = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_phi0(a, l, t, 1.7));
        t = t == 2.0 ? 2.5 : 2.0;
    }
}
BENCHMARK(bm_eval_phi0)->Arg(1)->Arg(3);

void bm_legendre_p(benchmark::State& state) {
    const int l = int(state.range(0));
    double mu = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(legendre_p(l, mu));
        mu = -mu;
    }
}
BENCHMARK(bm_legendre_p)->Arg(4)->Arg(12);

void bm_tail_integral(benchmark::State& state) {
    GeneratingFunction a = standard_profile();
    for (auto _ : state)
        benchmark::DoNotOptimize(tail_integral(a, 1, 3, 0));
}
BENCHMARK(bm_tail_integral);

void bm_kernel_moment_closed(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernel_moment_closed(2, 5, 9.0, 2.5, 0.4));
}
BENCHMARK(bm_kernel_moment_closed);

void bm_kernel_moment_quadrature(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernel_moment_quadrature(2, 5, 9.0, 2.5, 0.4));
}
BENCHMARK(bm_kernel_moment_quadrature);

void bm_first_order_iterate(benchmark::State& state) {
    GeneratingFunction a = standard_profile();
    NonlinearityTerm term = cubic_term();
    const double t = double(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            first_order_iterate(a, 1, term, t, 2.0, 1e-8));
}
BENCHMARK(bm_first_order_iterate)->Arg(40)->Arg(160);

void bm_evolve_linear(benchmark::State& state) {
    SimulationConfig cfg;
    cfg.dim.l = 1;
    cfg.profile = standard_profile();
    cfg.terms = {cubic_term()};
    cfg.grid.dr = 1.0 / double(state.range(0));
    cfg.grid.r_out = 8.0;
    cfg.grid.t_max = 6.0;
    cfg.epsilons = {0.05};
    cfg.observers = {3.0};
    cfg.label = "bench";
    for (auto _ : state) benchmark::DoNotOptimize(evolve(cfg, 0.05));
    state.SetItemsProcessed(state.iterations() *
                            int64_t(cfg.grid.r_out / cfg.grid.dr) *
                            int64_t(cfg.grid.t_max /
                                    (cfg.grid.cfl * cfg.grid.dr)));
}
BENCHMARK(bm_evolve_linear)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void bm_fit_amplitude(benchmark::State& state) {
    std::vector<double> t, phi;
    for (int i = 0; i < 2000; ++i) {
        double x = 10.0 * std::pow(100.0, i / 1999.0);
        t.push_back(x);
        phi.push_back(4.3 * std::pow(x, -5.0) * (1.0 + 2.0 / x));
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(fit_amplitude(t, phi, 5.0, 50.0, 1000.0));
}
BENCHMARK(bm_fit_amplitude);

}  // namespace

BENCHMARK_MAIN();
