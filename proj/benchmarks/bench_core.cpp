#include "qd/correlations.hpp"
#include "qd/dynamics.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

qd::ModelParams fig2_params(int cutoff) {
    qd::ModelParams p;
    p.gamma = 0.1;
    p.kappa = 1.5;
    p.n_T = 0.7;
    p.cutoff = cutoff;
    return p;
}

void bm_liouvillian(benchmark::State& state) {
    const auto p = fig2_params(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qd::liouvillian(p).matrix.norm());
    }
}
BENCHMARK(bm_liouvillian)->Arg(3)->Arg(5);

void bm_steady_state(benchmark::State& state) {
    const auto p = fig2_params(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qd::steady_state(p).residual);
    }
}
BENCHMARK(bm_steady_state)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void bm_propagator_step(benchmark::State& state) {
    const auto p = fig2_params(5);
    const auto L = qd::liouvillian(p);
    const qd::Mat prop = qd::expm(L.matrix * 0.02);
    qd::Vec v = qd::vectorize(qd::initial_state(p).rho);
    for (auto _ : state) {
        v = prop * v;
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(bm_propagator_step);

void bm_discord(benchmark::State& state) {
    std::mt19937 gen(7);
    std::normal_distribution<double> d;
    qd::Mat m(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m(i, j) = qd::Complex(d(gen), d(gen));
    }
    qd::Mat rho = m * m.adjoint();
    rho /= rho.trace().real();
    const qd::DensityMatrix dm{std::move(rho), {2, 2}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qd::discord(dm).discord);
    }
}
BENCHMARK(bm_discord)->Unit(benchmark::kMillisecond);

void bm_concurrence(benchmark::State& state) {
    const qd::Mat phi = (qd::Mat(4, 1) << 1, 0, 0, 1).finished() / std::sqrt(2.0);
    const qd::DensityMatrix bell{phi * phi.adjoint(), {2, 2}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qd::concurrence(bell));
    }
}
BENCHMARK(bm_concurrence);

}  // namespace

BENCHMARK_MAIN();
