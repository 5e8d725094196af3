#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "evalgap/analysis.hpp"
#include "evalgap/campbell.hpp"
#include "evalgap/garp.hpp"
#include "evalgap/solver.hpp"

namespace {

using namespace evalgap;

std::vector<double> log_uniform_weights(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
    std::vector<double> w(n);
    for (double& x : w) x = std::exp(u(rng));
    return w;
}

std::vector<ProductionFunction> mixed_production(std::size_t n) {
    std::vector<ProductionFunction> g;
    for (std::size_t i = 0; i < n; ++i) {
        g.push_back(i % 2 == 0 ? ProductionFunction::power(1.0, 0.5)
                               : ProductionFunction::log(1.0));
    }
    return g;
}

void BM_solve_allocation(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto weights = log_uniform_weights(n, 99);
    const auto production = mixed_production(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_allocation(weights, production, 1.0));
    }
}
BENCHMARK(BM_solve_allocation)->Arg(4)->Arg(64)->Arg(1024);

void BM_oracle_grid_solve(benchmark::State& state) {
    const auto points = static_cast<int>(state.range(0));
    const auto weights = log_uniform_weights(3, 7);
    const auto production = mixed_production(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_grid_solve(weights, production, 1.0, points));
    }
}
BENCHMARK(BM_oracle_grid_solve)->Arg(101)->Arg(401);

void BM_agent_best_response(benchmark::State& state) {
    CampbellConfig cfg;
    cfg.n_dims = 4;
    cfg.base_coverage = 2;
    cfg.weights = {1.0, 1.0, 1.0, 1.0};
    cfg.reward_weights = {2.0, 2.0};
    cfg.alignment_gap = 0.6;
    cfg.production.assign(4, ProductionFunction::power(1.0, 0.5));
    cfg.degradation_rate = 4.0;
    cfg.spoof_scale = 2.0;
    cfg.spoof_exponent = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(agent_best_response(10.0, cfg));
    }
}
BENCHMARK(BM_agent_best_response);

void BM_check_garp(benchmark::State& state) {
    const auto count = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    ObservationSet obs;
    for (std::size_t t = 0; t < count; ++t) {
        Observation o;
        for (int i = 0; i < 4; ++i) {
            o.prices.push_back(u(rng));
            o.bundle.push_back(u(rng));
        }
        obs.observations.push_back(std::move(o));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_garp(obs));
    }
}
BENCHMARK(BM_check_garp)->Arg(16)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
