#pragma once

#include <cmath>
#include <random>

#include "evalgap/model.hpp"

// Seeded scenario generator shared by the property suites and the acceptance
// run. Distributions: N uniform in 2..6, K uniform in 1..N-1, weights
// log-uniform in [0.1, 10], lambda uniform in [0.05, 0.95], budget 1, family
// a fair coin per dimension. Production parameters are kept moderate
// (p in [0.35, 0.65], scale log-uniform in [0.5, 2]) so grid-oracle
// agreement bounds hold with margin.

namespace testgen {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kSuiteSeed = 0x5eed5eed2024ull;

inline double log_uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

inline evalgap::ProductionFunction random_production(Rng& rng, bool inada_only) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const double scale = log_uniform(rng, 0.5, 2.0);
    if (inada_only || coin(rng) < 0.5) {
        std::uniform_real_distribution<double> p(0.35, 0.65);
        return evalgap::ProductionFunction::power(scale, p(rng));
    }
    return evalgap::ProductionFunction::log(scale);
}

struct ScenarioOptions {
    bool inada_only = false;   // power family everywhere (interior optima)
    bool symmetric = false;    // identical production and equal principal weights
    int max_dims = 6;
};

inline evalgap::Scenario random_scenario(Rng& rng, const ScenarioOptions& opt = {}) {
    std::uniform_int_distribution<int> n_dist(2, opt.max_dims);
    evalgap::Scenario s;
    s.n_dims = n_dist(rng);
    std::uniform_int_distribution<int> k_dist(1, s.n_dims - 1);
    s.coverage_k = k_dist(rng);
    std::uniform_real_distribution<double> lambda_dist(0.05, 0.95);
    s.alignment_gap = lambda_dist(rng);
    s.budget = 1.0;

    if (opt.symmetric) {
        const auto g = random_production(rng, opt.inada_only);
        s.production.assign(static_cast<std::size_t>(s.n_dims), g);
        s.weights.assign(static_cast<std::size_t>(s.n_dims), 1.0);
    } else {
        for (int i = 0; i < s.n_dims; ++i) {
            s.production.push_back(random_production(rng, opt.inada_only));
            s.weights.push_back(log_uniform(rng, 0.1, 10.0));
        }
    }
    for (int i = 0; i < s.coverage_k; ++i) {
        s.reward_weights.push_back(log_uniform(rng, 0.1, 10.0));
    }
    return evalgap::validated(std::move(s));
}

inline std::vector<double> random_weights(Rng& rng, std::size_t n) {
    std::vector<double> w(n);
    for (double& x : w) x = log_uniform(rng, 0.1, 10.0);
    return w;
}

}  // namespace testgen
