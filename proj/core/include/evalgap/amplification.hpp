#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evalgap/model.hpp"

namespace evalgap {

// ─── Coverage scaling over tool count ─────────────────────────────
//
// With T composable tools the quality space grows as
// N(T) = T + ceil(alpha*T*(T-1)/2): one dimension per tool plus one per
// interacting pair. Evaluation coverage is capped by engineering spend,
// K(T) = min(floor(C(T)/c), N(T)). Whenever C grows sub-quadratically the
// coverage ratio K/N collapses toward zero; a quadratic C is the only
// escape.

enum class CostFamily : std::uint8_t {
    linear,     // C(T) = c0 + c1*T
    power,      // C(T) = c1*T^gamma, gamma in (0,2): still sub-quadratic
    quadratic,  // C(T) = c2*T^2: the escape case
};

struct CostModel {
    CostFamily family = CostFamily::linear;
    double c0 = 0.0;
    double c1 = 1.0;
    double gamma = 1.0;  // power-family exponent
    double c2 = 1.0;

    double at(long long tool_count) const;
};

struct AmplificationConfig {
    double alpha = 1.0;      // fraction of tool pairs with interaction effects, (0,1]
    double unit_cost = 1.0;  // engineering cost per evaluable dimension, > 0
    CostModel cost;
    long long t_min = 2;
    long long t_max = 100;
};

std::vector<Violation> validate_config(const AmplificationConfig& cfg);

// N(T). Throws Error("axiom5_domain") for T < 2.
long long dimension_count(long long tool_count, double alpha);

// K(T) = min(floor(C(T)/c), N(T)), never negative.
long long coverage_count(long long tool_count, const AmplificationConfig& cfg);

struct SweepRow {
    long long tool_count = 0;  // T
    long long n_dims = 0;      // N(T)
    long long coverage_k = 0;  // K(T)
    double kappa = 0.0;        // 1 - K/N
    double coverage_ratio = 0.0;
    std::optional<double> synthetic_loss;
};

// Parameters of the synthetic uniform-weight sqrt scenario used to turn a
// coverage row into an alignment loss.
struct LossTemplate {
    double alignment_gap = 0.5;
    double budget = 1.0;
};

struct AmplificationSeries {
    std::vector<SweepRow> rows;  // ordered by T
    std::optional<LossTemplate> loss_template;
};

// One row per T in [t_min, t_max]. With with_loss set, attaches the
// alignment loss of the synthetic scenario (w_i = 1, r_i = 1 on covered
// dims, sqrt production); rows with K = 0 or K = N carry zero loss since
// the blended weights are then proportional to w. Throws
// Error("sweep_budget") when with_loss is set and N(t_max) > 5000.
AmplificationSeries amplification_sweep(const AmplificationConfig& cfg, bool with_loss,
                                        std::optional<LossTemplate> loss_template = {});

}  // namespace evalgap
