#include "evalgap/amplification.hpp"

#include <algorithm>
#include <cmath>

#include "evalgap/analysis.hpp"

namespace evalgap {

double CostModel::at(long long tool_count) const {
    const double t = static_cast<double>(tool_count);
    switch (family) {
        case CostFamily::linear: return c0 + c1 * t;
        case CostFamily::power: return c1 * std::pow(t, gamma);
        case CostFamily::quadratic: return c2 * t * t;
    }
    return 0.0;
}

std::vector<Violation> validate_config(const AmplificationConfig& cfg) {
    std::vector<Violation> out;
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
        out.push_back({"alpha_range", "alpha must lie in (0,1]"});
    }
    if (!(cfg.unit_cost > 0.0)) {
        out.push_back({"positivity", "unit_cost must be positive"});
    }
    switch (cfg.cost.family) {
        case CostFamily::linear:
            if (cfg.cost.c0 < 0.0 || !(cfg.cost.c1 > 0.0)) {
                out.push_back({"cost_params", "linear family needs c0 >= 0 and c1 > 0"});
            }
            break;
        case CostFamily::power:
            if (!(cfg.cost.c1 > 0.0) || !(cfg.cost.gamma > 0.0 && cfg.cost.gamma < 2.0)) {
                out.push_back({"cost_params", "power family needs c1 > 0 and gamma in (0,2)"});
            }
            break;
        case CostFamily::quadratic:
            if (!(cfg.cost.c2 > 0.0)) {
                out.push_back({"cost_params", "quadratic family needs c2 > 0"});
            }
            break;
    }
    if (cfg.t_min < 2 || cfg.t_max < cfg.t_min) {
        out.push_back({"t_range", "need 2 <= t_min <= t_max"});
    }
    return out;
}

long long dimension_count(long long tool_count, double alpha) {
    if (tool_count < 2) {
        throw Error("axiom5_domain", "tool count must be >= 2");
    }
    const double pairs = static_cast<double>(tool_count) *
                         static_cast<double>(tool_count - 1) / 2.0;
    return tool_count + static_cast<long long>(std::ceil(alpha * pairs));
}

long long coverage_count(long long tool_count, const AmplificationConfig& cfg) {
    const long long cap = dimension_count(tool_count, cfg.alpha);
    const double affordable = std::floor(cfg.cost.at(tool_count) / cfg.unit_cost);
    if (affordable <= 0.0) return 0;
    if (affordable >= static_cast<double>(cap)) return cap;
    return static_cast<long long>(affordable);
}

namespace {

double synthetic_loss(long long n, long long k, const LossTemplate& tpl) {
    // Blended weights proportional to w at the edges: no distortion.
    if (k <= 0 || k >= n) return 0.0;
    Scenario s;
    s.n_dims = static_cast<int>(n);
    s.coverage_k = static_cast<int>(k);
    s.weights.assign(static_cast<std::size_t>(n), 1.0);
    s.reward_weights.assign(static_cast<std::size_t>(k), 1.0);
    s.alignment_gap = tpl.alignment_gap;
    s.budget = tpl.budget;
    s.production.assign(static_cast<std::size_t>(n), ProductionFunction::power(1.0, 0.5));
    return alignment_loss(validated(std::move(s))).loss;
}

}  // namespace

AmplificationSeries amplification_sweep(const AmplificationConfig& cfg, bool with_loss,
                                        std::optional<LossTemplate> loss_template) {
    if (auto violations = validate_config(cfg); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    const LossTemplate tpl = loss_template.value_or(LossTemplate{});
    if (with_loss && dimension_count(cfg.t_max, cfg.alpha) > 5000) {
        throw Error("sweep_budget", "with_loss sweeps require N(t_max) <= 5000");
    }

    AmplificationSeries series;
    if (with_loss) series.loss_template = tpl;
    for (long long t = cfg.t_min; t <= cfg.t_max; ++t) {
        SweepRow row;
        row.tool_count = t;
        row.n_dims = dimension_count(t, cfg.alpha);
        row.coverage_k = coverage_count(t, cfg);
        row.coverage_ratio =
            static_cast<double>(row.coverage_k) / static_cast<double>(row.n_dims);
        row.kappa = 1.0 - row.coverage_ratio;
        if (with_loss) {
            row.synthetic_loss = synthetic_loss(row.n_dims, row.coverage_k, tpl);
        }
        series.rows.push_back(row);
    }
    return series;
}

}  // namespace evalgap
