#include "evalgap/campbell.hpp"

#include <algorithm>
#include <cmath>

#include "evalgap/solver.hpp"

namespace evalgap {

namespace {

constexpr int kOuterGridCells = 256;
constexpr double kManipulationEps = 1e-6;  // relative to B, threshold detection

double baseline_coverage(double budget, const CampbellConfig& cfg) {
    const double k0 = static_cast<double>(cfg.base_coverage);
    if (cfg.passive_delta && *cfg.passive_delta > 0.0) {
        return k0 / (1.0 + *cfg.passive_delta * budget);
    }
    return k0;
}

double coverage_after(double manipulation, double budget, const CampbellConfig& cfg) {
    const double k0 = static_cast<double>(cfg.base_coverage);
    return std::clamp(baseline_coverage(budget, cfg) - cfg.degradation_rate * manipulation,
                      0.0, k0);
}

Allocation zero_allocation(const std::vector<double>& weights, const CampbellConfig& cfg) {
    Allocation alloc;
    alloc.effort.assign(static_cast<std::size_t>(cfg.n_dims), 0.0);
    alloc.quality.assign(static_cast<std::size_t>(cfg.n_dims), 0.0);
    alloc.weights_used = weights;
    return alloc;
}

}  // namespace

std::vector<Violation> validate_config(const CampbellConfig& cfg) {
    Scenario probe;
    probe.n_dims = cfg.n_dims;
    probe.coverage_k = cfg.base_coverage;
    probe.weights = cfg.weights;
    probe.reward_weights = cfg.reward_weights;
    probe.alignment_gap = cfg.alignment_gap;
    probe.budget = 1.0;  // supplied per call; only the template is validated here
    probe.production = cfg.production;
    auto out = validate_scenario(probe);

    if (!(cfg.degradation_rate >= 0.0)) {
        out.push_back({"degradation_rate", "gamma must be >= 0"});
    }
    if (!(cfg.spoof_scale >= 0.0)) {
        out.push_back({"spoof_scale", "s0 must be >= 0"});
    }
    if (!(cfg.spoof_exponent > 0.0 && cfg.spoof_exponent <= 1.0)) {
        out.push_back({"spoof_exponent", "beta must lie in (0,1]"});
    }
    if (cfg.passive_delta && !(*cfg.passive_delta >= 0.0)) {
        out.push_back({"passive_delta", "delta must be >= 0"});
    }
    return out;
}

double effective_coverage(double manipulation, const CampbellConfig& cfg) {
    const double k0 = static_cast<double>(cfg.base_coverage);
    return std::clamp(k0 - cfg.degradation_rate * std::max(0.0, manipulation), 0.0, k0);
}

std::vector<double> fractional_effective_weights(double effective_k,
                                                 const CampbellConfig& cfg) {
    std::vector<double> out(static_cast<std::size_t>(cfg.n_dims));
    for (int i = 0; i < cfg.n_dims; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double base = (1.0 - cfg.alignment_gap) * cfg.weights[idx];
        if (i < cfg.base_coverage) {
            const double phi = std::clamp(effective_k - static_cast<double>(i), 0.0, 1.0);
            out[idx] = phi * (cfg.alignment_gap * cfg.reward_weights[idx] + base) +
                       (1.0 - phi) * base;
        } else {
            out[idx] = base;
        }
    }
    return out;
}

PerceivedOutcome evaluate_response(double manipulation, double budget,
                                   const CampbellConfig& cfg) {
    PerceivedOutcome out;
    out.effective_k = coverage_after(manipulation, budget, cfg);
    const auto blended = fractional_effective_weights(out.effective_k, cfg);

    const double remaining = budget - manipulation;
    out.allocation = remaining > 0.0 ? solve_allocation(blended, cfg.production, remaining)
                                     : zero_allocation(blended, cfg);

    const double spoof_score =
        cfg.spoof_scale * std::pow(budget, cfg.spoof_exponent);  // sigma(B)
    double degraded_reward = 0.0;
    for (int i = 0; i < cfg.base_coverage; ++i) {
        const double phi = std::clamp(out.effective_k - static_cast<double>(i), 0.0, 1.0);
        degraded_reward += cfg.reward_weights[static_cast<std::size_t>(i)] * (1.0 - phi);
    }
    out.spoof_term = cfg.alignment_gap * spoof_score * degraded_reward;
    out.perceived_value = out.allocation.objective_value + out.spoof_term;
    return out;
}

BestResponse agent_best_response(double budget, const CampbellConfig& cfg) {
    if (!(budget > 0.0)) {
        throw Error("positivity", "budget must be positive");
    }
    auto as_response = [&](double m) {
        auto outcome = evaluate_response(m, budget, cfg);
        return BestResponse{m, outcome.perceived_value, outcome.effective_k,
                            std::move(outcome.allocation)};
    };

    // Manipulation can never pay if coverage is rigid or the spoof is worthless:
    // production is strictly increasing in the remaining budget.
    if (cfg.degradation_rate <= 0.0 || cfg.spoof_scale <= 0.0) {
        return as_response(0.0);
    }

    const double cell = budget / static_cast<double>(kOuterGridCells);
    double best_m = 0.0;
    double best_value = evaluate_response(0.0, budget, cfg).perceived_value;
    for (int j = 1; j <= kOuterGridCells; ++j) {
        const double m = std::min(budget, static_cast<double>(j) * cell);
        const double value = evaluate_response(m, budget, cfg).perceived_value;
        if (value > best_value) {
            best_value = value;
            best_m = m;
        }
    }

    // Golden-section refinement inside the winning cell's neighborhood. Phi is
    // not guaranteed unimodal globally; the coarse grid guards the basin.
    double lo = std::max(0.0, best_m - cell);
    double hi = std::min(budget, best_m + cell);
    constexpr double kInvPhi = 0.6180339887498949;
    double a = hi - kInvPhi * (hi - lo);
    double b = lo + kInvPhi * (hi - lo);
    double fa = evaluate_response(a, budget, cfg).perceived_value;
    double fb = evaluate_response(b, budget, cfg).perceived_value;
    while (hi - lo > 1e-7 * budget) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + kInvPhi * (hi - lo);
            fb = evaluate_response(b, budget, cfg).perceived_value;
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - kInvPhi * (hi - lo);
            fa = evaluate_response(a, budget, cfg).perceived_value;
        }
    }

    // Boundary candidates stay exact; ties prefer the smallest m.
    BestResponse best = as_response(0.0);
    for (double m : {0.5 * (lo + hi), best_m, budget}) {
        auto candidate = as_response(m);
        if (candidate.perceived_value > best.perceived_value) {
            best = std::move(candidate);
        }
    }
    return best;
}

ThresholdScan threshold_scan(std::span<const double> budget_grid,
                             const CampbellConfig& cfg) {
    if (budget_grid.size() < 3) {
        throw Error("grid", "budget grid needs at least 3 points");
    }
    for (std::size_t i = 0; i + 1 < budget_grid.size(); ++i) {
        if (!(budget_grid[i] > 0.0) || !(budget_grid[i + 1] > budget_grid[i])) {
            throw Error("grid", "budget grid must be positive and strictly increasing");
        }
    }
    if (auto violations = validate_config(cfg); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }

    ThresholdScan scan;
    auto true_welfare = [&](const Allocation& alloc) {
        double w = 0.0;
        for (std::size_t i = 0; i < alloc.quality.size(); ++i) {
            w += cfg.weights[i] * alloc.quality[i];
        }
        return w;
    };

    for (double budget : budget_grid) {
        auto best = agent_best_response(budget, cfg);
        scan.budgets.push_back(budget);
        scan.manipulation.push_back(best.manipulation);
        scan.effective_k.push_back(best.effective_k);
        scan.perceived.push_back(best.perceived_value);
        scan.welfare.push_back(true_welfare(best.allocation));
    }

    auto manipulates = [&](double budget, double m) { return m > kManipulationEps * budget; };

    std::size_t first_positive = scan.budgets.size();
    for (std::size_t i = 0; i < scan.budgets.size(); ++i) {
        if (manipulates(scan.budgets[i], scan.manipulation[i])) {
            first_positive = i;
            break;
        }
    }
    if (first_positive < scan.budgets.size()) {
        if (first_positive == 0) {
            scan.threshold = scan.budgets.front();
            scan.threshold_bracket = {scan.budgets.front(), scan.budgets.front()};
        } else {
            double lo = scan.budgets[first_positive - 1];
            double hi = scan.budgets[first_positive];
            scan.threshold_bracket = {lo, hi};
            for (int iter = 0; iter < 60 && hi - lo > 1e-9 * hi; ++iter) {
                const double mid = 0.5 * (lo + hi);
                const auto best = agent_best_response(mid, cfg);
                (manipulates(mid, best.manipulation) ? hi : lo) = mid;
            }
            scan.threshold = 0.5 * (lo + hi);
        }
    }

    for (std::size_t i = 0; i + 1 < scan.welfare.size(); ++i) {
        if (scan.welfare[i + 1] < scan.welfare[i] - 1e-9) {
            scan.non_monotone_index = i;
            break;
        }
    }
    return scan;
}

}  // namespace evalgap
