#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "evalgap/model.hpp"

namespace evalgap {

// ─── Two regimes of gaming ─────────────────────────────────────────
//
// Goodhart regime: the agent games within a fixed evaluation system by
// reallocating effort toward covered dimensions. Campbell regime: the agent
// spends part of its budget m to degrade the evaluation's effective
// coverage, K_eff = K0 - gamma*m, and collects a spoofed score on the
// degraded share instead of producing quality there.
//
// The spoof model is this artifact's parametrization, not a derived fact:
// on a dimension whose coverage fraction has degraded by d_i, measured
// quality is replaced by d_i * sigma(B) with sigma(B) = s0 * B^beta. It is
// labeled as such in every rendered output.

struct CampbellConfig {
    int n_dims = 2;
    int base_coverage = 1;               // K0, 1 <= K0 < N
    std::vector<double> weights;         // w, size N
    std::vector<double> reward_weights;  // r, size K0
    double alignment_gap = 0.5;          // lambda in (0,1)
    std::vector<ProductionFunction> production;  // size N

    double degradation_rate = 0.0;  // gamma >= 0 in K_eff = K0 - gamma*m
    double spoof_scale = 1.0;       // s0 >= 0 (0 = worthless spoof)
    double spoof_exponent = 0.5;    // beta in (0,1]
    std::optional<double> passive_delta;  // if set: baseline coverage K0/(1+delta*B)
};

std::vector<Violation> validate_config(const CampbellConfig& cfg);

// K_eff(m) = clamp(K0 - gamma*m, 0, K0); fractional coverage is permitted.
double effective_coverage(double manipulation, const CampbellConfig& cfg);

// Contract weights under fractional coverage: dimension i (1-based) is
// contractible with fraction phi_i = clamp(k_eff - (i-1), 0, 1), giving
// w~_i = phi_i*(lambda*r_i + (1-lambda)*w_i) + (1-phi_i)*(1-lambda)*w_i.
// Coincides with the integer-K blend at whole k_eff.
std::vector<double> fractional_effective_weights(double effective_k,
                                                 const CampbellConfig& cfg);

struct PerceivedOutcome {
    double perceived_value = 0.0;  // production term + spoof term
    double spoof_term = 0.0;
    double effective_k = 0.0;
    Allocation allocation;  // inner allocation of budget - manipulation
};

// Value the agent perceives from spending `manipulation` on degradation and
// the rest on production.
PerceivedOutcome evaluate_response(double manipulation, double budget,
                                   const CampbellConfig& cfg);

struct BestResponse {
    double manipulation = 0.0;     // m*
    double perceived_value = 0.0;  // Phi*
    double effective_k = 0.0;
    Allocation allocation;
};

// Two-stage optimum: coarse grid over m in [0,B] (257 points) plus
// golden-section refinement around the best cell; m = 0 and m = B stay in
// the candidate set so boundary optima are exact. Short-circuits to m = 0
// when gamma <= 0 or s0 <= 0 (manipulation can never pay).
BestResponse agent_best_response(double budget, const CampbellConfig& cfg);

struct ThresholdScan {
    std::vector<double> budgets;
    std::vector<double> manipulation;  // m*(B)
    std::vector<double> effective_k;
    std::vector<double> perceived;  // Phi*(B)
    std::vector<double> welfare;    // true welfare at the best response; spoof excluded

    // First budget where m* > 1e-6*B, refined by bisection inside the grid
    // bracket. When the very first grid point already manipulates the
    // bracket degenerates to (front, front).
    std::optional<double> threshold;
    std::optional<std::pair<double, double>> threshold_bracket;

    // First k with welfare[k+1] < welfare[k] - 1e-9, if any.
    std::optional<std::size_t> non_monotone_index;
};

// Best responses along an increasing budget grid (>= 3 points, else
// Error("grid")), with the Goodhart-to-Campbell transition estimate.
ThresholdScan threshold_scan(std::span<const double> budget_grid,
                             const CampbellConfig& cfg);

}  // namespace evalgap
