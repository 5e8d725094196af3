#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evalgap/error.hpp"

namespace evalgap {

// ─── Model primitives ─────────────────────────────────────────────
//
// A task produces quality along N dimensions, q_i = g_i(e_i), from effort
// subject to a total budget. The evaluation system observes only the first
// K dimensions (the contractible ones) and rewards them with weights r;
// the principal values all N with weights w. The agent acts on the blend
//
//     w~_i = lambda*r_i + (1-lambda)*w_i   (i <= K)
//     w~_i = (1-lambda)*w_i                (i  > K)
//
// where lambda in (0,1) is the alignment gap: how much of the agent's
// drive comes from the evaluation signal instead of the internalized
// objective.

enum class ProductionFamily : std::uint8_t {
    power,  // g(e) = a*e^p, 0<p<1; marginal product diverges at 0 (interior optima)
    log,    // g(e) = a*ln(1+e); finite marginal product at 0 (corners possible)
};

struct ProductionFunction {
    ProductionFamily family = ProductionFamily::power;
    double scale = 1.0;     // a > 0
    double exponent = 0.5;  // p, power family only

    static ProductionFunction power(double scale, double exponent) {
        return {ProductionFamily::power, scale, exponent};
    }
    static ProductionFunction log(double scale) {
        return {ProductionFamily::log, scale, 0.0};
    }

    // g(e); e >= 0
    double value(double effort) const;

    // g'(e); returns +infinity for the power family at e = 0 (never store it)
    double deriv(double effort) const;

    // The e >= 0 with g'(e) = marginal. Clamps to 0 for the log family when
    // marginal >= g'(0). Throws Error("domain") for marginal <= 0.
    double inv_deriv(double marginal) const;

    bool operator==(const ProductionFunction&) const = default;
};

struct Scenario {
    int n_dims = 0;                       // N >= 2
    std::vector<double> weights;          // w, size N, all > 0
    int coverage_k = 0;                   // K, 1 <= K < N; dims 1..K are contractible
    std::vector<double> reward_weights;   // r, size K, all > 0
    double alignment_gap = 0.0;           // lambda in (0,1)
    double budget = 0.0;                  // B > 0
    std::vector<ProductionFunction> production;  // size N

    bool operator==(const Scenario&) const = default;
};

// All constraint checks on a raw scenario record; returns every violation
// found (empty means valid). Codes: "axiom1", "axiom2", "alignment_gap_range",
// "positivity", "production_params", "shape".
std::vector<Violation> validate_scenario(const Scenario& raw);

// validate_scenario that throws ValidationError instead of returning the list.
Scenario validated(Scenario raw);

// The blended weights that actually drive the agent's allocation (see top).
std::vector<double> effective_weights(const Scenario& s);

// Contract incompleteness kappa = (N - K) / N.
double incompleteness(const Scenario& s);

// Solution record for max sum c_i*g_i(e_i) s.t. sum e_i <= B, e >= 0.
// From the exact solver it satisfies the KKT system
//   c_i * g_i'(e_i) <= mu, with equality whenever e_i > 0,
// and exhausts the budget; grid-oracle instances are best-on-grid only.
struct Allocation {
    std::vector<double> effort;        // e, size N
    std::vector<double> quality;       // q_i = g_i(e_i)
    std::vector<double> weights_used;  // the c that was maximized
    double multiplier = 0.0;           // mu, budget shadow price
    double objective_value = 0.0;      // sum c_i * q_i
};

// FNV-1a over a canonical rendering of the scenario; stable across runs.
std::uint64_t scenario_fingerprint(const Scenario& s);

}  // namespace evalgap
