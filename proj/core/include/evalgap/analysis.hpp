#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evalgap/model.hpp"

namespace evalgap {

// ─── Distortion diagnostics ───────────────────────────────────────
//
// The distortion index D_i = w~_i / w_i predicts, before running anything,
// which dimensions the agent over-invests in (D > 1), leaves alone (D = 1),
// or starves (D < 1). All non-contractible dimensions share the floor
// D = 1 - lambda, the most vulnerable class.

// D_i = lambda*r_i/w_i + (1-lambda) for contractible i, else 1-lambda.
std::vector<double> distortion_index(const Scenario& s);

// Local variant around an equilibrium: gradients of the true objective and
// the reward stand in for w and r. Throws Error("gradient_sign") on any
// non-positive gradient.
std::vector<double> distortion_index_local(std::span<const double> welfare_gradient,
                                           std::span<const double> reward_gradient,
                                           double alignment_gap);

// Principal's value of an allocation, sum w_i * g_i(e_i).
// Throws Error("shape") on a dimension mismatch.
double welfare(const Scenario& s, const Allocation& alloc);

struct AlignmentLoss {
    double loss = 0.0;  // welfare(first_best) - welfare(agent), >= 0
    double welfare_first_best = 0.0;
    double welfare_agent = 0.0;
    Allocation first_best;
    Allocation agent;
};

// Welfare gap between full observability and the evaluation blend.
AlignmentLoss alignment_loss(const Scenario& s);

enum class DimensionClass : std::uint8_t {
    over_investment,   // D > 1: the evaluation over-rewards this dimension
    aligned,           // D = 1 within tolerance
    under_investment,  // D < 1 although the dimension is observable
    max_vulnerable,    // non-contractible: D = 1-lambda, the minimum
};

std::string to_string(DimensionClass c);

struct DimensionAssessment {
    int dimension = 0;  // 1-based
    double distortion = 0.0;
    bool contractible = false;
    DimensionClass classification = DimensionClass::aligned;
    int rank = 0;  // 1 = highest distortion; ties broken by ascending dimension
};

struct VulnerabilityReport {
    std::vector<DimensionAssessment> dimensions;  // in dimension order
    std::uint64_t fingerprint = 0;                // scenario_fingerprint of the input
};

// Ranked per-dimension distortion report.
VulnerabilityReport assess(const Scenario& s);

// Alignment loss over a (coverage, alignment-gap) grid, with the discrete
// mixed differences over (kappa, lambda). The sign of the mixed difference
// is reported, not asserted: the loss need not be monotone in coverage.
struct ComplementarityGrid {
    std::vector<int> k_values;          // sorted by kappa ascending (K descending)
    std::vector<double> kappa_values;   // ascending
    std::vector<double> lambda_values;  // ascending
    std::vector<std::vector<double>> loss;              // [kappa][lambda]
    std::vector<std::vector<double>> mixed_difference;  // [kappa pair][lambda pair]
};

// Rebuilds the template scenario for every (K, lambda) cell. Reward weights
// for dimensions beyond the template's list default to the matching w_i, so
// the grid isolates the coverage effect. Throws Error("grid") when either
// axis has fewer than two distinct values.
ComplementarityGrid complementarity_grid(const Scenario& base,
                                         std::vector<int> k_values,
                                         std::vector<double> lambda_values);

}  // namespace evalgap
