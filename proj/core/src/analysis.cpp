#include "evalgap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "evalgap/solver.hpp"

namespace evalgap {

namespace {

constexpr double kAlignedBand = 1e-9;  // |D - 1| tolerance for "aligned"

}  // namespace

std::vector<double> distortion_index(const Scenario& s) {
    // Computed from the definition, not as blended/w: uncovered dimensions
    // must share the floor 1-lambda exactly so rank ties stay deterministic.
    std::vector<double> d(static_cast<std::size_t>(s.n_dims));
    const double floor = 1.0 - s.alignment_gap;
    for (int i = 0; i < s.n_dims; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        d[idx] = i < s.coverage_k
                     ? s.alignment_gap * s.reward_weights[idx] / s.weights[idx] + floor
                     : floor;
    }
    return d;
}

std::vector<double> distortion_index_local(std::span<const double> welfare_gradient,
                                           std::span<const double> reward_gradient,
                                           double alignment_gap) {
    if (reward_gradient.size() > welfare_gradient.size()) {
        throw Error("shape", "reward gradient longer than welfare gradient");
    }
    for (double g : welfare_gradient) {
        if (!(g > 0.0)) throw Error("gradient_sign", "welfare gradient must be positive");
    }
    for (double g : reward_gradient) {
        if (!(g > 0.0)) throw Error("gradient_sign", "reward gradient must be positive");
    }
    std::vector<double> d(welfare_gradient.size());
    for (std::size_t i = 0; i < welfare_gradient.size(); ++i) {
        d[i] = i < reward_gradient.size()
                   ? (alignment_gap * reward_gradient[i] +
                      (1.0 - alignment_gap) * welfare_gradient[i]) /
                         welfare_gradient[i]
                   : 1.0 - alignment_gap;
    }
    return d;
}

double welfare(const Scenario& s, const Allocation& alloc) {
    if (alloc.effort.size() != static_cast<std::size_t>(s.n_dims) ||
        alloc.quality.size() != alloc.effort.size()) {
        throw Error("shape", "allocation does not match scenario dimensions");
    }
    double w = 0.0;
    for (std::size_t i = 0; i < alloc.quality.size(); ++i) {
        w += s.weights[i] * alloc.quality[i];
    }
    return w;
}

AlignmentLoss alignment_loss(const Scenario& s) {
    AlignmentLoss out;
    out.first_best = solve_first_best(s);
    out.agent = solve_agent(s);
    out.welfare_first_best = welfare(s, out.first_best);
    out.welfare_agent = welfare(s, out.agent);
    out.loss = out.welfare_first_best - out.welfare_agent;
    // Corner-collapsed scenarios solve the same problem twice through
    // different bisection paths; squash the resulting last-ulp residue so the
    // loss is never negative.
    if (std::abs(out.loss) <= 1e-12 * std::max(1.0, std::abs(out.welfare_first_best))) {
        out.loss = 0.0;
    }
    return out;
}

std::string to_string(DimensionClass c) {
    switch (c) {
        case DimensionClass::over_investment: return "over_investment";
        case DimensionClass::aligned: return "aligned";
        case DimensionClass::under_investment: return "under_investment";
        case DimensionClass::max_vulnerable: return "max_vulnerable";
    }
    return "?";
}

VulnerabilityReport assess(const Scenario& s) {
    const auto d = distortion_index(s);
    VulnerabilityReport report;
    report.fingerprint = scenario_fingerprint(s);
    report.dimensions.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto& dim = report.dimensions[i];
        dim.dimension = static_cast<int>(i) + 1;
        dim.distortion = d[i];
        dim.contractible = static_cast<int>(i) < s.coverage_k;
        if (!dim.contractible) {
            dim.classification = DimensionClass::max_vulnerable;
        } else if (d[i] > 1.0 + kAlignedBand) {
            dim.classification = DimensionClass::over_investment;
        } else if (d[i] >= 1.0 - kAlignedBand) {
            dim.classification = DimensionClass::aligned;
        } else {
            dim.classification = DimensionClass::under_investment;
        }
    }
    // rank 1 = highest distortion; ties keep ascending dimension order
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        report.dimensions[order[pos]].rank = static_cast<int>(pos) + 1;
    }
    return report;
}

ComplementarityGrid complementarity_grid(const Scenario& base,
                                         std::vector<int> k_values,
                                         std::vector<double> lambda_values) {
    std::set<int> k_set(k_values.begin(), k_values.end());
    std::set<double> lambda_set(lambda_values.begin(), lambda_values.end());
    if (k_set.size() < 2 || lambda_set.size() < 2) {
        throw Error("grid", "both axes need at least two distinct values");
    }

    ComplementarityGrid grid;
    // kappa ascending = K descending
    grid.k_values.assign(k_set.rbegin(), k_set.rend());
    for (int k : grid.k_values) {
        grid.kappa_values.push_back(static_cast<double>(base.n_dims - k) /
                                    static_cast<double>(base.n_dims));
    }
    grid.lambda_values.assign(lambda_set.begin(), lambda_set.end());

    for (int k : grid.k_values) {
        std::vector<double> row;
        for (double lambda : grid.lambda_values) {
            Scenario cell = base;
            cell.coverage_k = k;
            cell.alignment_gap = lambda;
            cell.reward_weights.resize(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) {
                if (i >= static_cast<int>(base.reward_weights.size())) {
                    cell.reward_weights[static_cast<std::size_t>(i)] =
                        base.weights[static_cast<std::size_t>(i)];
                }
            }
            row.push_back(alignment_loss(validated(std::move(cell))).loss);
        }
        grid.loss.push_back(std::move(row));
    }

    for (std::size_t a = 0; a + 1 < grid.kappa_values.size(); ++a) {
        std::vector<double> row;
        for (std::size_t b = 0; b + 1 < grid.lambda_values.size(); ++b) {
            row.push_back((grid.loss[a + 1][b + 1] - grid.loss[a][b + 1]) -
                          (grid.loss[a + 1][b] - grid.loss[a][b]));
        }
        grid.mixed_difference.push_back(std::move(row));
    }
    return grid;
}

}  // namespace evalgap
