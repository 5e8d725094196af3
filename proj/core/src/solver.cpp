#include "evalgap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace evalgap {

namespace {

constexpr int kMaxBracketSteps = 200;
constexpr int kMaxBisectionSteps = 200;

double clamped_effort(double mu, double weight, const ProductionFunction& g) {
    return g.inv_deriv(mu / weight);
}

double total_effort(double mu, std::span<const double> weights,
                    std::span<const ProductionFunction> production) {
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        sum += clamped_effort(mu, weights[i], production[i]);
    }
    return sum;
}

Allocation finish(std::vector<double> effort, std::span<const double> weights,
                  std::span<const ProductionFunction> production, double mu) {
    Allocation out;
    out.effort = std::move(effort);
    out.quality.resize(out.effort.size());
    out.weights_used.assign(weights.begin(), weights.end());
    out.multiplier = mu;
    for (std::size_t i = 0; i < out.effort.size(); ++i) {
        out.quality[i] = production[i].value(out.effort[i]);
        out.objective_value += weights[i] * out.quality[i];
    }
    return out;
}

}  // namespace

Allocation solve_allocation(std::span<const double> weights,
                            std::span<const ProductionFunction> production,
                            double budget) {
    const std::size_t n = weights.size();
    if (n == 0 || production.size() != n) {
        throw Error("shape", "weights and production must be non-empty and same-sized");
    }
    if (!(budget > 0.0)) {
        throw Error("positivity", "budget must be positive");
    }
    for (double c : weights) {
        if (!(c > 0.0)) throw Error("positivity", "weights must be positive");
    }

    // Initial bracket: at mu_lo the cheapest dimension alone absorbs the whole
    // budget; at mu_hi every dimension asks for at most B/(2N).
    double mu_lo = weights[0] * production[0].deriv(budget);
    double mu_hi = 0.0;
    const double probe = budget / (2.0 * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        mu_lo = std::min(mu_lo, weights[i] * production[i].deriv(budget));
        const double d = weights[i] * production[i].deriv(probe);
        if (std::isfinite(d)) mu_hi = std::max(mu_hi, d);
    }
    if (!(mu_hi > 0.0)) mu_hi = mu_lo * 2.0;

    int guard = 0;
    while (total_effort(mu_lo, weights, production) < budget) {
        mu_lo *= 0.5;
        if (++guard > kMaxBracketSteps) throw Error("bracket", "no lower multiplier bracket");
    }
    guard = 0;
    while (total_effort(mu_hi, weights, production) > budget) {
        mu_hi *= 2.0;
        if (++guard > kMaxBracketSteps) throw Error("bracket", "no upper multiplier bracket");
    }

    double mu = 0.5 * (mu_lo + mu_hi);
    for (int iter = 0; iter < kMaxBisectionSteps; ++iter) {
        mu = 0.5 * (mu_lo + mu_hi);
        const double total = total_effort(mu, weights, production);
        if (std::abs(total - budget) <= 1e-10 * budget) break;
        (total > budget ? mu_lo : mu_hi) = mu;
    }

    std::vector<double> effort(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        effort[i] = clamped_effort(mu, weights[i], production[i]);
        total += effort[i];
    }
    // Absorb the bisection residual so the budget binds exactly; near the
    // optimum this perturbs the objective only at second order.
    if (total > 0.0) {
        const double rescale = budget / total;
        for (double& e : effort) e *= rescale;
    }
    return finish(std::move(effort), weights, production, mu);
}

Allocation solve_first_best(const Scenario& s) {
    return solve_allocation(s.weights, s.production, s.budget);
}

Allocation solve_agent(const Scenario& s) {
    const auto blended = effective_weights(s);
    return solve_allocation(blended, s.production, s.budget);
}

Allocation oracle_grid_solve(std::span<const double> weights,
                             std::span<const ProductionFunction> production,
                             double budget, int grid_points) {
    const std::size_t n = weights.size();
    if (n == 0 || production.size() != n) {
        throw Error("shape", "weights and production must be non-empty and same-sized");
    }
    if (n > 6) {
        throw Error("oracle_dims", "grid oracle supports at most 6 dimensions");
    }
    if (grid_points < 2) {
        throw Error("oracle_budget", "grid needs at least 2 points per dimension");
    }

    const int steps = grid_points - 1;
    double lattice_size = 1.0;  // C(steps + n - 1, n - 1)
    for (std::size_t i = 1; i < n; ++i) {
        lattice_size *= static_cast<double>(steps + i) / static_cast<double>(i);
    }
    if (lattice_size > 5e7) {
        throw Error("oracle_budget", "lattice too large to enumerate");
    }

    const double h = budget / static_cast<double>(steps);
    // value_table[i][k] = c_i * g_i(k*h)
    std::vector<std::vector<double>> value_table(n);
    for (std::size_t i = 0; i < n; ++i) {
        value_table[i].resize(static_cast<std::size_t>(steps) + 1);
        for (int k = 0; k <= steps; ++k) {
            value_table[i][static_cast<std::size_t>(k)] =
                weights[i] * production[i].value(static_cast<double>(k) * h);
        }
    }

    std::vector<int> levels(n, 0);
    std::vector<int> best_levels(n, 0);
    double best_value = -1.0;

    // Depth-first over compositions of `steps`, visiting effort vectors in
    // ascending lexicographic order; strict improvement keeps the first
    // (lowest) vector among exact ties.
    auto walk = [&](auto&& self, std::size_t dim, int remaining, double acc) -> void {
        if (dim + 1 == n) {
            levels[dim] = remaining;
            const double value = acc + value_table[dim][static_cast<std::size_t>(remaining)];
            if (value > best_value) {
                best_value = value;
                best_levels = levels;
            }
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            levels[dim] = k;
            self(self, dim + 1, remaining - k, acc + value_table[dim][static_cast<std::size_t>(k)]);
        }
    };
    walk(walk, 0, steps, 0.0);

    std::vector<double> effort(n);
    for (std::size_t i = 0; i < n; ++i) {
        effort[i] = static_cast<double>(best_levels[i]) * h;
    }
    // Shadow-price estimate at the grid optimum; diagnostic only.
    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (effort[i] > 0.0) mu = std::max(mu, weights[i] * production[i].deriv(effort[i]));
    }
    return finish(std::move(effort), weights, production, mu);
}

}  // namespace evalgap
