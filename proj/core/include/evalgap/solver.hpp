#pragma once

#include <span>

#include "evalgap/model.hpp"

namespace evalgap {

// Exact maximizer of sum c_i*g_i(e_i) s.t. sum e_i <= B, e >= 0, for strictly
// positive weights. Water-filling: e_i(mu) = g_i'^{-1}(mu/c_i) clamped at 0,
// with the multiplier found by bisection on the budget. Corner handling is
// implicit in the clamp. Throws Error("bracket") if the multiplier cannot be
// bracketed (malformed production parameters).
Allocation solve_allocation(std::span<const double> weights,
                            std::span<const ProductionFunction> production,
                            double budget);

// Allocation the principal would pick with full observability (c = w).
Allocation solve_first_best(const Scenario& s);

// Allocation the agent picks under the evaluation blend (c = effective weights).
Allocation solve_agent(const Scenario& s);

// Exhaustive search over the lattice {e >= 0, sum e = B} with grid_points
// levels per dimension; independent check on solve_allocation, never a
// production path. Ties on objective value keep the lexicographically lowest
// effort vector. Throws Error("oracle_dims") for more than 6 dimensions and
// Error("oracle_budget") when the lattice would be unreasonably large.
Allocation oracle_grid_solve(std::span<const double> weights,
                             std::span<const ProductionFunction> production,
                             double budget, int grid_points);

}  // namespace evalgap
