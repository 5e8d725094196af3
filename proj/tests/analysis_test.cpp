#include "evalgap/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "evalgap/solver.hpp"
#include "support/closed_forms.hpp"
#include "support/generators.hpp"

using namespace evalgap;

namespace {

Scenario sqrt_scenario(int n, int k, double lambda, std::vector<double> w,
                       std::vector<double> r, double budget = 1.0) {
    Scenario s;
    s.n_dims = n;
    s.coverage_k = k;
    s.alignment_gap = lambda;
    s.budget = budget;
    s.weights = std::move(w);
    s.reward_weights = std::move(r);
    s.production.assign(static_cast<std::size_t>(n), ProductionFunction::power(1.0, 0.5));
    return validated(std::move(s));
}

}  // namespace

TEST_CASE("distortion index blends reward and principal weights") {
    const auto even = sqrt_scenario(2, 1, 0.5, {1.0, 1.0}, {1.0});
    CHECK(distortion_index(even) == std::vector<double>{1.0, 0.5});

    const auto skewed = sqrt_scenario(2, 1, 0.25, {1.0, 1.0}, {2.0});
    const auto d = distortion_index(skewed);
    CHECK(d[0] == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("distortion index is one on covered dims when rewards match weights") {
    auto rng = testgen::Rng{17};
    for (int trial = 0; trial < 20; ++trial) {
        auto s = testgen::random_scenario(rng);
        for (int i = 0; i < s.coverage_k; ++i) {
            s.reward_weights[static_cast<std::size_t>(i)] = s.weights[static_cast<std::size_t>(i)];
        }
        const auto d = distortion_index(s);
        for (int i = 0; i < s.coverage_k; ++i) {
            CHECK(d[static_cast<std::size_t>(i)] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("distortion index is the blended-to-principal weight ratio") {
    auto rng = testgen::Rng{19};
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = testgen::random_scenario(rng);
        const auto d = distortion_index(s);
        const auto blended = effective_weights(s);
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(std::abs(d[i] * s.weights[i] - blended[i]) <= 1e-12 * blended[i]);
        }
    }
}

TEST_CASE("local distortion index reduces to the global one on linear data") {
    const auto d = distortion_index_local(std::vector<double>{2.0, 2.0},
                                          std::vector<double>{2.0}, 0.5);
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(0.5));

    const auto steep = distortion_index_local(std::vector<double>{1.0, 1.0},
                                              std::vector<double>{3.0}, 0.5);
    CHECK(steep[0] == doctest::Approx(2.0));

    const auto faint = distortion_index_local(std::vector<double>{1.0, 1.0},
                                              std::vector<double>{3.0}, 1e-12);
    CHECK(faint[0] == doctest::Approx(1.0));
    CHECK(faint[1] == doctest::Approx(1.0));
}

TEST_CASE("local distortion index rejects non-increasing objectives") {
    CHECK_THROWS_WITH_AS(distortion_index_local(std::vector<double>{1.0, -1.0},
                                                std::vector<double>{1.0}, 0.5),
                         doctest::Contains("gradient_sign"), Error);
    CHECK_THROWS_WITH_AS(distortion_index_local(std::vector<double>{1.0},
                                                std::vector<double>{1.0, 1.0}, 0.5),
                         doctest::Contains("shape"), Error);
}

TEST_CASE("welfare sums weighted quality") {
    const auto s = sqrt_scenario(2, 1, 0.5, {1.0, 1.0}, {1.0});
    const auto fb = solve_first_best(s);
    CHECK(welfare(s, fb) == doctest::Approx(1.41421356237).epsilon(1e-10));
    const auto agent = solve_agent(s);
    CHECK(welfare(s, agent) == doctest::Approx(1.34164078650).epsilon(1e-10));

    Allocation idle;
    idle.effort = {0.0, 0.0};
    idle.quality = {0.0, 0.0};
    idle.weights_used = {1.0, 1.0};
    CHECK(welfare(s, idle) == 0.0);

    Allocation wrong;
    wrong.effort = {1.0};
    wrong.quality = {1.0};
    CHECK_THROWS_WITH_AS(welfare(s, wrong), doctest::Contains("shape"), Error);
}

TEST_CASE("alignment loss matches the closed form on the sqrt fixture") {
    const auto s = sqrt_scenario(2, 1, 0.5, {1.0, 1.0}, {1.0});
    const auto result = alignment_loss(s);
    const double expected = 2.0 * std::sqrt(0.5) - (std::sqrt(0.8) + std::sqrt(0.2));
    CHECK(result.loss == doctest::Approx(expected).epsilon(1e-9));
    CHECK(std::abs(result.loss - 0.072573) <= 1e-6);
    CHECK(result.loss >= 0.0);
}

TEST_CASE("alignment loss vanishes with the alignment gap") {
    const auto s = sqrt_scenario(2, 1, 1e-9, {1.0, 1.0}, {1.0});
    CHECK(alignment_loss(s).loss <= 1e-6);
}

TEST_CASE("alignment loss follows the uniform closed form across lambda") {
    for (double lambda : {0.1, 0.3, 0.6, 0.9}) {
        const auto s = sqrt_scenario(4, 2, lambda, {1, 1, 1, 1}, {1, 1});
        CHECK(alignment_loss(s).loss ==
              doctest::Approx(closed::uniform_loss(4, 2, lambda, 1.0)).epsilon(1e-9));
    }
    // spot value at lambda = 0.6
    const auto s = sqrt_scenario(4, 2, 0.6, {1, 1, 1, 1}, {1, 1});
    CHECK(alignment_loss(s).loss == doctest::Approx(0.16170994).epsilon(1e-6));
}

TEST_CASE("alignment loss is strictly positive at interior optima, never negative") {
    auto rng = testgen::Rng{523};
    for (int trial = 0; trial < 100; ++trial) {
        CHECK(alignment_loss(testgen::random_scenario(rng, {.inada_only = true})).loss > 0.0);
        // corner scenarios can collapse onto the first-best, so only >= 0 holds
        CHECK(alignment_loss(testgen::random_scenario(rng)).loss >= 0.0);
    }
}

TEST_CASE("assess classifies and ranks dimensions") {
    const auto over = assess(sqrt_scenario(2, 1, 0.25, {1.0, 1.0}, {2.0}));
    CHECK(over.dimensions[0].classification == DimensionClass::over_investment);
    CHECK(over.dimensions[0].distortion == doctest::Approx(1.25));
    CHECK(over.dimensions[0].rank == 1);
    CHECK(over.dimensions[1].classification == DimensionClass::max_vulnerable);
    CHECK(over.dimensions[1].distortion == doctest::Approx(0.75));
    CHECK(over.dimensions[1].rank == 2);

    const auto aligned = assess(sqrt_scenario(2, 1, 0.5, {1.0, 1.0}, {1.0}));
    CHECK(aligned.dimensions[0].classification == DimensionClass::aligned);
    CHECK(aligned.dimensions[1].classification == DimensionClass::max_vulnerable);

    const auto mixed = assess(sqrt_scenario(3, 2, 0.5, {1, 1, 1}, {0.5, 2.0}));
    CHECK(mixed.dimensions[0].classification == DimensionClass::under_investment);
    CHECK(mixed.dimensions[0].distortion == doctest::Approx(0.75));
    CHECK(mixed.dimensions[1].classification == DimensionClass::over_investment);
    CHECK(mixed.dimensions[1].distortion == doctest::Approx(1.5));
    CHECK(mixed.dimensions[2].classification == DimensionClass::max_vulnerable);
    CHECK(mixed.dimensions[2].distortion == doctest::Approx(0.5));
    CHECK(mixed.dimensions[0].rank == 2);
    CHECK(mixed.dimensions[1].rank == 1);
    CHECK(mixed.dimensions[2].rank == 3);
}

TEST_CASE("assess ranks are a permutation with stable tie-breaking") {
    auto rng = testgen::Rng{31};
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = testgen::random_scenario(rng);
        const auto report = assess(s);
        std::vector<int> seen(report.dimensions.size(), 0);
        for (const auto& d : report.dimensions) {
            REQUIRE(d.rank >= 1);
            REQUIRE(d.rank <= static_cast<int>(report.dimensions.size()));
            seen[static_cast<std::size_t>(d.rank - 1)] += 1;
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
        // uncovered dims share 1-lambda and keep dimension order among ties
        for (std::size_t i = s.coverage_k; i + 1 < report.dimensions.size(); ++i) {
            CHECK(report.dimensions[i].rank < report.dimensions[i + 1].rank);
        }
    }
}

TEST_CASE("under symmetric production the distortion order is the effort order") {
    auto rng = testgen::Rng{37};
    int tested = 0;
    while (tested < 150) {
        const auto s = testgen::random_scenario(rng, {.symmetric = true});
        const auto d = distortion_index(s);
        const auto covered = static_cast<std::size_t>(s.coverage_k);
        bool gapped = true;
        for (std::size_t i = 0; i < d.size() && gapped; ++i) {
            for (std::size_t j = i + 1; j < d.size(); ++j) {
                const bool both_uncovered = i >= covered && j >= covered;
                if (!both_uncovered && std::abs(d[i] - d[j]) < 1e-6) {
                    gapped = false;
                    break;
                }
            }
        }
        if (!gapped) continue;
        ++tested;
        const auto agent = solve_agent(s);
        const auto fb = solve_first_best(s);
        double top = d[0];
        for (double x : d) top = std::max(top, x);
        for (std::size_t i = 0; i < d.size(); ++i) {
            for (std::size_t j = 0; j < d.size(); ++j) {
                if (d[i] > d[j] + 1e-6) {
                    // strict at interior optima; corners can tie at zero
                    if (agent.effort[j] > 0.0 ||
                        s.production[i].family == ProductionFamily::power) {
                        CHECK(agent.effort[i] > agent.effort[j]);
                    } else {
                        CHECK(agent.effort[i] >= agent.effort[j]);
                    }
                }
            }
            // The budget pins down which side of the first-best a dimension
            // lands on: the top-distortion dimension gains, every uncovered
            // dimension (the shared minimum) loses. D vs 1 alone does not
            // decide it; see the pivot counterexample test below.
            if (d[i] == top) {
                CHECK(agent.effort[i] > fb.effort[i] - 1e-9);
            }
            if (i >= covered) {
                CHECK(agent.effort[i] < fb.effort[i] + 1e-9);
            }
            CHECK((d[i] > 1.0) == (i < covered &&
                                   s.reward_weights[i] > s.weights[i]));
        }
    }
}

TEST_CASE("a mildly under-rewarded covered dimension can still over-invest") {
    // With one covered dimension, its blended weight always exceeds the
    // uncovered floor, so it draws extra budget even when D < 1. The
    // distortion index ranks dimensions; it does not fix the sign of
    // e* - e^FB per dimension under a hard budget.
    const auto s = sqrt_scenario(2, 1, 0.5, {1.0, 1.0}, {0.9});
    const auto d = distortion_index(s);
    CHECK(d[0] == doctest::Approx(0.95));  // under-rewarded: r < w
    const auto agent = solve_agent(s);
    const auto fb = solve_first_best(s);
    CHECK(agent.effort[0] > fb.effort[0]);  // yet effort rises above first-best
    CHECK(agent.effort[1] < fb.effort[1]);
    CHECK(agent.effort[0] == doctest::Approx(0.9025 / 1.1525).epsilon(1e-9));

    // same verdict from the exhaustive grid, independent of the bisection path
    const auto grid = oracle_grid_solve(effective_weights(s), s.production, s.budget, 401);
    CHECK(grid.effort[0] > 0.6);
}

TEST_CASE("complementarity grid reproduces the uniform closed form") {
    const auto base = sqrt_scenario(4, 1, 0.5, {1, 1, 1, 1}, {1.0});
    const auto grid = complementarity_grid(base, {1, 2}, {0.3, 0.6});

    REQUIRE(grid.k_values == std::vector<int>{2, 1});  // kappa ascending
    CHECK(grid.kappa_values[0] == doctest::Approx(0.5));
    CHECK(grid.kappa_values[1] == doctest::Approx(0.75));

    CHECK(grid.loss[0][0] == doctest::Approx(closed::uniform_loss(4, 2, 0.3, 1.0)).epsilon(1e-9));
    CHECK(grid.loss[0][1] == doctest::Approx(closed::uniform_loss(4, 2, 0.6, 1.0)).epsilon(1e-9));
    CHECK(grid.loss[1][0] == doctest::Approx(closed::uniform_loss(4, 1, 0.3, 1.0)).epsilon(1e-9));
    CHECK(grid.loss[1][1] == doctest::Approx(closed::uniform_loss(4, 1, 0.6, 1.0)).epsilon(1e-9));

    REQUIRE(grid.mixed_difference.size() == 1);
    REQUIRE(grid.mixed_difference[0].size() == 1);
    const double expected = (closed::uniform_loss(4, 1, 0.6, 1.0) - closed::uniform_loss(4, 2, 0.6, 1.0)) -
                            (closed::uniform_loss(4, 1, 0.3, 1.0) - closed::uniform_loss(4, 2, 0.3, 1.0));
    CHECK(grid.mixed_difference[0][0] == doctest::Approx(expected).epsilon(1e-9));
    CHECK(grid.mixed_difference[0][0] > 0.0);
}

TEST_CASE("complementarity loss row collapses as lambda vanishes") {
    const auto base = sqrt_scenario(4, 1, 0.5, {1, 1, 1, 1}, {1.0});
    const auto grid = complementarity_grid(base, {1, 3}, {1e-9, 0.5});
    CHECK(grid.loss[0][0] <= 1e-12);
    CHECK(grid.loss[1][0] <= 1e-12);
}

TEST_CASE("complementarity grid rejects degenerate axes") {
    const auto base = sqrt_scenario(4, 1, 0.5, {1, 1, 1, 1}, {1.0});
    CHECK_THROWS_WITH_AS(complementarity_grid(base, {1}, {0.3, 0.6}),
                         doctest::Contains("grid"), Error);
    CHECK_THROWS_WITH_AS(complementarity_grid(base, {1, 2}, {0.3}),
                         doctest::Contains("grid"), Error);
}
