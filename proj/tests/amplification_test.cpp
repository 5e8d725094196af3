#include "evalgap/amplification.hpp"

#include <cmath>

#include "doctest.h"
#include "support/closed_forms.hpp"

using namespace evalgap;

namespace {

AmplificationConfig linear_ten(long long t_min = 2, long long t_max = 100) {
    AmplificationConfig cfg;
    cfg.alpha = 1.0;
    cfg.unit_cost = 1.0;
    cfg.cost = {CostFamily::linear, 0.0, 10.0, 1.0, 1.0};
    cfg.t_min = t_min;
    cfg.t_max = t_max;
    return cfg;
}

}  // namespace

TEST_CASE("dimension count adds one dimension per interacting tool pair") {
    CHECK(dimension_count(3, 1.0) == 6);
    CHECK(dimension_count(2, 0.5) == 3);  // ceil keeps the inequality
    CHECK(dimension_count(100, 1.0) == 5050);
    CHECK(dimension_count(10000, 1.0) == 50005000);
    CHECK_THROWS_WITH_AS(dimension_count(1, 1.0), doctest::Contains("axiom5_domain"), Error);
}

TEST_CASE("coverage count is spend-limited and capped at the dimension count") {
    CHECK(coverage_count(100, linear_ten()) == 1000);

    AmplificationConfig quad = linear_ten();
    quad.cost = {CostFamily::quadratic, 0.0, 1.0, 1.0, 1.0};
    CHECK(coverage_count(10, quad) == 55);  // cap binds: N(10) = 55 < 100

    AmplificationConfig tiny = linear_ten();
    tiny.cost = {CostFamily::linear, 0.5, 1e-12, 1.0, 1.0};
    CHECK(coverage_count(7, tiny) == 0);  // floor(~0.5) = 0
}

TEST_CASE("sweep rows carry the collapse arithmetic") {
    const auto series = amplification_sweep(linear_ten(2, 1000), false);
    const auto& at100 = series.rows[98];
    CHECK(at100.tool_count == 100);
    CHECK(at100.coverage_ratio == doctest::Approx(0.198020).epsilon(1e-6));
    const auto& at1000 = series.rows[998];
    CHECK(at1000.coverage_ratio == doctest::Approx(0.019980).epsilon(1e-5));
    CHECK(at1000.kappa == doctest::Approx(1.0 - 10000.0 / 500500.0).epsilon(1e-12));
}

TEST_CASE("every row respects the dimension lower bound") {
    AmplificationConfig cfg = linear_ten(2, 200);
    cfg.alpha = 0.37;
    const auto series = amplification_sweep(cfg, false);
    for (const auto& row : series.rows) {
        const double t = static_cast<double>(row.tool_count);
        CHECK(static_cast<double>(row.n_dims) >= t + cfg.alpha * t * (t - 1.0) / 2.0);
        CHECK(row.coverage_k >= 0);
        CHECK(row.coverage_k <= row.n_dims);
        CHECK(row.kappa == doctest::Approx(1.0 - row.coverage_ratio).epsilon(1e-12));
    }
}

TEST_CASE("sub-quadratic evaluation spend collapses coverage") {
    const auto series = amplification_sweep(linear_ten(2, 10000), false);
    double previous = 1.0;
    for (const auto& row : series.rows) {
        if (row.tool_count >= 1000) {
            CHECK(row.coverage_ratio <= 0.02);
            CHECK(row.coverage_ratio < previous);
        }
        if (row.tool_count >= 999) previous = row.coverage_ratio;
    }
    CHECK(series.rows.back().kappa >= 0.997);

    AmplificationConfig power = linear_ten(2, 3000);
    power.cost = {CostFamily::power, 0.0, 5.0, 1.5, 1.0};
    const auto power_series = amplification_sweep(power, false);
    CHECK(power_series.rows.back().coverage_ratio <
          power_series.rows[100].coverage_ratio);
}

TEST_CASE("quadratic evaluation spend escapes the collapse") {
    AmplificationConfig quad = linear_ten(2, 1000);
    quad.cost = {CostFamily::quadratic, 0.0, 1.0, 1.0, 1.0};
    auto series = amplification_sweep(quad, false);
    CHECK(series.rows.back().coverage_ratio >= 0.99);

    quad.cost.c2 = 0.5;  // still >= alpha/2
    series = amplification_sweep(quad, false);
    CHECK(series.rows.back().coverage_ratio >= 0.99);
}

TEST_CASE("synthetic loss matches the uniform closed form and trends upward") {
    auto cfg = linear_ten(4, 40);
    const LossTemplate tpl{0.5, 1.0};
    const auto series = amplification_sweep(cfg, true, tpl);
    REQUIRE(series.loss_template.has_value());
    for (const auto& row : series.rows) {
        REQUIRE(row.synthetic_loss.has_value());
        CHECK(*row.synthetic_loss ==
              doctest::Approx(closed::uniform_loss(row.n_dims, row.coverage_k, tpl.alignment_gap,
                                                   tpl.budget))
                  .epsilon(1e-9));
    }
    for (std::size_t i = 0; i + 1 < series.rows.size(); ++i) {
        if (series.rows[i + 1].coverage_ratio < series.rows[i].coverage_ratio) {
            CHECK(*series.rows[i + 1].synthetic_loss >= *series.rows[i].synthetic_loss - 1e-9);
        }
    }
}

TEST_CASE("loss sweeps refuse oversized dimension counts") {
    CHECK_THROWS_WITH_AS(amplification_sweep(linear_ten(2, 1000), true),
                         doctest::Contains("sweep_budget"), Error);
}

TEST_CASE("config validation rejects bad families and ranges") {
    AmplificationConfig cfg = linear_ten();
    cfg.alpha = 0.0;
    CHECK(!validate_config(cfg).empty());
    cfg = linear_ten();
    cfg.cost.family = CostFamily::power;
    cfg.cost.gamma = 2.0;  // must stay sub-quadratic
    CHECK(!validate_config(cfg).empty());
    cfg = linear_ten();
    cfg.t_min = 1;
    CHECK(!validate_config(cfg).empty());
}
