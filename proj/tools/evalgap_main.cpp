// evalgap command-line front end: loads JSON scenario/config documents, runs
// the requested computation and emits CSV or JSON. Exit codes: 0 success,
// 1 check failure (oracle tolerance breach, GARP violation), 2 input error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "evalgap/amplification.hpp"
#include "evalgap/analysis.hpp"
#include "evalgap/campbell.hpp"
#include "evalgap/garp.hpp"
#include "evalgap/io.hpp"
#include "evalgap/solver.hpp"

namespace {

using namespace evalgap;

struct CommonArgs {
    std::string format = "csv";
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
};

io::Format parse_format(const std::string& name) {
    if (name == "csv") return io::Format::csv;
    if (name == "json") return io::Format::json;
    throw Error("format", "unknown format \"" + name + "\" (use csv or json)");
}

void add_common(CLI::App* cmd, CommonArgs& args, const char* default_format) {
    args.format = default_format;
    cmd->add_option("--format", args.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", args.out, "Write output to this file instead of stdout");
    cmd->add_option("--seed", args.seed, "Seed recorded in the output metadata");
}

template <typename Result>
void emit(const Result& result, const CommonArgs& args) {
    io::RenderOptions opt;
    opt.seed = args.seed;
    std::optional<std::filesystem::path> destination;
    if (args.out) destination = *args.out;
    io::write_output(io::render(result, parse_format(args.format), opt), destination);
}

int run_oracle_check(const std::string& scenario_file, int grid_points, double tolerance,
                     const CommonArgs& args) {
    const auto s = io::load_scenario(scenario_file);
    const auto blended = effective_weights(s);

    struct Row {
        const char* problem;
        Allocation exact;
        Allocation grid;
    };
    Row rows[] = {
        {"first_best", solve_first_best(s),
         oracle_grid_solve(s.weights, s.production, s.budget, grid_points)},
        {"agent", solve_agent(s),
         oracle_grid_solve(blended, s.production, s.budget, grid_points)},
    };

    bool ok = true;
    std::string text;
    text += "problem,value_solver,value_oracle,delta,tolerance,ok\n";
    for (const auto& row : rows) {
        const double delta = std::abs(row.exact.objective_value - row.grid.objective_value);
        const bool row_ok =
            delta <= tolerance && row.exact.objective_value >= row.grid.objective_value - 1e-12;
        ok = ok && row_ok;
        text += std::string(row.problem) + "," + io::format_number(row.exact.objective_value) +
                "," + io::format_number(row.grid.objective_value) + "," +
                io::format_number(delta) + "," + io::format_number(tolerance) + "," +
                (row_ok ? "true" : "false") + "\n";
    }
    if (args.seed) text += "# seed=" + std::to_string(*args.seed) + "\n";
    std::optional<std::filesystem::path> destination;
    if (args.out) destination = *args.out;
    io::write_output(text, destination);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-task principal-agent equilibria, distortion diagnostics and "
                 "coverage-collapse experiments"};
    app.require_subcommand(1);

    // solve
    std::string scenario_file;
    bool first_best = false;
    CommonArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve the agent (or first-best) allocation");
    solve_cmd->add_option("--scenario", scenario_file, "Scenario JSON file")->required();
    solve_cmd->add_flag("--first-best", first_best, "Solve with the principal's weights");
    add_common(solve_cmd, solve_args, "csv");

    // assess
    std::string assess_file;
    CommonArgs assess_args;
    auto* assess_cmd = app.add_subcommand("assess", "Rank dimensions by distortion index");
    assess_cmd->add_option("--scenario", assess_file, "Scenario JSON file")->required();
    add_common(assess_cmd, assess_args, "json");

    // loss
    std::string loss_file;
    CommonArgs loss_args;
    auto* loss_cmd = app.add_subcommand("loss", "Alignment loss and both allocations");
    loss_cmd->add_option("--scenario", loss_file, "Scenario JSON file")->required();
    add_common(loss_cmd, loss_args, "json");

    // sweep-t
    std::string sweep_file;
    bool with_loss = false;
    CommonArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep-t", "Coverage collapse across tool counts");
    sweep_cmd->add_option("--config", sweep_file, "Sweep config JSON file")->required();
    sweep_cmd->add_flag("--with-loss", with_loss, "Attach synthetic alignment loss per row");
    add_common(sweep_cmd, sweep_args, "csv");

    // complementarity
    std::string comp_file;
    std::vector<int> k_values;
    std::vector<double> lambda_values;
    CommonArgs comp_args;
    auto* comp_cmd =
        app.add_subcommand("complementarity", "Loss grid and mixed differences over (kappa, lambda)");
    comp_cmd->add_option("--scenario", comp_file, "Template scenario JSON file")->required();
    comp_cmd->add_option("--k-values", k_values, "Coverage values")->required()->delimiter(',');
    comp_cmd->add_option("--lambda-values", lambda_values, "Alignment gap values")
        ->required()
        ->delimiter(',');
    add_common(comp_cmd, comp_args, "csv");

    // campbell
    std::string campbell_file;
    CommonArgs campbell_args;
    auto* campbell_cmd =
        app.add_subcommand("campbell", "Manipulation best responses and threshold scan");
    campbell_cmd->add_option("--config", campbell_file, "Campbell config JSON file")->required();
    add_common(campbell_cmd, campbell_args, "json");

    // garp
    std::string garp_file;
    CommonArgs garp_args;
    auto* garp_cmd = app.add_subcommand("garp", "Rationalizability check on observed bundles");
    garp_cmd->add_option("--observations", garp_file, "Observations JSON file")->required();
    add_common(garp_cmd, garp_args, "json");

    // oracle-check
    std::string oracle_file;
    int grid_points = 401;
    double tolerance = 5e-3;
    CommonArgs oracle_args;
    auto* oracle_cmd =
        app.add_subcommand("oracle-check", "Compare the solver against the grid oracle");
    oracle_cmd->add_option("--scenario", oracle_file, "Scenario JSON file")->required();
    oracle_cmd->add_option("--grid-points", grid_points, "Grid points per dimension");
    oracle_cmd->add_option("--tolerance", tolerance, "Absolute value tolerance");
    add_common(oracle_cmd, oracle_args, "csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) {
            const auto s = io::load_scenario(scenario_file);
            emit(first_best ? solve_first_best(s) : solve_agent(s), solve_args);
        } else if (assess_cmd->parsed()) {
            emit(assess(io::load_scenario(assess_file)), assess_args);
        } else if (loss_cmd->parsed()) {
            emit(alignment_loss(io::load_scenario(loss_file)), loss_args);
        } else if (sweep_cmd->parsed()) {
            const auto doc = io::load_sweep_config(sweep_file);
            emit(amplification_sweep(doc.config, with_loss, doc.loss_template), sweep_args);
        } else if (comp_cmd->parsed()) {
            const auto s = io::load_scenario(comp_file);
            emit(complementarity_grid(s, k_values, lambda_values), comp_args);
        } else if (campbell_cmd->parsed()) {
            const auto doc = io::load_campbell_config(campbell_file);
            emit(threshold_scan(doc.budget_grid, doc.config), campbell_args);
        } else if (garp_cmd->parsed()) {
            const auto verdict = check_garp(io::load_observations(garp_file));
            emit(verdict, garp_args);
            return verdict.consistent ? 0 : 1;
        } else if (oracle_cmd->parsed()) {
            return run_oracle_check(oracle_file, grid_points, tolerance, oracle_args);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
