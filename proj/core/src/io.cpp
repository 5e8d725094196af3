#include "evalgap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace evalgap::io {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSpoofModelNote =
    "sigma(B)=s0*B^beta replaces measured quality on the degraded share of coverage";

ordered_json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw Error("io", "cannot read " + file.string());
    }
    ordered_json doc = ordered_json::parse(in, nullptr, false);
    if (doc.is_discarded()) {
        throw Error("schema", file.string() + " is not valid JSON");
    }
    return doc;
}

const ordered_json& require(const ordered_json& doc, const std::string& key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw Error("schema:" + key, "missing key");
    }
    return *it;
}

double require_number(const ordered_json& doc, const std::string& key) {
    const auto& node = require(doc, key);
    if (!node.is_number()) {
        throw Error("schema_type:" + key, "expected a number");
    }
    return node.get<double>();
}

long long require_integer(const ordered_json& doc, const std::string& key) {
    const auto& node = require(doc, key);
    if (!node.is_number_integer()) {
        throw Error("schema_type:" + key, "expected an integer");
    }
    return node.get<long long>();
}

std::vector<double> require_number_array(const ordered_json& doc, const std::string& key) {
    const auto& node = require(doc, key);
    if (!node.is_array()) {
        throw Error("schema_type:" + key, "expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto& x : node) {
        if (!x.is_number()) {
            throw Error("schema_type:" + key, "expected an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

ProductionFunction parse_production(const ordered_json& node, const std::string& key) {
    if (!node.is_object()) {
        throw Error("schema_type:" + key, "expected an object");
    }
    const auto& family = require(node, "family");
    if (!family.is_string()) {
        throw Error("schema_type:family", "expected \"power\" or \"log\"");
    }
    const std::string name = family.get<std::string>();
    if (name == "power") {
        return ProductionFunction::power(require_number(node, "a"), require_number(node, "p"));
    }
    if (name == "log") {
        return ProductionFunction::log(require_number(node, "a"));
    }
    throw Error("schema_type:family", "unknown production family \"" + name + "\"");
}

std::vector<ProductionFunction> parse_production_array(const ordered_json& doc) {
    const auto& node = require(doc, "production");
    if (!node.is_array()) {
        throw Error("schema_type:production", "expected an array");
    }
    std::vector<ProductionFunction> out;
    for (const auto& entry : node) {
        out.push_back(parse_production(entry, "production"));
    }
    return out;
}

Scenario parse_scenario_fields(const ordered_json& doc, bool with_budget) {
    Scenario s;
    s.n_dims = static_cast<int>(require_integer(doc, "n_dims"));
    s.weights = require_number_array(doc, "weights");
    s.coverage_k = static_cast<int>(require_integer(doc, "coverage_k"));
    s.reward_weights = require_number_array(doc, "reward_weights");
    s.alignment_gap = require_number(doc, "lambda");
    if (with_budget) s.budget = require_number(doc, "budget");
    s.production = parse_production_array(doc);
    return s;
}

CostModel parse_cost_model(const ordered_json& doc) {
    const auto& node = require(doc, "cost_family");
    if (!node.is_object()) {
        throw Error("schema_type:cost_family", "expected an object");
    }
    const auto& kind = require(node, "kind");
    if (!kind.is_string()) {
        throw Error("schema_type:kind", "expected \"linear\", \"power\" or \"quadratic\"");
    }
    CostModel cost;
    const std::string name = kind.get<std::string>();
    if (name == "linear") {
        cost.family = CostFamily::linear;
        cost.c0 = node.contains("c0") ? require_number(node, "c0") : 0.0;
        cost.c1 = require_number(node, "c1");
    } else if (name == "power") {
        cost.family = CostFamily::power;
        cost.c1 = require_number(node, "c1");
        cost.gamma = require_number(node, "gamma");
    } else if (name == "quadratic") {
        cost.family = CostFamily::quadratic;
        cost.c2 = require_number(node, "c2");
    } else {
        throw Error("schema_type:kind", "unknown cost family \"" + name + "\"");
    }
    return cost;
}

ordered_json production_to_json(const ProductionFunction& g) {
    ordered_json node;
    if (g.family == ProductionFamily::power) {
        node["family"] = "power";
        node["a"] = g.scale;
        node["p"] = g.exponent;
    } else {
        node["family"] = "log";
        node["a"] = g.scale;
    }
    return node;
}

// Round through the 9-significant-digit rendering so JSON output matches the
// CSV precision contract.
double g9(double x) {
    return std::stod(format_number(x));
}

std::string fingerprint_hex(std::uint64_t fp) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(fp));
    return buf;
}

void attach_meta(ordered_json& doc, const RenderOptions& opt, bool spoof_note = false) {
    ordered_json meta;
    if (opt.seed) meta["seed"] = *opt.seed;
    if (spoof_note) meta["spoof_model"] = kSpoofModelNote;
    if (!meta.empty()) doc["meta"] = std::move(meta);
}

std::string dump(const ordered_json& doc) {
    return doc.dump(2) + "\n";
}

void csv_seed_trailer(std::ostringstream& out, const RenderOptions& opt) {
    if (opt.seed) out << "# seed=" << *opt.seed << "\n";
}

ordered_json allocation_to_json(const Allocation& alloc) {
    ordered_json doc;
    doc["objective_value"] = g9(alloc.objective_value);
    doc["mu"] = g9(alloc.multiplier);
    ordered_json dims = ordered_json::array();
    for (std::size_t i = 0; i < alloc.effort.size(); ++i) {
        ordered_json row;
        row["dim"] = i + 1;
        row["effort"] = g9(alloc.effort[i]);
        row["quality"] = g9(alloc.quality[i]);
        row["weight_used"] = g9(alloc.weights_used[i]);
        dims.push_back(std::move(row));
    }
    doc["dimensions"] = std::move(dims);
    return doc;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& file) {
    return validated(parse_scenario_fields(load_json(file), /*with_budget=*/true));
}

void save_scenario(const Scenario& s, const std::filesystem::path& file) {
    // Full-precision doubles so load(save(s)) reproduces every field exactly.
    ordered_json doc;
    doc["n_dims"] = s.n_dims;
    doc["weights"] = s.weights;
    doc["coverage_k"] = s.coverage_k;
    doc["reward_weights"] = s.reward_weights;
    doc["lambda"] = s.alignment_gap;
    doc["budget"] = s.budget;
    ordered_json production = ordered_json::array();
    for (const auto& g : s.production) production.push_back(production_to_json(g));
    doc["production"] = std::move(production);
    write_output(dump(doc), file);
}

SweepDocument load_sweep_config(const std::filesystem::path& file) {
    const auto doc = load_json(file);
    SweepDocument out;
    out.config.alpha = require_number(doc, "alpha");
    out.config.unit_cost = require_number(doc, "unit_cost");
    out.config.cost = parse_cost_model(doc);
    out.config.t_min = require_integer(doc, "t_min");
    out.config.t_max = require_integer(doc, "t_max");
    if (doc.contains("loss_template")) {
        const auto& node = doc.at("loss_template");
        if (!node.is_object()) {
            throw Error("schema_type:loss_template", "expected an object");
        }
        out.loss_template = LossTemplate{require_number(node, "lambda"),
                                         require_number(node, "budget")};
    }
    if (auto violations = validate_config(out.config); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    return out;
}

CampbellDocument load_campbell_config(const std::filesystem::path& file) {
    const auto doc = load_json(file);
    CampbellDocument out;
    const Scenario base = parse_scenario_fields(doc, /*with_budget=*/false);
    out.config.n_dims = base.n_dims;
    out.config.base_coverage = base.coverage_k;
    out.config.weights = base.weights;
    out.config.reward_weights = base.reward_weights;
    out.config.alignment_gap = base.alignment_gap;
    out.config.production = base.production;
    out.config.degradation_rate = require_number(doc, "gamma");
    out.config.spoof_scale = require_number(doc, "spoof_scale");
    out.config.spoof_exponent = require_number(doc, "spoof_exponent");
    if (doc.contains("passive_delta")) {
        out.config.passive_delta = require_number(doc, "passive_delta");
    }

    const auto& grid = require(doc, "b_grid");
    if (grid.is_array()) {
        for (const auto& x : grid) {
            if (!x.is_number()) throw Error("schema_type:b_grid", "expected numbers");
            out.budget_grid.push_back(x.get<double>());
        }
    } else if (grid.is_object()) {
        const double lo = require_number(grid, "min");
        const double hi = require_number(grid, "max");
        const long long points = require_integer(grid, "points");
        std::string spacing = "log";
        if (grid.contains("spacing")) {
            if (!grid.at("spacing").is_string()) {
                throw Error("schema_type:spacing", "expected \"log\" or \"linear\"");
            }
            spacing = grid.at("spacing").get<std::string>();
        }
        if (points < 2 || !(lo > 0.0) || !(hi > lo)) {
            throw Error("schema_type:b_grid", "need 0 < min < max and points >= 2");
        }
        for (long long i = 0; i < points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(points - 1);
            out.budget_grid.push_back(spacing == "linear" ? lo + t * (hi - lo)
                                                          : lo * std::pow(hi / lo, t));
        }
    } else {
        throw Error("schema_type:b_grid", "expected an array or a range object");
    }

    if (auto violations = validate_config(out.config); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    return out;
}

ObservationSet load_observations(const std::filesystem::path& file) {
    const auto doc = load_json(file);
    if (!doc.is_array()) {
        throw Error("schema_type:observations", "expected a JSON array");
    }
    ObservationSet obs;
    for (const auto& entry : doc) {
        Observation o;
        o.prices = require_number_array(entry, "prices");
        o.bundle = require_number_array(entry, "bundle");
        obs.observations.push_back(std::move(o));
    }
    if (auto violations = validate_observations(obs); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    return obs;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

std::string render(const Allocation& alloc, Format format, const RenderOptions& opt) {
    if (format == Format::json) {
        ordered_json doc = allocation_to_json(alloc);
        attach_meta(doc, opt);
        return dump(doc);
    }
    std::ostringstream out;
    out << "dim,effort,quality,weight_used\n";
    for (std::size_t i = 0; i < alloc.effort.size(); ++i) {
        out << (i + 1) << ',' << format_number(alloc.effort[i]) << ','
            << format_number(alloc.quality[i]) << ','
            << format_number(alloc.weights_used[i]) << "\n";
    }
    out << "# mu=" << format_number(alloc.multiplier) << "\n";
    csv_seed_trailer(out, opt);
    return out.str();
}

std::string render(const VulnerabilityReport& report, Format format,
                   const RenderOptions& opt) {
    std::vector<const DimensionAssessment*> by_rank;
    for (const auto& d : report.dimensions) by_rank.push_back(&d);
    std::sort(by_rank.begin(), by_rank.end(),
              [](const auto* a, const auto* b) { return a->rank < b->rank; });

    if (format == Format::json) {
        ordered_json doc;
        doc["fingerprint"] = fingerprint_hex(report.fingerprint);
        ordered_json dims = ordered_json::array();
        for (const auto* d : by_rank) {
            ordered_json row;
            row["dim"] = d->dimension;
            row["distortion"] = g9(d->distortion);
            row["contractible"] = d->contractible;
            row["classification"] = to_string(d->classification);
            row["rank"] = d->rank;
            dims.push_back(std::move(row));
        }
        doc["dimensions"] = std::move(dims);
        attach_meta(doc, opt);
        return dump(doc);
    }
    std::ostringstream out;
    out << "dim,distortion,contractible,classification,rank\n";
    for (const auto* d : by_rank) {
        out << d->dimension << ',' << format_number(d->distortion) << ','
            << (d->contractible ? "true" : "false") << ',' << to_string(d->classification)
            << ',' << d->rank << "\n";
    }
    out << "# fingerprint=" << fingerprint_hex(report.fingerprint) << "\n";
    csv_seed_trailer(out, opt);
    return out.str();
}

std::string render(const AlignmentLoss& loss, Format format, const RenderOptions& opt) {
    if (format == Format::json) {
        ordered_json doc;
        doc["loss"] = g9(loss.loss);
        doc["welfare_first_best"] = g9(loss.welfare_first_best);
        doc["welfare_agent"] = g9(loss.welfare_agent);
        doc["first_best"] = allocation_to_json(loss.first_best);
        doc["agent"] = allocation_to_json(loss.agent);
        attach_meta(doc, opt);
        return dump(doc);
    }
    std::ostringstream out;
    out << "dim,effort_first_best,effort_agent,quality_first_best,quality_agent\n";
    for (std::size_t i = 0; i < loss.first_best.effort.size(); ++i) {
        out << (i + 1) << ',' << format_number(loss.first_best.effort[i]) << ','
            << format_number(loss.agent.effort[i]) << ','
            << format_number(loss.first_best.quality[i]) << ','
            << format_number(loss.agent.quality[i]) << "\n";
    }
    out << "# loss=" << format_number(loss.loss) << "\n";
    out << "# welfare_first_best=" << format_number(loss.welfare_first_best) << "\n";
    out << "# welfare_agent=" << format_number(loss.welfare_agent) << "\n";
    csv_seed_trailer(out, opt);
    return out.str();
}

std::string render(const AmplificationSeries& series, Format format,
                   const RenderOptions& opt) {
    if (format == Format::json) {
        ordered_json doc;
        ordered_json rows = ordered_json::array();
        for (const auto& r : series.rows) {
            ordered_json row;
            row["T"] = r.tool_count;
            row["N"] = r.n_dims;
            row["K"] = r.coverage_k;
            row["kappa"] = g9(r.kappa);
            row["ratio"] = g9(r.coverage_ratio);
            row["loss"] = r.synthetic_loss ? ordered_json(g9(*r.synthetic_loss))
                                           : ordered_json(nullptr);
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        if (series.loss_template) {
            doc["loss_template"] = {{"lambda", g9(series.loss_template->alignment_gap)},
                                    {"budget", g9(series.loss_template->budget)}};
        }
        attach_meta(doc, opt);
        return dump(doc);
    }
    std::ostringstream out;
    out << "T,N,K,kappa,ratio,loss\n";
    for (const auto& r : series.rows) {
        out << r.tool_count << ',' << r.n_dims << ',' << r.coverage_k << ','
            << format_number(r.kappa) << ',' << format_number(r.coverage_ratio) << ',';
        if (r.synthetic_loss) out << format_number(*r.synthetic_loss);
        out << "\n";
    }
    csv_seed_trailer(out, opt);
    return out.str();
}

std::string render(const ComplementarityGrid& grid, Format format,
                   const RenderOptions& opt) {
    if (format == Format::json) {
        ordered_json doc;
        doc["k_values"] = grid.k_values;
        ordered_json kappas = ordered_json::array();
        for (double k : grid.kappa_values) kappas.push_back(g9(k));
        doc["kappa_values"] = std::move(kappas);
        ordered_json lambdas = ordered_json::array();
        for (double l : grid.lambda_values) lambdas.push_back(g9(l));
        doc["lambda_values"] = std::move(lambdas);
        ordered_json loss = ordered_json::array();
        for (const auto& row : grid.loss) {
            ordered_json r = ordered_json::array();
            for (double x : row) r.push_back(g9(x));
            loss.push_back(std::move(r));
        }
        doc["loss"] = std::move(loss);
        ordered_json mixed = ordered_json::array();
        for (const auto& row : grid.mixed_difference) {
            ordered_json r = ordered_json::array();
            for (double x : row) r.push_back(g9(x));
            mixed.push_back(std::move(r));
        }
        doc["mixed_difference"] = std::move(mixed);
        attach_meta(doc, opt);
        return dump(doc);
    }
    std::ostringstream out;
    out << "k,kappa,lambda,loss\n";
    for (std::size_t a = 0; a < grid.kappa_values.size(); ++a) {
        for (std::size_t b = 0; b < grid.lambda_values.size(); ++b) {
            out << grid.k_values[a] << ',' << format_number(grid.kappa_values[a]) << ','
                << format_number(grid.lambda_values[b]) << ','
                << format_number(grid.loss[a][b]) << "\n";
        }
    }
    for (std::size_t a = 0; a < grid.mixed_difference.size(); ++a) {
        for (std::size_t b = 0; b < grid.mixed_difference[a].size(); ++b) {
            out << "# mixed_difference kappa=(" << format_number(grid.kappa_values[a])
                << ',' << format_number(grid.kappa_values[a + 1]) << ") lambda=("
                << format_number(grid.lambda_values[b]) << ','
                << format_number(grid.lambda_values[b + 1])
                << ") value=" << format_number(grid.mixed_difference[a][b]) << "\n";
        }
    }
    csv_seed_trailer(out, opt);
    return out.str();
}

std::string render(const ThresholdScan& scan, Format format, const RenderOptions& opt) {
    if (format == Format::json) {
        ordered_json doc;
        ordered_json points = ordered_json::array();
        for (std::size_t i = 0; i < scan.budgets.size(); ++i) {
            ordered_json row;
            row["B"] = g9(scan.budgets[i]);
            row["m_star"] = g9(scan.manipulation[i]);
            row["k_eff"] = g9(scan.effective_k[i]);
            row["perceived"] = g9(scan.perceived[i]);
            row["welfare"] = g9(scan.welfare[i]);
            points.push_back(std::move(row));
        }
        doc["points"] = std::move(points);
        doc["threshold"] = scan.threshold ? ordered_json(g9(*scan.threshold))
                                          : ordered_json(nullptr);
        if (scan.threshold_bracket) {
            doc["threshold_bracket"] = {g9(scan.threshold_bracket->first),
                                        g9(scan.threshold_bracket->second)};
        } else {
            doc["threshold_bracket"] = nullptr;
        }
        doc["welfare_dip_after"] =
            scan.non_monotone_index
                ? ordered_json(g9(scan.budgets[*scan.non_monotone_index]))
                : ordered_json(nullptr);
        attach_meta(doc, opt, /*spoof_note=*/true);
        return dump(doc);
    }
    std::ostringstream out;
    out << "B,m_star,k_eff,perceived,welfare\n";
    for (std::size_t i = 0; i < scan.budgets.size(); ++i) {
        out << format_number(scan.budgets[i]) << ',' << format_number(scan.manipulation[i])
            << ',' << format_number(scan.effective_k[i]) << ','
            << format_number(scan.perceived[i]) << ',' << format_number(scan.welfare[i])
            << "\n";
    }
    out << "# threshold=" << (scan.threshold ? format_number(*scan.threshold) : "none")
        << "\n";
    if (scan.threshold_bracket) {
        out << "# threshold_bracket=" << format_number(scan.threshold_bracket->first) << ','
            << format_number(scan.threshold_bracket->second) << "\n";
    }
    out << "# welfare_dip_after="
        << (scan.non_monotone_index ? format_number(scan.budgets[*scan.non_monotone_index])
                                    : "none")
        << "\n";
    out << "# spoof_model=" << kSpoofModelNote << "\n";
    csv_seed_trailer(out, opt);
    return out.str();
}

std::string render(const GarpResult& result, Format format, const RenderOptions& opt) {
    if (format == Format::json) {
        ordered_json doc;
        doc["consistent"] = result.consistent;
        doc["violation_cycle"] = result.violation_cycle;
        attach_meta(doc, opt);
        return dump(doc);
    }
    std::ostringstream out;
    out << "consistent,cycle\n";
    out << (result.consistent ? "true" : "false") << ',';
    for (std::size_t i = 0; i < result.violation_cycle.size(); ++i) {
        if (i) out << '-';
        out << result.violation_cycle[i];
    }
    out << "\n";
    csv_seed_trailer(out, opt);
    return out.str();
}

void write_output(const std::string& text,
                  const std::optional<std::filesystem::path>& destination) {
    if (!destination) {
        std::cout << text;
        return;
    }
    std::ofstream out(*destination, std::ios::binary);
    if (!out) {
        throw Error("io", "cannot write " + destination->string());
    }
    out << text;
    if (!out) {
        throw Error("io", "failed while writing " + destination->string());
    }
}

}  // namespace evalgap::io
