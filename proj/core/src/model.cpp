#include "evalgap/model.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace evalgap {

namespace {

// The open interval (0,1) for the alignment gap, kept numerically meaningful.
constexpr double kGapMargin = 1e-9;

std::string describe(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

}  // namespace

double ProductionFunction::value(double effort) const {
    if (effort <= 0.0) return 0.0;
    switch (family) {
        case ProductionFamily::power:
            return scale * std::pow(effort, exponent);
        case ProductionFamily::log:
            return scale * std::log1p(effort);
    }
    return 0.0;
}

double ProductionFunction::deriv(double effort) const {
    switch (family) {
        case ProductionFamily::power:
            if (effort <= 0.0) return std::numeric_limits<double>::infinity();
            return scale * exponent * std::pow(effort, exponent - 1.0);
        case ProductionFamily::log:
            return scale / (1.0 + effort);
    }
    return 0.0;
}

double ProductionFunction::inv_deriv(double marginal) const {
    if (marginal <= 0.0) {
        throw Error("domain", "inv_deriv requires a positive marginal, got " + describe(marginal));
    }
    switch (family) {
        case ProductionFamily::power:
            // a*p*e^(p-1) = x  =>  e = (a*p/x)^(1/(1-p))
            return std::pow(scale * exponent / marginal, 1.0 / (1.0 - exponent));
        case ProductionFamily::log:
            // a/(1+e) = x  =>  e = a/x - 1, clamped at the corner
            return std::max(0.0, scale / marginal - 1.0);
    }
    return 0.0;
}

std::vector<Violation> validate_scenario(const Scenario& raw) {
    std::vector<Violation> out;
    const int n = raw.n_dims;
    const int k = raw.coverage_k;

    if (n < 2) {
        out.push_back({"axiom1", "n_dims must be >= 2, got " + std::to_string(n)});
    }
    if (k < 1 || k >= n) {
        out.push_back({"axiom2", "coverage_k must satisfy 1 <= K < N, got K=" +
                                     std::to_string(k) + " N=" + std::to_string(n)});
    }
    if (!(raw.alignment_gap >= kGapMargin && raw.alignment_gap <= 1.0 - kGapMargin)) {
        out.push_back({"alignment_gap_range",
                       "lambda must lie in (0,1), got " + describe(raw.alignment_gap)});
    }
    if (!(raw.budget > 0.0)) {
        out.push_back({"positivity", "budget must be positive, got " + describe(raw.budget)});
    }
    for (std::size_t i = 0; i < raw.weights.size(); ++i) {
        if (!(raw.weights[i] > 0.0)) {
            out.push_back({"positivity", "weights[" + std::to_string(i + 1) + "] must be positive"});
        }
    }
    for (std::size_t i = 0; i < raw.reward_weights.size(); ++i) {
        if (!(raw.reward_weights[i] > 0.0)) {
            out.push_back({"positivity",
                           "reward_weights[" + std::to_string(i + 1) + "] must be positive"});
        }
    }
    if (n >= 0 && raw.weights.size() != static_cast<std::size_t>(n)) {
        out.push_back({"shape", "weights must carry N entries"});
    }
    if (k >= 0 && raw.reward_weights.size() != static_cast<std::size_t>(k)) {
        out.push_back({"shape", "reward_weights must carry K entries"});
    }
    if (n >= 0 && raw.production.size() != static_cast<std::size_t>(n)) {
        out.push_back({"shape", "production must carry N entries"});
    }
    for (std::size_t i = 0; i < raw.production.size(); ++i) {
        const auto& g = raw.production[i];
        const std::string where = "production[" + std::to_string(i + 1) + "]";
        if (!(g.scale > 0.0)) {
            out.push_back({"production_params", where + ".a must be positive"});
        }
        if (g.family == ProductionFamily::power &&
            !(g.exponent > 0.0 && g.exponent < 1.0)) {
            out.push_back({"production_params", where + ".p must lie strictly in (0,1)"});
        }
    }
    return out;
}

Scenario validated(Scenario raw) {
    auto violations = validate_scenario(raw);
    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    return raw;
}

std::vector<double> effective_weights(const Scenario& s) {
    std::vector<double> out(static_cast<std::size_t>(s.n_dims));
    for (int i = 0; i < s.n_dims; ++i) {
        const double base = (1.0 - s.alignment_gap) * s.weights[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(i)] =
            i < s.coverage_k
                ? s.alignment_gap * s.reward_weights[static_cast<std::size_t>(i)] + base
                : base;
    }
    return out;
}

double incompleteness(const Scenario& s) {
    return static_cast<double>(s.n_dims - s.coverage_k) / static_cast<double>(s.n_dims);
}

std::uint64_t scenario_fingerprint(const Scenario& s) {
    std::string canon = std::to_string(s.n_dims) + "|" + std::to_string(s.coverage_k) + "|" +
                        describe(s.alignment_gap) + "|" + describe(s.budget);
    for (double w : s.weights) canon += "|w" + describe(w);
    for (double r : s.reward_weights) canon += "|r" + describe(r);
    for (const auto& g : s.production) {
        canon += g.family == ProductionFamily::power
                     ? "|P" + describe(g.scale) + "," + describe(g.exponent)
                     : "|L" + describe(g.scale);
    }
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace evalgap
