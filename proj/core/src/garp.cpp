#include "evalgap/garp.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace evalgap {

namespace {

constexpr double kExpenditureBand = 1e-9;  // relative tie band
constexpr std::size_t kMaxObservations = 1024;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<Violation> validate_observations(const ObservationSet& obs) {
    std::vector<Violation> out;
    if (obs.observations.empty()) {
        out.push_back({"shape", "need at least one observation"});
        return out;
    }
    const std::size_t n = obs.observations.front().prices.size();
    for (std::size_t t = 0; t < obs.observations.size(); ++t) {
        const auto& o = obs.observations[t];
        const std::string where = "observation " + std::to_string(t + 1);
        if (o.prices.size() != n || o.bundle.size() != n || n == 0) {
            out.push_back({"shape", where + " has mismatched dimensions"});
            continue;
        }
        for (double p : o.prices) {
            if (!(p > 0.0)) {
                out.push_back({"positivity", where + " has a non-positive price"});
                break;
            }
        }
        for (double x : o.bundle) {
            if (x < 0.0) {
                out.push_back({"positivity", where + " has a negative bundle entry"});
                break;
            }
        }
        if (!(dot(o.prices, o.bundle) > 0.0)) {
            out.push_back({"expenditure", where + " has zero expenditure"});
        }
    }
    return out;
}

RevealedRelations revealed_relations(const ObservationSet& obs) {
    if (auto violations = validate_observations(obs); !violations.empty()) {
        throw ValidationError(std::move(violations));
    }
    const std::size_t count = obs.observations.size();
    RevealedRelations rel;
    rel.weak.assign(count, std::vector<std::uint8_t>(count, 0));
    rel.strict.assign(count, std::vector<std::uint8_t>(count, 0));
    for (std::size_t t = 0; t < count; ++t) {
        const auto& pt = obs.observations[t].prices;
        const double own = dot(pt, obs.observations[t].bundle);
        const double band = kExpenditureBand * own;
        for (std::size_t s = 0; s < count; ++s) {
            const double cross = dot(pt, obs.observations[s].bundle);
            rel.weak[t][s] = own >= cross - band;
            rel.strict[t][s] = own > cross + band;
        }
    }
    return rel;
}

GarpResult check_garp(const ObservationSet& obs) {
    if (obs.observations.size() > kMaxObservations) {
        throw Error("observations", "at most 1024 observations supported");
    }
    const auto rel = revealed_relations(obs);
    const std::size_t count = obs.observations.size();
    constexpr int kUnreached = std::numeric_limits<int>::max();

    // BFS over the weak relation from every start: distances give both the
    // transitive closure and shortest witness paths.
    std::vector<std::vector<int>> dist(count, std::vector<int>(count, kUnreached));
    std::vector<std::vector<int>> parent(count, std::vector<int>(count, -1));
    for (std::size_t start = 0; start < count; ++start) {
        auto& d = dist[start];
        auto& par = parent[start];
        d[start] = 0;
        std::queue<std::size_t> frontier;
        frontier.push(start);
        while (!frontier.empty()) {
            const std::size_t u = frontier.front();
            frontier.pop();
            for (std::size_t v = 0; v < count; ++v) {
                if (v != u && rel.weak[u][v] && d[v] == kUnreached) {
                    d[v] = d[u] + 1;
                    par[v] = static_cast<int>(u);
                    frontier.push(v);
                }
            }
        }
    }

    // Shortest violating pair: t reaches s weakly while s strictly beats t.
    std::size_t best_t = count, best_s = count;
    int best_len = kUnreached;
    for (std::size_t t = 0; t < count; ++t) {
        for (std::size_t s = 0; s < count; ++s) {
            if (t == s || !rel.strict[s][t]) continue;
            if (dist[t][s] < best_len) {
                best_len = dist[t][s];
                best_t = t;
                best_s = s;
            }
        }
    }

    GarpResult result;
    if (best_len == kUnreached) return result;

    result.consistent = false;
    std::vector<int> path;
    for (int node = static_cast<int>(best_s); node != -1; node = parent[best_t][static_cast<std::size_t>(node)]) {
        path.push_back(node + 1);  // 1-based observation indices
        if (node == static_cast<int>(best_t)) break;
    }
    std::reverse(path.begin(), path.end());
    result.violation_cycle = std::move(path);
    return result;
}

}  // namespace evalgap
