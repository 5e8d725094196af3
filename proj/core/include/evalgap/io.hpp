#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "evalgap/amplification.hpp"
#include "evalgap/analysis.hpp"
#include "evalgap/campbell.hpp"
#include "evalgap/garp.hpp"
#include "evalgap/model.hpp"

namespace evalgap::io {

// ─── Documents ────────────────────────────────────────────────────
//
// Scenario file (JSON):
//   { "n_dims": 2, "weights": [1,1], "coverage_k": 1, "reward_weights": [1],
//     "lambda": 0.5, "budget": 1.0,
//     "production": [{"family":"power","a":1,"p":0.5}, {"family":"log","a":1}] }
//
// Sweep config: { "alpha", "unit_cost", "cost_family": {"kind":"linear","c0","c1"}
//                 | {"kind":"power","c1","gamma"} | {"kind":"quadratic","c2"},
//                 "t_min", "t_max", optional "loss_template": {"lambda","budget"} }
//
// Campbell config: scenario keys minus "budget", plus "gamma", "spoof_scale",
//                  "spoof_exponent", optional "passive_delta", and "b_grid"
//                  (array of budgets, or {"min","max","points","spacing":"log"|"linear"}).
//
// Observations: JSON array of {"prices":[...], "bundle":[...]}.
//
// Errors: unreadable file -> "io"; unparseable JSON -> "schema"; missing key
// -> "schema:<key>"; wrong type -> "schema_type:<key>"; semantic violations
// propagate from the validators.

Scenario load_scenario(const std::filesystem::path& file);
void save_scenario(const Scenario& s, const std::filesystem::path& file);

struct SweepDocument {
    AmplificationConfig config;
    std::optional<LossTemplate> loss_template;
};
SweepDocument load_sweep_config(const std::filesystem::path& file);

struct CampbellDocument {
    CampbellConfig config;
    std::vector<double> budget_grid;
};
CampbellDocument load_campbell_config(const std::filesystem::path& file);

ObservationSet load_observations(const std::filesystem::path& file);

// ─── Rendering ────────────────────────────────────────────────────
//
// Byte-deterministic for identical inputs. Floating values carry 9
// significant digits (round-half-even). CSV trailer comments hold scalars;
// a given seed is echoed into the metadata of every format.

enum class Format : std::uint8_t { csv, json };

struct RenderOptions {
    std::optional<std::uint64_t> seed;
};

// %.9g
std::string format_number(double x);

std::string render(const Allocation& alloc, Format format, const RenderOptions& opt = {});
std::string render(const VulnerabilityReport& report, Format format,
                   const RenderOptions& opt = {});
std::string render(const AlignmentLoss& loss, Format format, const RenderOptions& opt = {});
std::string render(const AmplificationSeries& series, Format format,
                   const RenderOptions& opt = {});
std::string render(const ComplementarityGrid& grid, Format format,
                   const RenderOptions& opt = {});
std::string render(const ThresholdScan& scan, Format format, const RenderOptions& opt = {});
std::string render(const GarpResult& result, Format format, const RenderOptions& opt = {});

// To the given file, or stdout when no destination; Error("io") when the
// destination cannot be written.
void write_output(const std::string& text, const std::optional<std::filesystem::path>& destination);

}  // namespace evalgap::io
