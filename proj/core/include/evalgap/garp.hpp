#pragma once

#include <cstdint>
#include <vector>

#include "evalgap/error.hpp"

namespace evalgap {

// ─── Revealed preference ──────────────────────────────────────────
//
// Observed allocations are rationalizable by some increasing objective iff
// they satisfy the Generalized Axiom of Revealed Preference: no chain of
// (weakly) revealed preferences may loop back through a strict one.
// Expenditure comparisons carry a relative tie band; ties default to the
// weak relation.

struct Observation {
    std::vector<double> prices;  // all > 0
    std::vector<double> bundle;  // all >= 0
};

struct ObservationSet {
    std::vector<Observation> observations;  // non-empty, shared dimension
};

// Empty when valid. Codes: "shape", "positivity", "expenditure".
std::vector<Violation> validate_observations(const ObservationSet& obs);

struct RevealedRelations {
    // weak[t][s]:   p^t.x^t >= p^t.x^s - eps*p^t.x^t  (x^t directly weakly revealed preferred)
    // strict[t][s]: p^t.x^t >  p^t.x^s + eps*p^t.x^t
    std::vector<std::vector<std::uint8_t>> weak;
    std::vector<std::vector<std::uint8_t>> strict;
};

RevealedRelations revealed_relations(const ObservationSet& obs);

struct GarpResult {
    bool consistent = true;
    // On violation: shortest witness cycle t -> ... -> s with s strictly
    // preferred over t, as 1-based observation indices. Empty when consistent.
    std::vector<int> violation_cycle;
};

// GARP holds iff no pair (t,s) has t weakly-revealed-preferred (transitively)
// to s while s is directly strictly preferred to t. Observation count capped
// at 1024 (Error("observations")).
GarpResult check_garp(const ObservationSet& obs);

}  // namespace evalgap
