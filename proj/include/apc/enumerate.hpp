#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "apc/gamma.hpp"
#include "apc/pfa.hpp"
#include "apc/word.hpp"

namespace apc {

struct SearchBudget {
    long max_denominator = 4;
    uint64_t max_machines = 200'000;
    double wall_seconds = 120.0; // 0 disables the clock cap

    bool sane() const { return max_denominator >= 1 && max_machines >= 1 && wall_seconds >= 0; }
};

/// Streams every k-state rational PFA whose entries have reduced
/// denominator at most denom_bound, each exactly once, in canonical order:
/// accepting vector, then pi, then the matrices, lexicographically by
/// scalar value.
void enum_rational_pfas(int k, int alphabet, long denom_bound,
                        const std::function<void(const Pfa&)>& sink);

/// Positive semi-decision of "some k-state machine gives w a positive
/// gap": alternates enumeration batches with heuristic search restarts,
/// re-verifying every candidate in exact arithmetic. Exhausted is a value,
/// not an error.
struct SemiDecision {
    bool found = false;
    Pfa witness;
    Rat exact_gap;
    uint64_t machines_tried = 0;
    long denominator_reached = 0;
};

/// Invoked once per enumeration batch with (machines tried, best gap so
/// far); the best gap may be negative while nothing has been found.
using SearchProgress = std::function<void(uint64_t, const Rat&)>;

SemiDecision semidecide_ap_le(const Word& w, int k, const SearchBudget& budget = {},
                              uint64_t seed = 1, const SearchProgress& progress = {});

/// Smallest state count this toolkit can witness with an exact positive
/// gap, with the route that produced it: the two-state classification,
/// the stochastic lift of a minimal unique-path NFA, budgeted search, or
/// the deterministic witness.
struct ApUpperBound {
    int k = 0;
    Pfa witness;
    Rat exact_gap;
    std::string provenance; // classified | nfa-lift | search | dfa
};

ApUpperBound ap_upper_bound(const Word& w, const SearchBudget& budget = {}, uint64_t seed = 1);

} // namespace apc
