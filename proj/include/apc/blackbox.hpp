#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "apc/pfa.hpp"
#include "apc/word.hpp"

namespace apc {

/// Statistical plan for deciding whether a black-box machine's gap on a
/// word exceeds delta: every word of the length is run N times, and the
/// per-string comparison error is small enough that all |alphabet|^n
/// comparisons jointly err with probability at most epsilon.
struct TrialPlan {
    uint64_t trials = 0;
    double delta = 0;
    double epsilon = 0;
    double margin = 0; // assumed lower bound on |gap - delta|
    double per_string_confidence = 0;
    size_t word_length = 0;
    int alphabet = 2;
};

/// Two-sided Hoeffding count: N = ceil(2 ln(2/eps') / margin^2) with
/// (1 - eps')^(alphabet^length) >= 1 - epsilon.
TrialPlan trials_needed(double delta, double epsilon, size_t word_length, int alphabet,
                        double margin);

/// Counts acceptances of z over n trials; the substream seed is derived
/// from the experiment seed and z alone, so trials may run in any order
/// or in parallel without changing the report.
using AcceptanceSampler = std::function<uint64_t(const Word& z, uint64_t trials, uint64_t substream)>;

/// Samples a known machine: each trial accepts with probability rho(z).
AcceptanceSampler pfa_sampler(const Pfa& M);
AcceptanceSampler pfa_sampler(const PfaF& M);

struct ExperimentReport {
    bool gap_exceeds = false;
    TrialPlan plan;
    uint64_t seed = 0;
    std::vector<Word> words;            // all words of the length, lexicographic
    std::vector<uint64_t> acceptances;  // counts aligned with words
};

/// Runs the plan against a sampler: verdict GapExceeds iff every
/// competitor z has [s(w)-s(z)]/N > delta. Reproducible bit for bit from
/// the seed.
ExperimentReport run_experiment(const AcceptanceSampler& sample, const Word& w, double delta,
                                double epsilon, double margin, uint64_t seed,
                                uint64_t word_budget = kDefaultGapBudget);

ExperimentReport run_experiment(const Pfa& M, const Word& w, double delta, double epsilon,
                                double margin, uint64_t seed,
                                uint64_t word_budget = kDefaultGapBudget);

} // namespace apc
