#pragma once

#include <cstdint>
#include <vector>

#include "apc/pfa.hpp"
#include "apc/word.hpp"

namespace apc {

/// Nondeterministic finite automaton with a single start state,
/// represented by 0/1 transition matrices.
struct Nfa {
    int k = 0;
    int start = 0;
    Alphabet alphabet{2};
    std::vector<Matrix<int>> P; // entries 0/1, indexed by letter
    std::vector<int> eta;       // entries 0/1

    bool operator==(const Nfa&) const = default;
};

/// Total DFA: every row of every transition matrix has exactly one 1.
struct Dfa {
    int k = 0;
    int start = 0;
    Alphabet alphabet{2};
    std::vector<std::vector<int>> delta; // delta[letter][state] -> state
    std::vector<int> eta;

    bool operator==(const Dfa&) const = default;
};

std::vector<std::string> validate_nfa(const Nfa& N);
std::vector<std::string> validate_dfa(const Dfa& D);

Nfa dfa_to_nfa(const Dfa& D);

/// DFAs are PFAs whose pi is a coordinate vector and whose transition
/// matrices are 0/1 row-stochastic.
Pfa dfa_to_pfa(const Dfa& D);

struct DfaComplexity {
    int value = 0;
    Dfa witness;
    bool optimal = true; // false when the search budget cut the proof short
};

struct NfaComplexity {
    int value = 0;
    Nfa witness;
    bool optimal = true;
};

constexpr uint64_t kDefaultSearchBudget = uint64_t(1) << 26;

/// True iff N accepts w and the machine has exactly one accepting path of
/// length |w| in total, counted by integer powering of sum_sigma P_sigma.
bool an_witness_check(const Nfa& N, const Word& w);

/// True iff D accepts w and rejects every other word of length |w|.
bool dfa_witness_check(const Dfa& D, const Word& w, uint64_t budget = kDefaultGapBudget);

/// Least k such that a k-state total DFA accepts w and nothing else of its
/// length. Exhausts transition tables with the start state fixed by
/// relabeling; a budget overrun yields the path-automaton upper bound
/// flagged non-optimal.
DfaComplexity ad(const Word& w, uint64_t budget = kDefaultSearchBudget);

/// Least k such that a k-state single-start NFA accepts w with exactly one
/// accepting path of length |w| machine-wide. Searches canonical path
/// automata: any witness restricts to the edge set of its unique accepting
/// path, so machines whose edges all lie on one length-|w| path from the
/// start are exhaustive up to relabeling.
NfaComplexity an(const Word& w, uint64_t budget = kDefaultSearchBudget);

/// Independent refutation oracle: enumerates every k-state single-start
/// NFA by raw transition/accept bitmasks and reports whether none witnesses
/// w. Exponential in k*k*alphabet; refuses above the budget.
bool no_nfa_witness_exhaustive(const Word& w, int k, uint64_t budget = kDefaultSearchBudget);

/// Stochastic lift: normalizes nonzero rows and routes all-zero rows to an
/// appended dead state (only added when some row is all zeros). The result
/// accepts exactly the strings N accepts with positive probability.
Pfa nfa_to_pfa(const Nfa& N);

} // namespace apc
