#include "apc/classical.hpp"

#include <algorithm>

#include "apc/errors.hpp"

namespace apc {

namespace {

constexpr uint64_t kCountCap = uint64_t(1) << 62;

uint64_t sat_add(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    return (s < a || s > kCountCap) ? kCountCap : s;
}

// Number of accepting paths of length n from the start state, counted over
// all input strings and saturated well above 1.
uint64_t accepting_path_count(const Nfa& N, size_t n) {
    std::vector<uint64_t> c(static_cast<size_t>(N.k), 0);
    c[static_cast<size_t>(N.start)] = 1;
    for (size_t t = 0; t < n; ++t) {
        std::vector<uint64_t> next(static_cast<size_t>(N.k), 0);
        for (int s = 0; s < N.k; ++s) {
            if (c[s] == 0) continue;
            for (int sigma = 0; sigma < N.alphabet.size; ++sigma)
                for (int j = 0; j < N.k; ++j)
                    if (N.P[sigma].at(s, j)) next[j] = sat_add(next[j], c[s]);
        }
        c.swap(next);
    }
    uint64_t total = 0;
    for (int j = 0; j < N.k; ++j)
        if (N.eta[j]) total = sat_add(total, c[j]);
    return total;
}

bool nfa_accepts(const Nfa& N, const Word& w) {
    uint32_t reach = uint32_t(1) << N.start;
    for (size_t t = 0; t < w.size(); ++t) {
        uint32_t next = 0;
        for (int s = 0; s < N.k; ++s)
            if (reach & (uint32_t(1) << s))
                for (int j = 0; j < N.k; ++j)
                    if (N.P[w[t]].at(s, j)) next |= uint32_t(1) << j;
        reach = next;
        if (!reach) return false;
    }
    for (int j = 0; j < N.k; ++j)
        if (N.eta[j] && (reach & (uint32_t(1) << j))) return true;
    return false;
}

// Path automaton through fresh states; always a (|w|+1)-state witness.
Nfa chain_nfa(const Word& w) {
    Nfa N;
    N.k = static_cast<int>(w.size()) + 1;
    N.start = 0;
    N.alphabet = w.alphabet;
    for (int s = 0; s < N.alphabet.size; ++s) N.P.emplace_back(N.k);
    for (size_t t = 0; t < w.size(); ++t)
        N.P[w[t]].at(static_cast<int>(t), static_cast<int>(t) + 1) = 1;
    N.eta.assign(static_cast<size_t>(N.k), 0);
    N.eta.back() = 1;
    return N;
}

// NFA whose edges are exactly those traversed when reading w through the
// state sequence 0 -> seq[0] -> ... -> seq[n-1]; the final state accepts.
Nfa nfa_from_state_sequence(const Word& w, const std::vector<int>& seq, int k) {
    Nfa N;
    N.k = k;
    N.start = 0;
    N.alphabet = w.alphabet;
    for (int s = 0; s < N.alphabet.size; ++s) N.P.emplace_back(k);
    int prev = 0;
    for (size_t t = 0; t < w.size(); ++t) {
        N.P[w[t]].at(prev, seq[t]) = 1;
        prev = seq[t];
    }
    N.eta.assign(static_cast<size_t>(k), 0);
    N.eta[static_cast<size_t>(prev)] = 1;
    return N;
}

Dfa path_dfa(const Word& w) {
    // States 0..n trace w; state n+1 is the explicit dead state.
    int n = static_cast<int>(w.size());
    Dfa D;
    D.k = n + 2;
    D.start = 0;
    D.alphabet = w.alphabet;
    D.delta.assign(static_cast<size_t>(D.alphabet.size),
                   std::vector<int>(static_cast<size_t>(D.k), n + 1));
    for (int t = 0; t < n; ++t) D.delta[w[t]][t] = t + 1;
    D.eta.assign(static_cast<size_t>(D.k), 0);
    D.eta[static_cast<size_t>(n)] = 1;
    return D;
}

uint64_t ipow_capped(uint64_t base, uint64_t exp, uint64_t cap) {
    uint64_t r = 1;
    for (uint64_t i = 0; i < exp; ++i) {
        if (base == 0 || r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

// Depth-first over canonical state sequences: labels appear in first-use
// order (restricted growth with the start state as label 0), and the full
// sequence must use exactly k labels so smaller machines are not retested.
struct SequenceSearch {
    const Word& w;
    int k;
    uint64_t budget;
    bool exhausted = false;
    std::vector<int> seq;

    explicit SequenceSearch(const Word& word, int states, uint64_t b)
        : w(word), k(states), budget(b), seq(word.size(), 0) {}

    bool run(size_t t, int maxlabel, Nfa& found) {
        if (t == w.size()) {
            if (maxlabel + 1 != k) return false;
            if (budget == 0) {
                exhausted = true;
                return false;
            }
            --budget;
            Nfa N = nfa_from_state_sequence(w, seq, k);
            if (accepting_path_count(N, w.size()) == 1) {
                found = std::move(N);
                return true;
            }
            return false;
        }
        int limit = std::min(maxlabel + 1, k - 1);
        for (int s = 0; s <= limit; ++s) {
            seq[t] = s;
            if (run(t + 1, std::max(maxlabel, s), found)) return true;
            if (exhausted) return false;
        }
        return false;
    }
};

} // namespace

std::vector<std::string> validate_nfa(const Nfa& N) {
    std::vector<std::string> out;
    if (N.k < 1 || N.k > 30) out.push_back("state count out of range");
    if (N.start < 0 || N.start >= N.k) out.push_back("start state out of range");
    if (static_cast<int>(N.P.size()) != N.alphabet.size) out.push_back("one matrix per letter required");
    if (static_cast<int>(N.eta.size()) != N.k) out.push_back("eta has wrong length");
    if (!out.empty()) return out;
    for (const auto& M : N.P) {
        if (M.k != N.k) {
            out.push_back("matrix dimension mismatch");
            continue;
        }
        for (const auto& e : M.a)
            if (e != 0 && e != 1) out.push_back("transition entry not 0/1");
    }
    for (int e : N.eta)
        if (e != 0 && e != 1) out.push_back("eta entry not 0/1");
    return out;
}

std::vector<std::string> validate_dfa(const Dfa& D) {
    std::vector<std::string> out;
    if (D.k < 1) out.push_back("state count out of range");
    if (D.start < 0 || D.start >= D.k) out.push_back("start state out of range");
    if (static_cast<int>(D.delta.size()) != D.alphabet.size) out.push_back("one row per letter required");
    if (static_cast<int>(D.eta.size()) != D.k) out.push_back("eta has wrong length");
    if (!out.empty()) return out;
    for (const auto& row : D.delta) {
        if (static_cast<int>(row.size()) != D.k) {
            out.push_back("delta has wrong length");
            continue;
        }
        for (int t : row)
            if (t < 0 || t >= D.k) out.push_back("transition target out of range");
    }
    for (int e : D.eta)
        if (e != 0 && e != 1) out.push_back("eta entry not 0/1");
    return out;
}

Nfa dfa_to_nfa(const Dfa& D) {
    Nfa N;
    N.k = D.k;
    N.start = D.start;
    N.alphabet = D.alphabet;
    for (int sigma = 0; sigma < D.alphabet.size; ++sigma) {
        Matrix<int> M(D.k);
        for (int s = 0; s < D.k; ++s) M.at(s, D.delta[sigma][s]) = 1;
        N.P.push_back(std::move(M));
    }
    N.eta = D.eta;
    return N;
}

Pfa dfa_to_pfa(const Dfa& D) {
    Pfa A;
    A.k = D.k;
    A.alphabet = D.alphabet;
    A.pi.assign(static_cast<size_t>(D.k), Rat(0));
    A.pi[static_cast<size_t>(D.start)] = Rat(1);
    for (int sigma = 0; sigma < D.alphabet.size; ++sigma) {
        Matrix<Rat> M(D.k);
        for (int s = 0; s < D.k; ++s) M.at(s, D.delta[sigma][s]) = Rat(1);
        A.P.push_back(std::move(M));
    }
    A.eta = D.eta;
    return A;
}

bool an_witness_check(const Nfa& N, const Word& w) {
    if (!validate_nfa(N).empty()) throw input_error("invalid NFA");
    return nfa_accepts(N, w) && accepting_path_count(N, w.size()) == 1;
}

bool dfa_witness_check(const Dfa& D, const Word& w, uint64_t budget) {
    if (!validate_dfa(D).empty()) throw input_error("invalid DFA");
    if (!within_word_budget(D.alphabet.size, w.size(), budget))
        throw budget_error("word length exceeds uniqueness-check budget");
    int s = D.start;
    for (size_t t = 0; t < w.size(); ++t) s = D.delta[w[t]][s];
    if (!D.eta[s]) return false;
    // count strings of length |w| per end state; each string follows one path
    std::vector<uint64_t> c(static_cast<size_t>(D.k), 0);
    c[static_cast<size_t>(D.start)] = 1;
    for (size_t t = 0; t < w.size(); ++t) {
        std::vector<uint64_t> next(static_cast<size_t>(D.k), 0);
        for (int q = 0; q < D.k; ++q) {
            if (c[q] == 0) continue;
            for (int sigma = 0; sigma < D.alphabet.size; ++sigma) {
                int dst = D.delta[sigma][q];
                next[dst] = sat_add(next[dst], c[q]);
            }
        }
        c.swap(next);
    }
    uint64_t accepted = 0;
    for (int q = 0; q < D.k; ++q)
        if (D.eta[q]) accepted = sat_add(accepted, c[q]);
    return accepted == 1;
}

DfaComplexity ad(const Word& w, uint64_t budget) {
    const int b = w.alphabet.size;
    const size_t n = w.size();
    uint64_t spent = 0;
    for (int k = 1; k <= static_cast<int>(n) + 2; ++k) {
        uint64_t tables = ipow_capped(static_cast<uint64_t>(k), static_cast<uint64_t>(k) * b, budget);
        if (tables > budget - std::min(budget, spent)) {
            DfaComplexity out;
            out.value = static_cast<int>(n) + 2;
            out.witness = path_dfa(w);
            out.optimal = false;
            return out;
        }
        spent += tables;

        std::vector<int> delta(static_cast<size_t>(k) * b, 0); // (state, letter) -> state
        while (true) {
            int s = 0;
            for (size_t t = 0; t < n; ++t) s = delta[static_cast<size_t>(s) * b + w[t]];
            std::vector<uint64_t> c(static_cast<size_t>(k), 0);
            c[0] = 1;
            for (size_t t = 0; t < n; ++t) {
                std::vector<uint64_t> next(static_cast<size_t>(k), 0);
                for (int q = 0; q < k; ++q) {
                    if (c[q] == 0) continue;
                    for (int sigma = 0; sigma < b; ++sigma) {
                        int dst = delta[static_cast<size_t>(q) * b + sigma];
                        next[dst] = sat_add(next[dst], c[q]);
                    }
                }
                c.swap(next);
            }
            // accepting exactly the end state of w works iff no other string
            // lands there
            if (c[s] == 1) {
                DfaComplexity out;
                out.value = k;
                out.witness.k = k;
                out.witness.start = 0;
                out.witness.alphabet = w.alphabet;
                out.witness.delta.assign(static_cast<size_t>(b),
                                         std::vector<int>(static_cast<size_t>(k), 0));
                for (int q = 0; q < k; ++q)
                    for (int sigma = 0; sigma < b; ++sigma)
                        out.witness.delta[sigma][q] = delta[static_cast<size_t>(q) * b + sigma];
                out.witness.eta.assign(static_cast<size_t>(k), 0);
                out.witness.eta[static_cast<size_t>(s)] = 1;
                return out;
            }
            size_t i = 0;
            while (i < delta.size() && delta[i] == k - 1) delta[i++] = 0;
            if (i == delta.size()) break;
            ++delta[i];
        }
    }
    DfaComplexity out; // unreachable: a path DFA witnesses at n+2 states
    out.value = static_cast<int>(n) + 2;
    out.witness = path_dfa(w);
    return out;
}

NfaComplexity an(const Word& w, uint64_t budget) {
    const size_t n = w.size();
    if (n == 0) {
        Nfa N;
        N.k = 1;
        N.start = 0;
        N.alphabet = w.alphabet;
        for (int s = 0; s < N.alphabet.size; ++s) N.P.emplace_back(1);
        N.eta = {1};
        return {1, std::move(N), true};
    }
    uint64_t remaining = budget;
    for (int k = 1; k <= static_cast<int>(n) + 1; ++k) {
        SequenceSearch search(w, k, remaining);
        Nfa found;
        if (search.run(0, 0, found)) {
            return {k, std::move(found), true};
        }
        if (search.exhausted) {
            NfaComplexity out;
            out.value = static_cast<int>(n) + 1;
            out.witness = chain_nfa(w);
            out.optimal = false;
            return out;
        }
        remaining = search.budget;
    }
    return {static_cast<int>(n) + 1, chain_nfa(w), true}; // chain always witnesses
}

bool no_nfa_witness_exhaustive(const Word& w, int k, uint64_t budget) {
    const int b = w.alphabet.size;
    const uint64_t cells = static_cast<uint64_t>(k) * k * b;
    if (cells >= 40) throw budget_error("raw NFA enumeration out of range");
    const uint64_t total = uint64_t(1) << cells;
    const uint64_t etas = uint64_t(1) << k;
    if (total > budget / std::max<uint64_t>(etas, 1))
        throw budget_error("raw NFA enumeration exceeds budget");

    Nfa N;
    N.k = k;
    N.start = 0;
    N.alphabet = w.alphabet;
    for (int s = 0; s < b; ++s) N.P.emplace_back(k);
    N.eta.assign(static_cast<size_t>(k), 0);

    for (uint64_t mask = 0; mask < total; ++mask) {
        uint64_t m = mask;
        for (int sigma = 0; sigma < b; ++sigma)
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    N.P[sigma].at(i, j) = static_cast<int>(m & 1);
                    m >>= 1;
                }
        for (uint64_t em = 1; em < etas; ++em) {
            for (int j = 0; j < k; ++j) N.eta[j] = static_cast<int>((em >> j) & 1);
            if (nfa_accepts(N, w) && accepting_path_count(N, w.size()) == 1) return false;
        }
    }
    return true;
}

Pfa nfa_to_pfa(const Nfa& N) {
    if (!validate_nfa(N).empty()) throw input_error("invalid NFA");
    bool has_zero_row = false;
    for (const auto& M : N.P)
        for (int i = 0; i < N.k; ++i) {
            int sum = 0;
            for (int j = 0; j < N.k; ++j) sum += M.at(i, j);
            if (sum == 0) has_zero_row = true;
        }
    const int k = N.k + (has_zero_row ? 1 : 0);

    Pfa A;
    A.k = k;
    A.alphabet = N.alphabet;
    A.pi.assign(static_cast<size_t>(k), Rat(0));
    A.pi[static_cast<size_t>(N.start)] = Rat(1);
    A.eta.assign(static_cast<size_t>(k), 0);
    for (int j = 0; j < N.k; ++j) A.eta[j] = N.eta[j];

    for (const auto& M : N.P) {
        Matrix<Rat> Q(k);
        for (int i = 0; i < N.k; ++i) {
            long sum = 0;
            for (int j = 0; j < N.k; ++j) sum += M.at(i, j);
            if (sum == 0) {
                Q.at(i, k - 1) = Rat(1); // dead state absorbs missing moves
            } else {
                for (int j = 0; j < N.k; ++j)
                    if (M.at(i, j)) Q.at(i, j) = make_rat(1, sum);
            }
        }
        if (has_zero_row) Q.at(k - 1, k - 1) = Rat(1);
        A.P.push_back(std::move(Q));
    }
    return A;
}

} // namespace apc
