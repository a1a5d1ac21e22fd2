#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apc/errors.hpp"
#include "apc/rational.hpp"
#include "apc/word.hpp"

namespace apc {

template <class S> struct scalar_traits;

template <> struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static bool is_one(const Rat& x) { return x == 1; }
    static bool in_unit(const Rat& x) { return x >= 0 && x <= 1; }
    static const char* mode_name() { return "rational"; }
};

template <> struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr double row_tol = 1e-12;
    static bool is_one(double x) { return std::abs(x - 1.0) <= row_tol; }
    static bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }
    static const char* mode_name() { return "float"; }
};

/// Dense row-major k x k matrix over the scalar S. State counts stay small
/// (k <= 8 in practice), so no sparse representation is used.
template <class S>
struct Matrix {
    int k = 0;
    std::vector<S> a; // row-major, size k*k

    Matrix() = default;
    explicit Matrix(int n) : k(n), a(static_cast<size_t>(n) * n, S(0)) {}
    Matrix(int n, std::vector<S> entries) : k(n), a(std::move(entries)) {}

    S& at(int i, int j) { return a[static_cast<size_t>(i) * k + j]; }
    const S& at(int i, int j) const { return a[static_cast<size_t>(i) * k + j]; }

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = S(1);
        return m;
    }

    Matrix transposed() const {
        Matrix t(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool operator==(const Matrix&) const = default;
};

/// row * M
template <class S>
std::vector<S> vec_mat(const std::vector<S>& v, const Matrix<S>& m) {
    std::vector<S> out(static_cast<size_t>(m.k), S(0));
    for (int i = 0; i < m.k; ++i) {
        if (v[i] == S(0)) continue;
        for (int j = 0; j < m.k; ++j) out[j] += v[i] * m.at(i, j);
    }
    return out;
}

/// Probabilistic finite automaton: initial distribution pi, one
/// row-stochastic matrix per letter, and a 0/1 accepting vector eta.
/// The scalar type selects the mode: BasicPfa<Rat> is exact and
/// authoritative, BasicPfa<double> exists for optimizer work and
/// float fixtures. Values are immutable in spirit; all operations
/// below are pure functions returning fresh values.
template <class S>
struct BasicPfa {
    int k = 0;
    Alphabet alphabet{2};
    std::vector<S> pi;
    std::vector<Matrix<S>> P; // indexed by letter
    std::vector<int> eta;     // entries 0/1

    bool operator==(const BasicPfa&) const = default;
};

using Pfa = BasicPfa<Rat>;
using PfaF = BasicPfa<double>;

/// One violated invariant, with enough location to point at the row.
struct PfaViolation {
    std::string message;
    int letter = -1; // -1: pi or eta
    int row = -1;
};

/// Checks shape, row sums, entry ranges and the 0/1 accepting vector.
/// Returns every violation rather than stopping at the first.
template <class S>
std::vector<PfaViolation> validate_pfa(const BasicPfa<S>& A) {
    std::vector<PfaViolation> out;
    auto bad = [&](std::string msg, int letter = -1, int row = -1) {
        out.push_back({std::move(msg), letter, row});
    };
    if (A.k < 1) {
        bad("state count must be >= 1");
        return out;
    }
    if (static_cast<int>(A.pi.size()) != A.k) bad("pi has wrong length");
    if (static_cast<int>(A.eta.size()) != A.k) bad("eta has wrong length");
    if (static_cast<int>(A.P.size()) != A.alphabet.size) bad("one transition matrix per letter required");
    if (!out.empty()) return out;

    S pisum(0);
    for (int j = 0; j < A.k; ++j) {
        if (!scalar_traits<S>::in_unit(A.pi[j])) bad("pi entry outside [0,1]", -1, j);
        pisum += A.pi[j];
    }
    if (!scalar_traits<S>::is_one(pisum)) bad("pi does not sum to 1");

    for (int e = 0; e < static_cast<int>(A.eta.size()) && e < A.k; ++e)
        if (A.eta[e] != 0 && A.eta[e] != 1) bad("eta entry not 0/1", -1, e);

    for (int sigma = 0; sigma < A.alphabet.size; ++sigma) {
        const auto& M = A.P[sigma];
        if (M.k != A.k) {
            bad("transition matrix has wrong dimension", sigma);
            continue;
        }
        for (int i = 0; i < A.k; ++i) {
            S rowsum(0);
            for (int j = 0; j < A.k; ++j) {
                if (!scalar_traits<S>::in_unit(M.at(i, j))) bad("entry outside [0,1]", sigma, i);
                rowsum += M.at(i, j);
            }
            if (!scalar_traits<S>::is_one(rowsum)) bad("row does not sum to 1", sigma, i);
        }
    }
    return out;
}

template <class S>
bool pfa_is_valid(const BasicPfa<S>& A) {
    return validate_pfa(A).empty();
}

template <class S>
void require_valid(const BasicPfa<S>& A) {
    auto v = validate_pfa(A);
    if (!v.empty()) throw input_error("invalid PFA: " + v.front().message);
}

/// Acceptance probability rho(w) = pi * P_{w_1} ... P_{w_n} * eta.
/// rho of the empty word is pi * eta.
template <class S>
S rho(const BasicPfa<S>& A, const Word& w) {
    if (w.alphabet.size > A.alphabet.size)
        throw input_error("word alphabet larger than PFA alphabet");
    std::vector<S> v = A.pi;
    for (size_t t = 0; t < w.size(); ++t) {
        if (w[t] >= A.alphabet.size) throw input_error("letter out of alphabet");
        v = vec_mat(v, A.P[w[t]]);
    }
    S acc(0);
    for (int j = 0; j < A.k; ++j)
        if (A.eta[j]) acc += v[j];
    return acc;
}

inline bool within_word_budget(int alphabet, size_t length, uint64_t budget) {
    long double total = 1.0L;
    for (size_t i = 0; i < length; ++i) {
        total *= alphabet;
        if (total > static_cast<long double>(budget)) return false;
    }
    return true;
}

constexpr uint64_t kDefaultGapBudget = uint64_t(1) << 24;

namespace detail {

// Depth-first sweep of all words of length n sharing prefix products.
// visit(state row, current word) is called at every leaf.
template <class S, class Visit>
void for_each_leaf(const BasicPfa<S>& A, size_t n, std::vector<S>& v,
                   std::vector<uint8_t>& word, const Visit& visit) {
    if (word.size() == n) {
        visit(v, word);
        return;
    }
    for (uint8_t sigma = 0; sigma < A.alphabet.size; ++sigma) {
        std::vector<S> next = vec_mat(v, A.P[sigma]);
        word.push_back(sigma);
        for_each_leaf(A, n, next, word, visit);
        word.pop_back();
    }
}

} // namespace detail

/// gap(w) = min over z of rho(w) - rho(z), z ranging over the other words
/// of length |w|. Returns 1 when that competitor set is empty (empty word
/// or unary alphabet), where w is vacuously the unique most likely string.
/// Refuses when |alphabet|^|w| exceeds the budget.
template <class S>
S gap(const BasicPfa<S>& A, const Word& w, uint64_t budget = kDefaultGapBudget) {
    if (w.alphabet.size > A.alphabet.size)
        throw input_error("word alphabet larger than PFA alphabet");
    if (w.empty() || A.alphabet.size == 1) return S(1);
    if (!within_word_budget(A.alphabet.size, w.size(), budget))
        throw budget_error("competitor enumeration exceeds budget");

    S rw = rho(A, w);
    std::optional<S> best;
    std::vector<S> v = A.pi;
    std::vector<uint8_t> cur;
    detail::for_each_leaf(A, w.size(), v, cur, [&](const std::vector<S>& leaf, const std::vector<uint8_t>& word) {
        if (word == w.letters) return;
        S rz(0);
        for (int j = 0; j < A.k; ++j)
            if (A.eta[j]) rz += leaf[j];
        S diff = rw - rz;
        if (!best || diff < *best) best = diff;
    });
    return *best;
}

/// Replaces the initial distribution with pi * P(x); the result M' satisfies
/// rho(M', w) = rho(A, x^w) for every w.
template <class S>
BasicPfa<S> drop_prefix(const BasicPfa<S>& A, const Word& x) {
    require_valid(A);
    BasicPfa<S> out = A;
    std::vector<S> v = A.pi;
    for (size_t t = 0; t < x.size(); ++t) {
        if (x[t] >= A.alphabet.size) throw input_error("letter out of alphabet");
        v = vec_mat(v, A.P[x[t]]);
    }
    out.pi = std::move(v);
    return out;
}

/// Runs a doubly stochastic machine in reverse: transposes every transition
/// matrix, starts from the accepting states and accepts the old start states.
/// Requires each P_sigma doubly stochastic, eta nonzero, and all nonzero pi
/// entries equal (each then equals 1/n). The result M' satisfies
/// rho(M', reverse(y)) = (n/s) * rho(A, y) with s = sum(eta).
template <class S>
BasicPfa<S> reverse_pfa(const BasicPfa<S>& A) {
    require_valid(A);
    for (int sigma = 0; sigma < A.alphabet.size; ++sigma)
        for (int j = 0; j < A.k; ++j) {
            S colsum(0);
            for (int i = 0; i < A.k; ++i) colsum += A.P[sigma].at(i, j);
            if (!scalar_traits<S>::is_one(colsum))
                throw input_error("reverse_pfa: transition matrix for letter " + std::to_string(sigma) +
                                  " is not doubly stochastic (column " + std::to_string(j) + ")");
        }
    std::optional<S> common;
    int nonzero_pi = 0;
    for (int j = 0; j < A.k; ++j) {
        if (A.pi[j] == S(0)) continue;
        ++nonzero_pi;
        if (!common) common = A.pi[j];
        else if (!(*common == A.pi[j]))
            throw input_error("reverse_pfa: nonzero pi entries are not all equal");
    }
    if (nonzero_pi == 0) throw input_error("reverse_pfa: pi is zero");
    int s = 0;
    for (int j = 0; j < A.k; ++j) s += A.eta[j];
    if (s == 0) throw input_error("reverse_pfa: eta is zero");

    BasicPfa<S> out;
    out.k = A.k;
    out.alphabet = A.alphabet;
    out.P.reserve(A.P.size());
    for (const auto& M : A.P) out.P.push_back(M.transposed());
    out.pi.assign(A.k, S(0));
    for (int j = 0; j < A.k; ++j)
        if (A.eta[j]) out.pi[j] = S(1) / S(s);
    // nonzero pi entries all equal 1/n with n their count, so n*pi is 0/1
    out.eta.assign(A.k, 0);
    for (int j = 0; j < A.k; ++j)
        if (!(A.pi[j] == S(0))) out.eta[j] = 1;
    return out;
}

/// Widens the alphabet to b letters; added letters act as the identity.
template <class S>
BasicPfa<S> extend_alphabet(const BasicPfa<S>& A, int b) {
    if (b < A.alphabet.size) throw input_error("cannot shrink alphabet");
    BasicPfa<S> out = A;
    out.alphabet = Alphabet(b);
    while (static_cast<int>(out.P.size()) < b) out.P.push_back(Matrix<S>::identity(A.k));
    return out;
}

/// Exact machine reinterpreted with double entries.
inline PfaF to_float(const Pfa& A) {
    PfaF out;
    out.k = A.k;
    out.alphabet = A.alphabet;
    out.eta = A.eta;
    out.pi.reserve(A.pi.size());
    for (const auto& x : A.pi) out.pi.push_back(rat_to_double(x));
    for (const auto& M : A.P) {
        Matrix<double> m(M.k);
        for (size_t i = 0; i < M.a.size(); ++i) m.a[i] = rat_to_double(M.a[i]);
        out.P.push_back(std::move(m));
    }
    return out;
}

} // namespace apc
