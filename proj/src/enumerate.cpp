#include "apc/enumerate.hpp"

#include <algorithm>
#include <chrono>

#include "apc/classical.hpp"
#include "apc/classify.hpp"
#include "apc/errors.hpp"

namespace apc {

namespace {

// All reduced rationals in [0,1] with denominator <= bound, ascending.
std::vector<Rat> farey_scalars(long bound) {
    std::vector<Rat> out;
    for (long den = 1; den <= bound; ++den)
        for (long num = 0; num <= den; ++num) {
            Rat q = make_rat(num, den);
            if (q.get_den() == den) out.push_back(q);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Rows on the simplex with entries drawn from the scalar list, in
// lexicographic order.
void enum_rows(const std::vector<Rat>& scalars, int len, std::vector<Rat>& row, const Rat& remaining,
               const std::function<void(const std::vector<Rat>&)>& sink) {
    if (len == 1) {
        if (std::binary_search(scalars.begin(), scalars.end(), remaining)) {
            row.push_back(remaining);
            sink(row);
            row.pop_back();
        }
        return;
    }
    for (const auto& s : scalars) {
        if (s > remaining) break;
        row.push_back(s);
        enum_rows(scalars, len - 1, row, remaining - s, sink);
        row.pop_back();
    }
}

uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

long max_denominator(const Pfa& A) {
    long m = 1;
    auto upd = [&](const Rat& q) {
        if (q.get_den() > m) m = static_cast<long>(q.get_den().get_si());
    };
    for (const auto& x : A.pi) upd(x);
    for (const auto& M : A.P)
        for (const auto& x : M.a) upd(x);
    return m;
}

} // namespace

void enum_rational_pfas(int k, int alphabet, long denom_bound,
                        const std::function<void(const Pfa&)>& sink) {
    if (k < 1 || alphabet < 1 || denom_bound < 1) throw input_error("bad enumeration parameters");
    auto scalars = farey_scalars(denom_bound);
    std::vector<std::vector<Rat>> rows;
    {
        std::vector<Rat> cur;
        enum_rows(scalars, k, cur, Rat(1), [&](const std::vector<Rat>& r) { rows.push_back(r); });
    }

    const int slots = alphabet * k + 1; // pi plus the matrix rows
    for (uint64_t em = 0; em < (uint64_t(1) << k); ++em) {
        std::vector<size_t> pick(static_cast<size_t>(slots), 0);
        while (true) {
            Pfa A;
            A.k = k;
            A.alphabet = Alphabet(alphabet);
            A.pi = rows[pick[0]];
            for (int sigma = 0; sigma < alphabet; ++sigma) {
                Matrix<Rat> M(k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) M.at(i, j) = rows[pick[1 + sigma * k + i]][j];
                A.P.push_back(std::move(M));
            }
            A.eta.assign(static_cast<size_t>(k), 0);
            for (int j = 0; j < k; ++j) A.eta[j] = static_cast<int>((em >> j) & 1);
            sink(A);

            size_t i = pick.size();
            while (i > 0 && pick[i - 1] + 1 == rows.size()) pick[--i] = 0;
            if (i == 0) break;
            ++pick[i - 1];
        }
    }
}

SemiDecision semidecide_ap_le(const Word& w, int k, const SearchBudget& budget, uint64_t seed,
                              const SearchProgress& progress) {
    if (k < 1) throw input_error("state count must be positive");
    if (!budget.sane()) throw input_error("invalid search budget");

    SemiDecision out;
    Rat best_gap(-1);
    const auto start = std::chrono::steady_clock::now();
    auto timed_out = [&] {
        if (budget.wall_seconds <= 0) return false;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
               budget.wall_seconds;
    };

    struct found_signal {};
    uint64_t batch = 0;
    auto heuristic_restart = [&] {
        GammaOptions opt;
        opt.restarts = 1;
        opt.seed = splitmix(seed ^ (0xabc123 + batch));
        auto [lb, wit] = gamma_lower(k, w, opt);
        if (lb > 0) {
            out.found = true;
            out.witness = wit;
            out.exact_gap = lb;
        }
    };

    try {
        for (long denom = 1; denom <= budget.max_denominator; ++denom) {
            out.denominator_reached = denom;
            uint64_t in_batch = 0;
            enum_rational_pfas(k, w.alphabet.size, denom, [&](const Pfa& A) {
                if (denom > 1 && max_denominator(A) != denom) return; // listed at a smaller bound
                if (++out.machines_tried > budget.max_machines) throw found_signal{};
                // float screen: a truly positive gap cannot evaluate below
                // the rounding floor, so only screened survivors pay for
                // exact arithmetic
                if (gap(to_float(A), w) > -1e-9) {
                    Rat g = gap(A, w);
                    if (g > best_gap) best_gap = g;
                    if (g > 0) {
                        out.found = true;
                        out.witness = A;
                        out.exact_gap = g;
                        throw found_signal{};
                    }
                }
                if (++in_batch % 10'000 == 0) {
                    ++batch;
                    heuristic_restart();
                    if (progress) progress(out.machines_tried, best_gap);
                    if (out.found || timed_out()) throw found_signal{};
                }
            });
            ++batch;
            heuristic_restart();
            if (progress) progress(out.machines_tried, out.found ? out.exact_gap : best_gap);
            if (out.found || timed_out()) break;
        }
    } catch (const found_signal&) {
    }
    if (out.found) {
        // paranoia: the stored gap must reproduce exactly
        if (!(gap(out.witness, w) == out.exact_gap) || !(out.exact_gap > 0))
            throw std::logic_error("semi-decision witness failed re-verification");
    }
    return out;
}

ApUpperBound ap_upper_bound(const Word& w, const SearchBudget& budget, uint64_t seed) {
    // two-state classification settles binary words immediately
    if (w.alphabet.size == 2 && !w.empty()) {
        if (auto fam = is_class2(w)) {
            Pfa A = ifs2_to_pfa(witness_class2(w));
            Rat g = gap(A, w);
            if (g > 0) return {2, A, g, "classified"};
        }
    }

    auto lifted = nfa_to_pfa(an(w, budget.max_machines).witness);
    Rat lifted_gap = gap(lifted, w);
    auto dfa = ad(w, budget.max_machines);
    Pfa dfa_wit = dfa_to_pfa(dfa.witness);

    int best_known = std::min(lifted.k, dfa.value);
    // binary words that failed classification need at least three states
    int k_from = w.alphabet.size == 2 ? 3 : 2;
    for (int k = k_from; k < best_known; ++k) {
        auto semi = semidecide_ap_le(w, k, budget, seed);
        if (semi.found) return {k, semi.witness, semi.exact_gap, "search"};
    }
    if (lifted.k <= dfa.value && lifted_gap > 0)
        return {lifted.k, lifted, lifted_gap, "nfa-lift"};
    return {dfa.value, dfa_wit, gap(dfa_wit, w), "dfa"};
}

} // namespace apc
