#include "apc/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "apc/errors.hpp"
#include "apc/interval.hpp"

namespace apc {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Rng {
    uint64_t state;
    explicit Rng(uint64_t s) : state(s) {}
    uint64_t next() { return state = splitmix64(state); }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Free parameters of a k-state machine over b letters: row 0 is pi, then
// matrix rows letter-major. Every row lives on the k-simplex.
struct Params {
    int k = 0, b = 0;
    std::vector<double> rows; // (b*k + 1) * k entries

    int row_count() const { return b * k + 1; }
    double* row(int r) { return rows.data() + static_cast<size_t>(r) * k; }
    const double* row(int r) const { return rows.data() + static_cast<size_t>(r) * k; }
};

std::vector<std::vector<int>> canonical_etas(int k) {
    std::vector<std::vector<int>> out;
    for (int s = 1; s < k; ++s) {
        std::vector<int> eta(static_cast<size_t>(k), 0);
        for (int i = 0; i < s; ++i) eta[i] = 1;
        out.push_back(std::move(eta));
    }
    return out;
}

double rho_float(const Params& p, const std::vector<int>& eta, const Word& w) {
    std::vector<double> v(p.row(0), p.row(0) + p.k);
    std::vector<double> next(static_cast<size_t>(p.k));
    for (size_t t = 0; t < w.size(); ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < p.k; ++i) {
            if (v[i] == 0.0) continue;
            const double* r = p.row(1 + w[t] * p.k + i);
            for (int j = 0; j < p.k; ++j) next[j] += v[i] * r[j];
        }
        v.swap(next);
    }
    double acc = 0;
    for (int j = 0; j < p.k; ++j)
        if (eta[j]) acc += v[j];
    return acc;
}

// gap = rho(w) - max over other words of the same length
double gap_float(const Params& p, const std::vector<int>& eta, const Word& w) {
    const size_t n = w.size();
    double rw = rho_float(p, eta, w);
    if (n == 0 || p.b == 1) return 1.0;

    std::vector<std::vector<double>> buf(n + 1, std::vector<double>(static_cast<size_t>(p.k)));
    for (int j = 0; j < p.k; ++j) buf[0][j] = p.row(0)[j];
    double best = -1.0;

    auto rec = [&](auto&& self, size_t depth, bool on_w) -> void {
        if (depth == n) {
            if (on_w) return;
            double acc = 0;
            for (int j = 0; j < p.k; ++j)
                if (eta[j]) acc += buf[n][j];
            best = std::max(best, acc);
            return;
        }
        for (int sigma = 0; sigma < p.b; ++sigma) {
            auto& dst = buf[depth + 1];
            std::fill(dst.begin(), dst.end(), 0.0);
            for (int i = 0; i < p.k; ++i) {
                double vi = buf[depth][i];
                if (vi == 0.0) continue;
                const double* r = p.row(1 + sigma * p.k + i);
                for (int j = 0; j < p.k; ++j) dst[j] += vi * r[j];
            }
            self(self, depth + 1, on_w && sigma == w[depth]);
        }
    };
    rec(rec, 0, true);
    return rw - best;
}

// Nearest dyadic grid point with rows summing exactly to one.
Pfa snap_to_rational(const Params& p, const std::vector<int>& eta, const Alphabet& alphabet) {
    constexpr long kDen = 1L << 16;
    Pfa A;
    A.k = p.k;
    A.alphabet = alphabet;
    A.eta = eta;
    auto snap_row = [&](const double* r) {
        std::vector<long> num(static_cast<size_t>(p.k));
        long total = 0;
        for (int j = 0; j < p.k; ++j) {
            num[j] = std::lround(std::clamp(r[j], 0.0, 1.0) * kDen);
            total += num[j];
        }
        int top = 0;
        for (int j = 1; j < p.k; ++j)
            if (num[j] > num[top]) top = j;
        num[top] += kDen - total; // absorb rounding drift in the largest entry
        if (num[top] < 0) num[top] = 0;
        std::vector<Rat> row(static_cast<size_t>(p.k));
        for (int j = 0; j < p.k; ++j) row[j] = make_rat(num[j], kDen);
        return row;
    };
    A.pi = snap_row(p.row(0));
    for (int sigma = 0; sigma < p.b; ++sigma) {
        Matrix<Rat> M(p.k);
        for (int i = 0; i < p.k; ++i) {
            auto row = snap_row(p.row(1 + sigma * p.k + i));
            for (int j = 0; j < p.k; ++j) M.at(i, j) = row[j];
        }
        A.P.push_back(std::move(M));
    }
    return A;
}

Params params_from_pfa(const Pfa& A) {
    Params p;
    p.k = A.k;
    p.b = A.alphabet.size;
    p.rows.resize(static_cast<size_t>(p.row_count()) * p.k);
    for (int j = 0; j < p.k; ++j) p.row(0)[j] = rat_to_double(A.pi[j]);
    for (int sigma = 0; sigma < p.b; ++sigma)
        for (int i = 0; i < p.k; ++i)
            for (int j = 0; j < p.k; ++j) p.row(1 + sigma * p.k + i)[j] = rat_to_double(A.P[sigma].at(i, j));
    return p;
}

void randomize(Params& p, Rng& rng) {
    for (int r = 0; r < p.row_count(); ++r) {
        double sum = 0;
        for (int j = 0; j < p.k; ++j) {
            double x = -std::log(rng.uniform() + 1e-300);
            p.row(r)[j] = x;
            sum += x;
        }
        for (int j = 0; j < p.k; ++j) p.row(r)[j] /= sum;
    }
}

// Coordinate-transfer descent: move mass between two entries of one row,
// keeping the simplex exact; the step halves whenever a sweep stalls.
void local_search(Params& p, const std::vector<int>& eta, const Word& w, int iterations) {
    double step = 0.25;
    double best = gap_float(p, eta, w);
    for (int it = 0; it < iterations && step > 1e-10; ++it) {
        bool improved = false;
        for (int r = 0; r < p.row_count(); ++r) {
            for (int from = 0; from < p.k; ++from) {
                if (p.row(r)[from] <= 0.0) continue;
                for (int to = 0; to < p.k; ++to) {
                    if (to == from) continue;
                    double amount = std::min(step, p.row(r)[from]);
                    p.row(r)[from] -= amount;
                    p.row(r)[to] += amount;
                    double g = gap_float(p, eta, w);
                    if (g > best + 1e-15) {
                        best = g;
                        improved = true;
                    } else {
                        p.row(r)[from] += amount;
                        p.row(r)[to] -= amount;
                    }
                }
            }
        }
        if (!improved) step /= 2;
    }
}

struct ExactBest {
    Rat gap = Rat(-2);
    Pfa witness;
    bool has = false;
};

void consider_exact(ExactBest& best, const Pfa& A, const Word& w, uint64_t budget) {
    if (!pfa_is_valid(A)) return;
    Rat g = gap(A, w, budget);
    if (!best.has || g > best.gap) {
        best.gap = g;
        best.witness = A;
        best.has = true;
    }
}

// All deterministic vertex machines (0/1 transition rows) when the space
// is small, a seeded sample otherwise.
void sweep_vertices(ExactBest& best, int k, const std::vector<int>& eta, const Word& w,
                    const GammaOptions& opt) {
    const int b = w.alphabet.size;
    const uint64_t cells = static_cast<uint64_t>(b) * k;
    long double total = 1;
    for (uint64_t i = 0; i < cells; ++i) total *= k;

    auto try_table = [&](const std::vector<int>& dst, int start) {
        Dfa D;
        D.k = k;
        D.start = start;
        D.alphabet = w.alphabet;
        D.delta.assign(static_cast<size_t>(b), std::vector<int>(static_cast<size_t>(k), 0));
        for (int sigma = 0; sigma < b; ++sigma)
            for (int i = 0; i < k; ++i) D.delta[sigma][i] = dst[static_cast<size_t>(sigma) * k + i];
        Pfa A = dfa_to_pfa(D);
        A.eta = eta;
        consider_exact(best, A, w, opt.gap_budget);
    };

    if (total <= 4096) {
        std::vector<int> dst(cells, 0);
        while (true) {
            for (int start = 0; start < k; ++start) try_table(dst, start);
            size_t i = 0;
            while (i < cells && dst[i] == k - 1) dst[i++] = 0;
            if (i == cells) break;
            ++dst[i];
        }
    } else {
        Rng rng(splitmix64(opt.seed ^ 0xdfa0));
        std::vector<int> dst(cells);
        for (int t = 0; t < 2048; ++t) {
            for (auto& d : dst) d = static_cast<int>(rng.next() % k);
            try_table(dst, static_cast<int>(rng.next() % k));
        }
    }
}

// ---- interval branch and bound ----

const Interval kUnit{0.0, 1.0};

struct Box {
    std::vector<Interval> vars;
    double ub = 1.0;
    std::vector<uint8_t> hint; // competitor achieving the parent's bound
};

// Upper bound of gap over a box, as min over competitors z of
// (sup rho(w) - inf rho(z)). Two parameterizations share this contract:
// the two-state binary one over the four map endpoints (the start weight
// enters affinely and is maximized out exactly), and the general one over
// the matrix entries (the start distribution is maximized out by taking
// the best coordinate of the backward difference vector).

Interval interval_square(const Interval& v) {
    double m = std::max(std::abs(v.lo), std::abs(v.hi));
    double lo = (v.lo <= 0.0 && v.hi >= 0.0) ? 0.0 : std::min(v.lo * v.lo, v.hi * v.hi);
    return Interval::outward(lo, m * m);
}

Interval interval_pow(const Interval& v, int e) {
    if (e == 0) return Interval::exact(1.0);
    if (e % 2 == 1) return interval_pow(v, e - 1) * v;
    Interval sq = interval_square(v);
    Interval r = Interval::exact(1.0);
    for (int i = 0; i < e / 2; ++i) r = r * sq; // sq >= 0, stays tight enough
    return r;
}

// A two-state map composition expands into one offset monomial per
// position plus one slope-product monomial: value = sum_i (prod of later
// spans) * p_{y_i} + (prod of all spans) * x. Keys are the span exponents
// and which offset (or x) closes the term; signs are +1 for the w suffix
// and -1 for the competitor suffix, so shared monomials cancel exactly.
struct Monomial {
    int c0, c1; // span exponents
    int base;   // 0: p0, 1: p1, 2: x
    int sign;
};

// vars layout (k = 2, binary): f0(0), f0(1), f1(0), f1(1), x0.
// Every competitor shares a prefix with w up to its branch-off point; the
// difference rho(w) - rho(z) is affine in the value reached there, so the
// shared prefix cancels exactly. Each suffix difference is bounded two
// ways, by clamped affine composition and by exact monomial cancellation,
// and the tighter result wins. The start weight stays a box variable:
// evaluating the per-competitor maximum at the endpoints of its current
// range keeps the bound convergent as boxes shrink to points.
double k2_box_gap_ub(Box& box, const Word& w, double prune_below) {
    const size_t n = w.size();
    const Interval p[2] = {box.vars[0], box.vars[2]};
    const Interval span[2] = {box.vars[1] - box.vars[0], box.vars[3] - box.vars[2]};
    const Interval x0 = box.vars[4];

    std::vector<Interval> pow0(n + 1), pow1(n + 1);
    for (size_t e = 0; e <= n; ++e) {
        pow0[e] = interval_pow(span[0], static_cast<int>(e));
        pow1[e] = interval_pow(span[1], static_cast<int>(e));
    }

    struct AB {
        Interval A, B;
    };
    auto pre_step = [&](const AB& s, int sigma) { // s o f_sigma
        AB t{(s.A + s.B * p[sigma]).intersect(kUnit), s.B * span[sigma]};
        Interval at1 = (t.A + t.B).intersect(kUnit);
        t.B = t.B.intersect(at1 - t.A);
        return t;
    };
    auto post_step = [&](const AB& s, int sigma) { // f_sigma o s
        AB t{(p[sigma] + span[sigma] * s.A).intersect(kUnit), span[sigma] * s.B};
        Interval at1 = (t.A + t.B).intersect(kUnit);
        t.B = t.B.intersect(at1 - t.A);
        return t;
    };
    const AB ident{Interval::exact(0.0), Interval::exact(1.0)};

    // suffix monomials of a word y_{t..m}: appending a letter in front of a
    // composition leaves existing terms alone when building right to left,
    // so build each suffix from the back once
    auto suffix_monomials = [&](const uint8_t* letters, size_t len, int sign,
                                std::vector<Monomial>& ms) {
        ms.clear();
        int c0 = 0, c1 = 0;
        for (size_t i = len; i-- > 0;) {
            // term: (spans after position i) * p_{letters[i]}
            ms.push_back({c0, c1, letters[i], sign});
            (letters[i] == 0 ? c0 : c1)++;
        }
        ms.push_back({c0, c1, 2, sign}); // full slope product times x
    };

    // values of w's prefixes over the start weights in this box
    std::vector<Interval> prefix_val(n + 1);
    prefix_val[0] = x0.intersect(kUnit);
    {
        AB cur = ident;
        for (size_t t = 0; t < n; ++t) {
            cur = post_step(cur, w[t]);
            prefix_val[t + 1] = (cur.A + cur.B * x0).intersect(kUnit);
        }
    }
    std::vector<AB> suffix(n + 1);
    suffix[n] = ident;
    for (size_t t = n; t-- > 0;) suffix[t] = pre_step(suffix[t + 1], w[t]);

    std::vector<std::vector<Monomial>> w_monomials(n);
    for (size_t t = 0; t < n; ++t)
        suffix_monomials(w.letters.data() + t, n - t, +1, w_monomials[t]);

    double best = 1.0; // gap never exceeds 1
    std::vector<AB> stack(n + 1);
    std::vector<uint8_t> zbuf(n);
    std::vector<Monomial> zm;
    zm.reserve(n + 1);

    auto leaf_bound = [&](size_t branch) {
        // clamped affine bound
        Interval dA = suffix[branch].A - stack[n].A;
        Interval dB = suffix[branch].B - stack[n].B;
        const Interval& x = prefix_val[branch];
        double ub = std::max((dA + dB * Interval::exact(x.lo)).hi,
                             (dA + dB * Interval::exact(x.hi)).hi);

        if (ub <= prune_below) return ub;

        // monomial bound with exact cancellation
        suffix_monomials(zbuf.data() + branch, n - branch, -1, zm);
        Interval mA = Interval::exact(0.0), mB = Interval::exact(0.0);
        auto add = [&](const Monomial& m, int sign) {
            Interval term = pow0[static_cast<size_t>(m.c0)] * pow1[static_cast<size_t>(m.c1)];
            if (m.base != 2) term = term * p[m.base];
            Interval& dst = m.base == 2 ? mB : mA;
            if (sign > 0)
                dst = dst + term;
            else
                dst = dst - term;
        };
        // cancel identical keys across the two suffixes
        for (const auto& mw : w_monomials[branch]) {
            bool cancelled = false;
            for (auto& mz : zm) {
                if (mz.sign == 0) continue;
                if (mz.c0 == mw.c0 && mz.c1 == mw.c1 && mz.base == mw.base) {
                    mz.sign = 0;
                    cancelled = true;
                    break;
                }
            }
            if (!cancelled) add(mw, +1);
        }
        for (const auto& mz : zm)
            if (mz.sign != 0) add(mz, -1);
        double ub2 = std::max((mA + mB * Interval::exact(x.lo)).hi,
                              (mA + mB * Interval::exact(x.hi)).hi);
        return std::min(ub, ub2);
    };

    std::vector<uint8_t> best_z;

    // the competitor that pinched the parent box usually pinches the
    // children too, so test it before the full sweep
    if (box.hint.size() == n && box.hint != w.letters) {
        size_t t = 0;
        while (box.hint[t] == w[t]) ++t;
        std::copy(box.hint.begin(), box.hint.end(), zbuf.begin());
        stack[t] = ident;
        for (size_t d = t; d < n; ++d) stack[d + 1] = post_step(stack[d], box.hint[d]);
        best = std::min(best, leaf_bound(t));
        if (best <= prune_below) return best;
    }

    auto rec = [&](auto&& self, size_t branch, size_t depth) -> bool {
        if (best <= prune_below) return false;
        if (depth == n) {
            double v = leaf_bound(branch);
            if (v < best) {
                best = v;
                best_z.assign(zbuf.begin(), zbuf.end());
            }
            return true;
        }
        for (int sigma = 0; sigma < 2; ++sigma) {
            zbuf[depth] = static_cast<uint8_t>(sigma);
            stack[depth + 1] = post_step(stack[depth], sigma);
            if (!self(self, branch, depth + 1)) return false;
        }
        return true;
    };
    std::copy(w.letters.begin(), w.letters.end(), zbuf.begin());
    for (size_t t = 0; t < n && best > prune_below; ++t) {
        int other = 1 - w[t];
        stack[t] = ident;
        zbuf[t] = static_cast<uint8_t>(other);
        stack[t + 1] = post_step(ident, other);
        bool keep_going = rec(rec, t, t + 1);
        zbuf[t] = w[t];
        if (!keep_going) break;
    }
    if (!best_z.empty()) box.hint = std::move(best_z);
    return best;
}

// Simplex hull consistency: each entry is limited by what the rest of its
// row can still contribute. Returns false for infeasible rows.
bool tighten_rows(std::vector<Interval>& e, int row_count, int k) {
    for (int pass = 0; pass < 2; ++pass) {
        for (int r = 0; r < row_count; ++r) {
            Interval* row = e.data() + static_cast<size_t>(r) * k;
            double slo = 0, shi = 0;
            for (int j = 0; j < k; ++j) {
                slo += row[j].lo;
                shi += row[j].hi;
            }
            if (slo > 1.0 || shi < 1.0) return false;
            for (int j = 0; j < k; ++j) {
                double other_lo = slo - row[j].lo;
                double other_hi = shi - row[j].hi;
                row[j].hi = std::min(row[j].hi, 1.0 - other_lo);
                row[j].lo = std::max(row[j].lo, std::min(1.0 - other_hi, row[j].hi));
            }
        }
    }
    return true;
}

// vars layout (general): the pi row, then matrix entries letter-major,
// row-major. The backward state-acceptance vectors share competitor
// suffixes; pi enters once through the final dot product.
double generic_box_gap_ub(const Box& box, int k, int b, const std::vector<int>& eta, const Word& w,
                          double prune_below) {
    const size_t n = w.size();
    const Interval* pi = box.vars.data();
    auto mat_row = [&](int sigma, int i) {
        return box.vars.data() + (static_cast<size_t>(1) + static_cast<size_t>(sigma) * k + i) * k;
    };

    // v[i] = acceptance probability of the remaining suffix from state i
    auto pull_back = [&](const std::vector<Interval>& v, int sigma, std::vector<Interval>& out) {
        for (int i = 0; i < k; ++i) {
            const Interval* r = mat_row(sigma, i);
            Interval acc = Interval::exact(0.0);
            for (int j = 0; j < k; ++j) acc = acc + r[j] * v[j];
            out[i] = acc.intersect(kUnit);
        }
    };

    std::vector<Interval> veta(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) veta[j] = Interval::exact(eta[j] ? 1.0 : 0.0);

    // suffix vectors are built right to left, so walk w backward
    std::vector<Interval> vw = veta, tmp(static_cast<size_t>(k));
    for (size_t t = n; t-- > 0;) {
        pull_back(vw, w[t], tmp);
        vw.swap(tmp);
    }

    double best = 1.0;
    std::vector<std::vector<Interval>> stack(n + 1, std::vector<Interval>(static_cast<size_t>(k)));
    stack[0] = veta;
    std::vector<uint8_t> rev(n, 0); // letters of z, last first
    auto rec = [&](auto&& self, size_t depth) -> bool {
        if (best <= prune_below) return false;
        if (depth == n) {
            bool is_w = true;
            for (size_t t = 0; t < n && is_w; ++t)
                if (rev[t] != w[n - 1 - t]) is_w = false;
            if (is_w) return true;
            Interval diff = Interval::exact(0.0);
            for (int i = 0; i < k; ++i) diff = diff + pi[i] * (vw[i] - stack[n][i]);
            best = std::min(best, diff.hi);
            return true;
        }
        for (int sigma = 0; sigma < b; ++sigma) {
            rev[depth] = static_cast<uint8_t>(sigma);
            pull_back(stack[depth], sigma, stack[depth + 1]);
            if (!self(self, depth + 1)) return false;
        }
        return true;
    };
    rec(rec, 0);
    return best;
}

double bnb_upper(int k, const Word& w, const std::vector<int>& eta, double eps, double lb_d,
                 const GammaOptions& opt, std::optional<double> stop_below, uint64_t& boxes_used,
                 double& achieved) {
    const int b = w.alphabet.size;
    const bool two_state = k == 2 && b == 2;

    auto feasible = [&](Box& box) {
        if (two_state) return true; // endpoints are free of row constraints
        return tighten_rows(box.vars, 1 + b * k, k);
    };
    auto bound = [&](Box& box) {
        return two_state ? k2_box_gap_ub(box, w, lb_d)
                         : generic_box_gap_ub(box, k, b, eta, w, lb_d);
    };

    Box root;
    root.vars.assign(two_state ? 5 : (static_cast<size_t>(1) + static_cast<size_t>(b) * k) * k, kUnit);
    if (!feasible(root)) return lb_d;
    root.ub = bound(root);

    auto cmp = [](const Box& x, const Box& y) { return x.ub < y.ub; };
    std::priority_queue<Box, std::vector<Box>, decltype(cmp)> heap(cmp);
    heap.push(std::move(root));

    while (!heap.empty()) {
        if (boxes_used >= opt.max_boxes) break;
        Box top = heap.top();
        if (top.ub - lb_d <= eps) {
            achieved = std::min(achieved, std::max(top.ub - lb_d, 0.0));
            return std::max(top.ub, lb_d);
        }
        if (stop_below && top.ub < *stop_below) return std::max(top.ub, lb_d);
        heap.pop();

        size_t widest = 0;
        for (size_t i = 1; i < top.vars.size(); ++i)
            if (top.vars[i].width() > top.vars[widest].width()) widest = i;
        if (top.vars[widest].width() <= 1e-14) {
            achieved = std::min(achieved, std::max(top.ub - lb_d, 0.0));
            return std::max(top.ub, lb_d);
        }
        double mid = 0.5 * (top.vars[widest].lo + top.vars[widest].hi);
        for (int side = 0; side < 2; ++side) {
            Box child;
            child.vars = top.vars;
            child.hint = top.hint; // the parent's tightest competitor usually stays tight
            if (side == 0)
                child.vars[widest].hi = mid;
            else
                child.vars[widest].lo = mid;
            ++boxes_used;
            if (!feasible(child)) continue;
            child.ub = bound(child);
            if (child.ub <= lb_d) continue; // cannot beat the incumbent
            heap.push(std::move(child));
        }
    }
    double top_ub = heap.empty() ? lb_d : heap.top().ub;
    achieved = std::min(achieved, std::max(top_ub - lb_d, 0.0));
    return std::max(top_ub, lb_d);
}

} // namespace

Pfa pad_with_inert_states(const Pfa& A, int k) {
    if (k < A.k) throw input_error("cannot drop states");
    Pfa out;
    out.k = k;
    out.alphabet = A.alphabet;
    out.pi = A.pi;
    out.pi.resize(static_cast<size_t>(k), Rat(0));
    out.eta = A.eta;
    out.eta.resize(static_cast<size_t>(k), 0);
    for (const auto& M : A.P) {
        Matrix<Rat> Q(k);
        for (int i = 0; i < A.k; ++i)
            for (int j = 0; j < A.k; ++j) Q.at(i, j) = M.at(i, j);
        for (int i = A.k; i < k; ++i) Q.at(i, i) = Rat(1);
        out.P.push_back(std::move(Q));
    }
    return out;
}

std::pair<Rat, Pfa> gamma_lower(int k, const Word& w, const GammaOptions& opt) {
    if (k < 1) throw input_error("state count must be positive");
    const int b = w.alphabet.size;
    ExactBest best;

    // baseline: the identity machine ties every word, gap 0
    {
        Pfa ident;
        ident.k = k;
        ident.alphabet = w.alphabet;
        ident.pi.assign(static_cast<size_t>(k), Rat(0));
        ident.pi[0] = Rat(1);
        ident.eta.assign(static_cast<size_t>(k), 0);
        ident.eta[0] = 1;
        for (int s = 0; s < b; ++s) ident.P.push_back(Matrix<Rat>::identity(k));
        consider_exact(best, ident, w, opt.gap_budget);
    }

    for (const auto& seed : opt.seed_machines) {
        if (seed.k != k || seed.alphabet.size < b) continue;
        consider_exact(best, seed, w, opt.gap_budget);
    }

    auto etas = canonical_etas(k);
    for (size_t ei = 0; ei < etas.size(); ++ei) {
        const auto& eta = etas[ei];
        sweep_vertices(best, k, eta, w, opt);

        for (int restart = 0; restart < opt.restarts; ++restart) {
            Rng rng(splitmix64(opt.seed) ^ splitmix64(ei * 1000003 + restart));
            Params p;
            p.k = k;
            p.b = b;
            p.rows.resize(static_cast<size_t>(p.row_count()) * k);
            randomize(p, rng);
            local_search(p, eta, w, 64);
            consider_exact(best, snap_to_rational(p, eta, w.alphabet), w, opt.gap_budget);
        }
    }

    // polish caller seeds through the local search as well
    for (const auto& seed : opt.seed_machines) {
        if (seed.k != k || seed.alphabet.size != b) continue;
        Params p = params_from_pfa(seed);
        local_search(p, seed.eta, w, 64);
        consider_exact(best, snap_to_rational(p, seed.eta, w.alphabet), w, opt.gap_budget);
    }

    return {best.gap, best.witness};
}

double gamma_upper(int k, const Word& w, double eps, const GammaOptions& opt,
                   std::optional<double> stop_below) {
    if (k < 1) throw input_error("state count must be positive");
    if (eps <= 0) throw input_error("eps must be positive");
    if (!within_word_budget(w.alphabet.size, w.size(), opt.gap_budget))
        throw budget_error("word too long for certified bounding");
    if (w.empty() || w.alphabet.size == 1) return 1.0;

    auto [lb, witness] = gamma_lower(k, w, opt);
    double lb_d = lb > 0 ? rat_to_double(lb) : 0.0; // toward zero, stays below the true value

    double ub = 0.0;
    double achieved = 1.0;
    uint64_t boxes = 0;
    for (const auto& eta : canonical_etas(k)) {
        double u = bnb_upper(k, w, eta, eps, lb_d, opt, stop_below, boxes, achieved);
        ub = std::max(ub, u);
    }
    return std::max(ub, lb_d);
}

GapEnclosure gamma_enclosure(int k, const Word& w, const GammaOptions& opt) {
    GapEnclosure out;
    out.k = k;
    out.seed = opt.seed;
    out.restarts = opt.restarts;

    auto [lb, witness] = gamma_lower(k, w, opt);
    out.lb = lb;
    out.lb_witness = witness;

    if (w.empty() || w.alphabet.size == 1) {
        out.ub = 1.0;
        out.eps_achieved = 0.0;
        return out;
    }

    double lb_d = lb > 0 ? rat_to_double(lb) : 0.0;
    double ub = 0.0;
    double achieved = 1.0;
    uint64_t boxes = 0;
    for (const auto& eta : canonical_etas(k)) {
        double u = bnb_upper(k, w, eta, opt.eps, lb_d, opt, std::nullopt, boxes, achieved);
        ub = std::max(ub, u);
    }
    out.ub = std::max(ub, lb_d);
    out.boxes = boxes;
    out.eps_achieved = std::max(out.ub - lb_d, 0.0);
    return out;
}

ApDeltaResult ap_delta(const Word& w, double delta, const GammaOptions& opt) {
    if (delta == 0.0)
        throw input_error("delta = 0 is unsupported: only the positive-gap semi-decision exists");
    if (delta < 0 || delta >= 1) throw input_error("delta must lie in (0,1)");

    auto dfa = ad(w, opt.classical_budget);
    if (!dfa.optimal) throw budget_error("deterministic complexity not settled within budget");
    Pfa dfa_pfa = dfa_to_pfa(dfa.witness);

    std::vector<Pfa> carried = opt.seed_machines;
    for (int k = 2; k <= dfa.value; ++k) {
        GammaOptions local = opt;
        local.seed_machines.clear();
        for (const auto& s : carried) {
            if (s.alphabet.size != w.alphabet.size) continue;
            if (s.k == k)
                local.seed_machines.push_back(s);
            else if (s.k < k)
                local.seed_machines.push_back(pad_with_inert_states(s, k));
        }
        if (k == dfa.value) local.seed_machines.push_back(dfa_pfa);

        GapEnclosure enc;
        enc.k = k;
        enc.seed = opt.seed;
        enc.restarts = opt.restarts;
        auto [lb, witness] = gamma_lower(k, w, local);
        enc.lb = lb;
        enc.lb_witness = witness;
        carried.push_back(witness);

        if (lb > Rat(delta)) {
            enc.ub = 1.0;
            enc.eps_achieved = 1.0 - rat_to_double(lb);
            return {k, k, std::move(enc)};
        }

        double lb_d = lb > 0 ? rat_to_double(lb) : 0.0;
        double achieved = 1.0;
        uint64_t boxes = 0;
        double ub = 0.0;
        for (const auto& eta : canonical_etas(k)) {
            double u = bnb_upper(k, w, eta, opt.eps, lb_d, local, delta, boxes, achieved);
            ub = std::max(ub, u);
        }
        enc.ub = std::max(ub, lb_d);
        enc.boxes = boxes;
        enc.eps_achieved = std::max(enc.ub - lb_d, 0.0);

        if (enc.ub <= delta) continue; // k states certifiedly cannot exceed delta
        return {std::nullopt, k, std::move(enc)};
    }
    // unreachable: the deterministic witness always exceeds any delta < 1
    throw budget_error("no state count certified above delta");
}

std::vector<DiscontinuityPoint> enumerate_E(const Word& w, const GammaOptions& opt) {
    auto dfa = ad(w, opt.classical_budget);
    if (!dfa.optimal) throw budget_error("deterministic complexity not settled within budget");
    std::vector<DiscontinuityPoint> out;
    for (int k = 2; k <= dfa.value - 1; ++k) {
        DiscontinuityPoint p;
        p.k = k;
        p.enclosure = gamma_enclosure(k, w, opt);
        p.certified = p.enclosure.lb > 0 && p.enclosure.ub < 1.0;
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

void compositions(long total, int parts, std::vector<long>& cur,
                  const std::function<void(const std::vector<long>&)>& sink) {
    if (parts == 1) {
        cur.push_back(total);
        sink(cur);
        cur.pop_back();
        return;
    }
    for (long first = 0; first <= total; ++first) {
        cur.push_back(first);
        compositions(total - first, parts - 1, cur, sink);
        cur.pop_back();
    }
}

} // namespace

void dyadic_cover(int k, int alphabet, int n, const std::function<void(const Pfa&)>& sink,
                  uint64_t size_guard) {
    if (k < 1 || alphabet < 1 || n < 0) throw input_error("bad dyadic cover parameters");
    const long den = 1L << (n + 1);

    // number of grid rows = C(den + k - 1, k - 1)
    long double rows = 1;
    for (int i = 1; i <= k - 1; ++i) rows = rows * (den + i) / i;
    long double total = 1;
    for (int r = 0; r < alphabet * k + 1; ++r) {
        total *= rows;
        if (total > static_cast<long double>(size_guard)) throw budget_error("dyadic cover too large");
    }
    total *= static_cast<long double>((uint64_t(1) << k) - 2);
    if (total > static_cast<long double>(size_guard)) throw budget_error("dyadic cover too large");

    std::vector<std::vector<long>> grid_rows;
    std::vector<long> cur;
    compositions(den, k, cur, [&](const std::vector<long>& row) { grid_rows.push_back(row); });

    const int row_count = alphabet * k + 1;
    std::vector<size_t> pick(static_cast<size_t>(row_count), 0);
    while (true) {
        Pfa A;
        A.k = k;
        A.alphabet = Alphabet(alphabet);
        A.pi.reserve(k);
        for (int j = 0; j < k; ++j) A.pi.push_back(make_rat(grid_rows[pick[0]][j], den));
        for (int sigma = 0; sigma < alphabet; ++sigma) {
            Matrix<Rat> M(k);
            for (int i = 0; i < k; ++i) {
                const auto& row = grid_rows[pick[1 + sigma * k + i]];
                for (int j = 0; j < k; ++j) M.at(i, j) = make_rat(row[j], den);
            }
            A.P.push_back(std::move(M));
        }
        for (uint64_t em = 1; em + 1 < (uint64_t(1) << k); ++em) {
            A.eta.assign(static_cast<size_t>(k), 0);
            for (int j = 0; j < k; ++j) A.eta[j] = static_cast<int>((em >> j) & 1);
            sink(A);
        }
        size_t i = 0;
        while (i < pick.size() && pick[i] + 1 == grid_rows.size()) pick[i++] = 0;
        if (i == pick.size()) break;
        ++pick[i];
    }
}

} // namespace apc
