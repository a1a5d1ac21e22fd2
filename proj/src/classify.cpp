#include "apc/classify.hpp"

#include <algorithm>
#include <functional>

#include "apc/errors.hpp"

namespace apc {

const char* class2_form_name(Class2Form f) {
    switch (f) {
        case Class2Form::InJm: return "in_jm";
        case Class2Form::InJmI: return "in_jm_i";
        case Class2Form::InJiM: return "in_ji_m";
        case Class2Form::InJIjM: return "in_j_ij_m";
    }
    return "?";
}

Word render_family(Class2Form form, int i, int n, int m) {
    std::vector<uint8_t> s;
    auto put = [&](int c, int times) {
        for (int t = 0; t < times; ++t) s.push_back(static_cast<uint8_t>(c));
    };
    const int j = 1 - i;
    put(i, n);
    switch (form) {
        case Class2Form::InJm:
            put(j, m);
            break;
        case Class2Form::InJmI:
            put(j, m);
            put(i, 1);
            break;
        case Class2Form::InJiM:
            for (int t = 0; t < m; ++t) {
                put(j, 1);
                put(i, 1);
            }
            break;
        case Class2Form::InJIjM:
            put(j, 1);
            for (int t = 0; t < m; ++t) {
                put(i, 1);
                put(j, 1);
            }
            break;
    }
    return Word(Alphabet(2), std::move(s));
}

std::optional<WitnessFamily> is_class2(const Word& w) {
    if (w.alphabet.size != 2) throw input_error("classification expects a binary word");
    const int len = static_cast<int>(w.size());
    for (Class2Form form :
         {Class2Form::InJm, Class2Form::InJmI, Class2Form::InJiM, Class2Form::InJIjM}) {
        for (int i = 0; i <= 1; ++i) {
            for (int n = len; n >= 0; --n) {
                int rest = len - n;
                int m = -1;
                switch (form) {
                    case Class2Form::InJm: m = rest; break;
                    case Class2Form::InJmI: m = rest - 1; break;
                    case Class2Form::InJiM: m = rest % 2 == 0 ? rest / 2 : -1; break;
                    case Class2Form::InJIjM: m = rest >= 1 && (rest - 1) % 2 == 0 ? (rest - 1) / 2 : -1; break;
                }
                if (m < 0) continue;
                if (render_family(form, i, n, m) == w) return WitnessFamily{form, i, n, m};
            }
        }
    }
    return std::nullopt;
}

namespace {

struct Candidate {
    Rat value;
    Word arg;
    int count; // attaining words, capped at 2
};

void merge_best(std::vector<Candidate>& cands, bool want_max, Rat& value, Word& arg, int& count) {
    size_t best = 0;
    for (size_t i = 1; i < cands.size(); ++i) {
        if (want_max ? cands[i].value > cands[best].value : cands[i].value < cands[best].value)
            best = i;
    }
    value = cands[best].value;
    count = 0;
    bool have_arg = false;
    for (const auto& c : cands) {
        if (c.value != value) continue;
        count = std::min(2, count + c.count);
        if (!have_arg || c.arg < arg) {
            arg = c.arg;
            have_arg = true;
        }
    }
}

} // namespace

std::vector<ExtremalEntry> extremal_trace(const Ifs2& I, size_t L) {
    auto errs = validate_ifs2(I);
    if (!errs.empty()) throw input_error("invalid Ifs2: " + errs.front());

    std::vector<ExtremalEntry> out;
    out.reserve(L);
    Rat maxv = I.x0, minv = I.x0;
    Word maxarg(Alphabet(2), {}), minarg(Alphabet(2), {});
    int maxcount = 1, mincount = 1;

    for (size_t len = 1; len <= L; ++len) {
        std::vector<Candidate> maxc, minc;
        for (int sigma = 0; sigma < 2; ++sigma) {
            Rat slope = I.slope(sigma);
            if (slope > 0) {
                maxc.push_back({I.apply(sigma, maxv), maxarg.append(static_cast<uint8_t>(sigma)), maxcount});
                minc.push_back({I.apply(sigma, minv), minarg.append(static_cast<uint8_t>(sigma)), mincount});
            } else if (slope < 0) {
                maxc.push_back({I.apply(sigma, minv), minarg.append(static_cast<uint8_t>(sigma)), mincount});
                minc.push_back({I.apply(sigma, maxv), maxarg.append(static_cast<uint8_t>(sigma)), maxcount});
            } else {
                // a flat map sends every length-(len-1) word to its offset
                Word all0 = repeat_word(Alphabet(2), 0, len - 1).append(static_cast<uint8_t>(sigma));
                int cnt = len == 1 ? 1 : 2;
                maxc.push_back({I.offset(sigma), all0, cnt});
                minc.push_back({I.offset(sigma), all0, cnt});
            }
        }
        ExtremalEntry e{Rat(0), Word(), false, Rat(0), Word(), false};
        merge_best(maxc, true, e.max_value, e.max_arg, maxcount);
        merge_best(minc, false, e.min_value, e.min_arg, mincount);
        e.max_unique = maxcount == 1;
        e.min_unique = mincount == 1;
        maxv = e.max_value;
        minv = e.min_value;
        maxarg = e.max_arg;
        minarg = e.min_arg;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Word> witnessed_language(const Ifs2& I, size_t L) {
    std::vector<Word> out;
    for (const auto& e : extremal_trace(I, L))
        if (e.max_unique) out.push_back(e.max_arg);
    return out;
}

namespace {

Rat rpow(const Rat& q, long e) {
    if (e < 0) {
        if (q == 0) throw input_error("zero to a negative power");
        return Rat(1) / rpow(q, -e);
    }
    Rat r(1);
    for (long i = 0; i < e; ++i) r *= q;
    return r;
}

using OptIfs = std::optional<Ifs2>;
using Builder = std::function<OptIfs(int)>;

// Midpoint of (lo,hi) cut down to (range_lo, range_hi); empty -> nothing.
OptIfs with_x0(Ifs2 base, Rat lo, Rat hi, Rat range_lo, Rat range_hi) {
    Rat l = std::max(lo, range_lo), h = std::min(hi, range_hi);
    if (!(l < h)) return std::nullopt;
    base.x0 = (l + h) / 2;
    if (!validate_ifs2(base).empty()) return std::nullopt;
    return base;
}

Builder flip(Builder inner) {
    return [inner = std::move(inner)](int t) -> OptIfs {
        auto r = inner(t);
        if (r) return r->bitflip();
        return std::nullopt;
    };
}

Builder fixed(Ifs2 I) {
    return [I = std::move(I)](int t) -> OptIfs {
        if (t > 0) return std::nullopt;
        return I;
    };
}

// Dominant increasing map on the given letter; witnesses c^len for all len.
Builder build_const(int letter) {
    Ifs2 I = letter == 1 ? Ifs2{Rat(0), make_rat(1, 4), make_rat(1, 2), make_rat(1, 2), make_rat(1, 2)}
                         : Ifs2{make_rat(1, 2), make_rat(1, 2), Rat(0), make_rat(1, 4), make_rat(1, 2)};
    return fixed(std::move(I));
}

// Non-intersecting negative slopes; the dominant letter leads the
// alternation. letter == 1 witnesses (01)^m and 1(01)^m.
Builder build_alternation(int letter) {
    Ifs2 I{make_rat(3, 10), make_rat(-1, 4), make_rat(9, 10), make_rat(-1, 2), make_rat(1, 2)};
    if (letter == 0) I = I.bitflip();
    return fixed(std::move(I));
}

// 0^n 1^m via a slope-through-zero map and a nearly flat rising one;
// the steep map must stay above the crossing for exactly n steps.
Builder build_run_run(int n) {
    return [n](int t) -> OptIfs {
        Rat eps = make_rat(1, 2L * (n + 1)) / rpow(Rat(2), t);
        Rat b = 1 - eps;
        Rat d = eps / 4;
        Rat c = (b - d) / 2; // crossing at exactly 1/2
        Ifs2 base{Rat(0), b, c, d, Rat(0)};
        Rat ix = (c - base.a) / (b - d);
        if (!(rpow(b, n - 1) > ix)) return std::nullopt; // interval still above 1
        return with_x0(base, ix / rpow(b, n - 1), ix / rpow(b, n), ix, Rat(1));
    };
}

// 1^{2n} 0^m 1, mixed slopes decreasing the crossing, started below it.
Builder build_even_run_flip(int n) {
    return [n](int t) -> OptIfs {
        Rat a = make_rat(1, 8), b = make_rat(1, 4);
        Rat eps = make_rat(1, 8L * (n + 1)) / rpow(Rat(2), t);
        Rat d = eps - 1;
        Rat c = (1 - d) / 2;
        Ifs2 base{a, b, c, d, Rat(0)};
        Rat r1 = c / (1 - d);
        Rat F = (a * (1 + b) - c * (1 + d)) / (d * d - b * b);
        Rat ix = (c - a) / (b - d);
        if (!(F < r1)) return std::nullopt;
        return with_x0(base, r1 - (r1 - F) / rpow(d, 2L * n), r1 - (r1 - F) / rpow(d, 2L * (n - 1)),
                       Rat(0), ix);
    };
}

// 1^{2n-1} 0^m 1, mixed slopes, started above the crossing.
Builder build_odd_run_flip(int n) {
    return [n](int t) -> OptIfs {
        Rat a = make_rat(1, 8), b = make_rat(1, 4);
        Rat eps = make_rat(1, 8L * (n + 1)) / rpow(Rat(2), t);
        Rat d = eps - 1;
        Rat c = (1 - d) / 2;
        Ifs2 base{a, b, c, d, Rat(0)};
        Rat r1 = c / (1 - d);
        Rat E = (a * (1 + b) - c * (1 + d)) / (d * d - b * b);
        Rat ix = (c - a) / (b - d);
        if (!(E < r1)) return std::nullopt;
        Rat ad = -d; // |d|
        return with_x0(base, r1 + (r1 - E) / rpow(ad, 2L * n - 3), r1 + (r1 - E) / rpow(ad, 2L * n - 1),
                       ix, Rat(1));
    };
}

// 1^{2n} (01)^m, both slopes negative, started above the crossing.
Builder build_even_run_alt(int n) {
    return [n](int t) -> OptIfs {
        Rat a = make_rat(3, 8), b = make_rat(-1, 4);
        Rat eps = make_rat(1, 8L * (n + 1)) / rpow(Rat(2), t);
        Rat d = eps - 1;
        Rat c = (1 - d) / 2;
        Ifs2 base{a, b, c, d, Rat(0)};
        Rat r1 = c / (1 - d);
        Rat ix = (c - a) / (b - d);
        if (!(r1 < ix)) return std::nullopt;
        return with_x0(base, r1 + (ix - r1) / rpow(d, 2L * (n - 1)), r1 + (ix - r1) / rpow(d, 2L * n),
                       ix, Rat(1));
    };
}

// 1^{2n+1} (01)^m, both slopes negative, started below the lower fixed point.
Builder build_odd_run_alt(int n) {
    return [n](int t) -> OptIfs {
        Rat a = make_rat(3, 8), b = make_rat(-1, 4);
        Rat eps = make_rat(1, 8L * (n + 1)) / rpow(Rat(2), t);
        Rat d = eps - 1;
        Rat c = (1 - d) / 2;
        Ifs2 base{a, b, c, d, Rat(0)};
        Rat r0 = a / (1 - b);
        Rat r1 = c / (1 - d);
        Rat ix = (c - a) / (b - d);
        if (!(r1 < ix)) return std::nullopt;
        Rat ad = -d;
        return with_x0(base, r1 - (ix - r1) / rpow(ad, 2L * n + 1), r1 - (ix - r1) / rpow(ad, 2L * n - 1),
                       Rat(0), r0);
    };
}

// 1^{2n+1} 0 (10)^m, both slopes negative increasing the crossing,
// started above the upper fixed point.
Builder build_odd_run_alt_low(int n) {
    return [n](int t) -> OptIfs {
        Rat a = make_rat(3, 4), b = make_rat(-1, 4);
        Rat eps = make_rat(1, 8L * (n + 1)) / rpow(Rat(2), t);
        Rat d = eps - 1;
        Rat c = (1 - d) / 2;
        Ifs2 base{a, b, c, d, Rat(0)};
        Rat r0 = a / (1 - b);
        Rat r1 = c / (1 - d);
        Rat ix = (c - a) / (b - d);
        if (!(ix < r1)) return std::nullopt;
        Rat ad = -d;
        return with_x0(base, r1 + (r1 - ix) / rpow(ad, 2L * n - 1), r1 + (r1 - ix) / rpow(ad, 2L * n + 1),
                       r0, Rat(1));
    };
}

// 0^{2n} 1 (01)^m, both slopes negative and close to -1; all coefficients
// ride the same parameter so the crossing interval survives the limit.
Builder build_even_zero_run_alt(int n) {
    return [n](int t) -> OptIfs {
        Rat eps = make_rat(1, 8L * (n + 1)) / rpow(Rat(2), t);
        Rat b = eps - 1;
        Rat d = eps / 2 - 1;
        Rat c = 1 - eps / 4;
        Rat r0 = make_rat(1, 2) - eps / 16;
        Rat a = (1 - b) * r0;
        Ifs2 base{a, b, c, d, Rat(0)};
        if (!validate_ifs2(base).empty()) return std::nullopt;
        Rat r1 = c / (1 - d);
        Rat ix = (c - a) / (b - d);
        if (!(r0 < r1 && r1 < ix)) return std::nullopt;
        return with_x0(base, r0 + (ix - r0) / rpow(b, 2L * n - 2), r0 + (ix - r0) / rpow(b, 2L * n),
                       ix, Rat(1));
    };
}

std::vector<Builder> route(const WitnessFamily& fam) {
    const int i = fam.i, n = fam.n;
    std::vector<Builder> out;
    auto oriented = [&](Builder b) { return i == 1 ? b : flip(b); };       // builders phrased for i=1
    auto oriented0 = [&](Builder b) { return i == 0 ? b : flip(b); };      // builders phrased for i=0
    switch (fam.form) {
        case Class2Form::InJm:
            if (n == 0)
                out.push_back(build_const(1 - i)); // family j^m
            else
                out.push_back(oriented0(build_run_run(n)));
            break;
        case Class2Form::InJmI:
            if (n == 1) {
                Ifs2 mid_run{make_rat(1, 2), make_rat(-1, 2), Rat(0), make_rat(1, 2), Rat(1)};
                out.push_back(oriented0(fixed(mid_run))); // witnesses 0 1^m 0
            }
            if (n % 2 == 0)
                out.push_back(oriented(build_even_run_flip(n / 2)));
            else
                out.push_back(oriented(build_odd_run_flip((n + 1) / 2)));
            break;
        case Class2Form::InJiM:
            if (n == 0) {
                out.push_back(build_alternation(i)); // (ji)^m is led into by j, i closes each pair
            } else if (n % 2 == 0) {
                out.push_back(oriented(build_even_run_alt(n / 2)));
            } else {
                out.push_back(oriented(build_odd_run_alt((n - 1) / 2)));
                if (n == 1) out.push_back(build_alternation(i));
            }
            break;
        case Class2Form::InJIjM:
            if (n % 2 == 0)
                out.push_back(oriented0(build_even_zero_run_alt(n / 2)));
            else
                out.push_back(oriented(build_odd_run_alt_low((n - 1) / 2)));
            break;
    }
    return out;
}

bool verify_witness(const Ifs2& I, const WitnessFamily& fam, size_t L) {
    auto tr = extremal_trace(I, L);
    for (int mp = 0;; ++mp) {
        Word member = render_family(fam.form, fam.i, fam.n, mp);
        if (member.size() > L) break;
        if (member.empty()) continue;
        const auto& e = tr[member.size() - 1];
        if (!e.max_unique || e.max_arg != member) return false;
    }
    return true;
}

} // namespace

ClassWitness witness_class2_full(const Word& w) {
    auto famo = is_class2(w);
    if (!famo) throw input_error("word has no two-state witness shape: " + w.str());
    const WitnessFamily fam = *famo;
    const size_t L = 2 * w.size() + 4;

    for (const auto& builder : route(fam)) {
        for (int t = 0; t <= 64; ++t) {
            auto cand = builder(t);
            if (!cand) continue;
            if (!validate_ifs2(*cand).empty()) continue;
            if (verify_witness(*cand, fam, L)) return {fam, *cand, L};
        }
    }
    throw budget_error("witness construction hit the parameter schedule cap for " + w.str());
}

Ifs2 witness_class2(const Word& w) { return witness_class2_full(w).ifs; }

namespace {

int leading_run(const Word& w, uint8_t c) {
    int n = 0;
    while (n < static_cast<int>(w.size()) && w[n] == c) ++n;
    return n;
}

bool alternates_from(const Word& w, size_t from) {
    for (size_t t = from + 1; t < w.size(); ++t)
        if (w[t] == w[t - 1]) return false;
    return true;
}

// One corollary bullet instantiated at (c, n); length-le-n words may still
// be plain runs of c while the pattern is getting started.
bool matches_bullet(const Word& w, int pattern, uint8_t c, int n) {
    const int len = static_cast<int>(w.size());
    const uint8_t d = static_cast<uint8_t>(1 - c);
    switch (pattern) {
        case 0: // c^len
            return leading_run(w, c) == len;
        case 1: // c^n d^m
            if (len <= n) return leading_run(w, c) == len;
            if (leading_run(w, c) != n) return false;
            for (int t = n; t < len; ++t)
                if (w[t] != d) return false;
            return true;
        case 2: // c^n then alternation starting with d
            if (len <= n) return leading_run(w, c) == len;
            if (std::min(leading_run(w, c), n) != n) return false;
            if (w[n] != d) return false;
            return alternates_from(w, static_cast<size_t>(n));
        case 3: // c^n d^m c (single trailing c)
            if (len <= n + 1) return leading_run(w, c) == len;
            if (leading_run(w, c) != n) return false;
            if (w[len - 1] != c) return false;
            for (int t = n; t < len - 1; ++t)
                if (w[t] != d) return false;
            return true;
        default:
            return false;
    }
}

std::string bullet_name(int pattern, uint8_t c, int n) {
    std::string cs(1, static_cast<char>('0' + c));
    std::string ds(1, static_cast<char>('1' - c));
    switch (pattern) {
        case 0: return cs + "^n";
        case 1: return cs + "^" + std::to_string(n) + " " + ds + "^m";
        case 2: return cs + "^" + std::to_string(n) + " then alternating " + ds + cs + "...";
        case 3: return cs + "^" + std::to_string(n) + " " + ds + "^m " + cs;
    }
    return "?";
}

std::optional<std::string> match_group(const std::vector<Word>& words, size_t L) {
    if (words.empty()) return std::string("nothing");
    for (int pattern = 0; pattern <= 3; ++pattern)
        for (uint8_t c = 0; c <= 1; ++c)
            for (int n = 0; n <= static_cast<int>(L); ++n) {
                bool all = true;
                for (const auto& w : words)
                    if (!matches_bullet(w, pattern, c, n)) {
                        all = false;
                        break;
                    }
                if (all) return bullet_name(pattern, c, n);
                if (pattern == 0) break; // constants ignore n
            }
    return std::nullopt;
}

} // namespace

TailReport check_regular_tail(const std::vector<Word>& words, size_t L) {
    std::vector<Word> tail;
    size_t lo = L > 6 ? L - 6 : 1;
    for (const auto& w : words)
        if (w.size() >= lo && w.size() <= L) tail.push_back(w);

    if (auto m = match_group(tail, L)) return {true, *m};

    // orbits of the two parities can settle into different bullets
    std::vector<Word> even, odd;
    for (const auto& w : tail) (w.size() % 2 == 0 ? even : odd).push_back(w);
    auto me = match_group(even, L);
    auto mo = match_group(odd, L);
    if (me && mo) return {true, *me + " + " + *mo};
    return {false, "no match"};
}

Ifs pad_alphabet(const Ifs2& I, int b) {
    if (b < 2) throw input_error("padded alphabet must have at least 2 letters");
    Ifs out = ifs2_to_ifs(I);
    out.alphabet = Alphabet(b);
    for (int sigma = 2; sigma < b; ++sigma) {
        Ifs::Map m{{(I.a + I.c) / 2}, Matrix<Rat>(1)};
        m.B.at(0, 0) = (I.b + I.d) / 2;
        out.maps.push_back(std::move(m));
    }
    return out;
}

} // namespace apc
