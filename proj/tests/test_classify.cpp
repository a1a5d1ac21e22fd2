#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "apc/classify.hpp"
#include "fixtures.hpp"

using namespace apc;
using fixtures::W;

namespace {

const Ifs2 kMidRun{make_rat(1, 2), make_rat(-1, 2), Rat(0), make_rat(1, 2), Rat(1)}; // 0 1^m 0 witness

struct BruteEntry {
    Rat maxv, minv;
    Word maxarg, minarg;
    int maxcount = 0, mincount = 0;
};

// Direct sweep of all 2^len words per length.
std::vector<BruteEntry> brute_trace(const Ifs2& I, size_t L) {
    std::vector<BruteEntry> out(L);
    for (size_t len = 1; len <= L; ++len) {
        BruteEntry e;
        std::vector<uint8_t> w(len, 0);
        bool first = true;
        while (true) {
            Word word(Alphabet(2), w);
            Rat v = ifs2_rho(I, word);
            if (first || v > e.maxv) {
                e.maxv = v;
                e.maxarg = word;
                e.maxcount = 1;
            } else if (v == e.maxv) {
                e.maxcount = std::min(2, e.maxcount + 1);
            }
            if (first || v < e.minv) {
                e.minv = v;
                e.minarg = word;
                e.mincount = 1;
            } else if (v == e.minv) {
                e.mincount = std::min(2, e.mincount + 1);
            }
            first = false;
            size_t i = len;
            while (i > 0 && w[i - 1] == 1) w[--i] = 0;
            if (i == 0) break;
            w[i - 1] = 1;
        }
        out[len - 1] = std::move(e);
    }
    return out;
}

Ifs2 random_valid_ifs2(std::mt19937_64& rng, int denom = 12) {
    auto rat01 = [&](long den) { return make_rat(static_cast<long>(rng() % (den + 1)), den); };
    while (true) {
        Rat a = rat01(denom), c = rat01(denom);
        Rat bb = -a + rat01(denom); // slope in [-a, 1-a]
        Rat dd = -c + rat01(denom);
        Ifs2 I{a, bb, c, dd, rat01(denom)};
        if (validate_ifs2(I).empty()) return I;
    }
}

} // namespace

TEST_CASE("is_class2 spec'd shapes") {
    auto f1 = is_class2(W("000111"));
    REQUIRE(f1.has_value());
    CHECK(f1->form == Class2Form::InJm);
    CHECK(f1->i == 0);
    CHECK(f1->n == 3);
    CHECK(f1->m == 3);

    auto f2 = is_class2(W("0110"));
    REQUIRE(f2.has_value());
    CHECK(f2->form == Class2Form::InJmI);
    CHECK(f2->i == 0);
    CHECK(f2->n == 1);
    CHECK(f2->m == 2);

    CHECK(!is_class2(W("0100")).has_value());
    CHECK(is_class2(W("00101")).has_value()); // 0^2 1 (01)^1
    CHECK(!is_class2(W("110100")).has_value());
}

TEST_CASE("is_class2 is deterministic and self-consistent") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 200; ++t) {
        auto form = static_cast<Class2Form>(rng() % 4);
        int i = static_cast<int>(rng() % 2), n = static_cast<int>(rng() % 5), m = static_cast<int>(rng() % 5);
        Word w = render_family(form, i, n, m);
        auto back = is_class2(w);
        REQUIRE(back.has_value());
        CHECK(render_family(*back) == w);
    }
}

TEST_CASE("extremal trace of the 0 1^m 0 witness") {
    auto tr = extremal_trace(kMidRun, 6);
    CHECK(tr[3].max_arg == W("0110"));
    CHECK(tr[3].max_unique);
    for (const auto& e : tr) CHECK(e.max_unique);
    CHECK(tr[3].max_value == make_rat(1, 2));
}

TEST_CASE("identity maps never give unique extrema past length zero") {
    Ifs2 I{Rat(0), Rat(1), Rat(0), Rat(1), make_rat(2, 5)};
    for (const auto& e : extremal_trace(I, 5)) {
        CHECK(!e.max_unique);
        CHECK(!e.min_unique);
        CHECK(e.max_value == make_rat(2, 5));
        CHECK(e.min_value == make_rat(2, 5));
    }
}

TEST_CASE("trace equals the full brute force, including uniqueness and argmax") {
    std::mt19937_64 rng(73);
    int systems = 0;
    while (systems < 60) {
        Ifs2 I = random_valid_ifs2(rng);
        ++systems;
        size_t L = 12;
        auto fast = extremal_trace(I, L);
        auto slow = brute_trace(I, L);
        for (size_t idx = 0; idx < L; ++idx) {
            CHECK(fast[idx].max_value == slow[idx].maxv);
            CHECK(fast[idx].min_value == slow[idx].minv);
            CHECK(fast[idx].max_unique == (slow[idx].maxcount == 1));
            CHECK(fast[idx].min_unique == (slow[idx].mincount == 1));
            CHECK(fast[idx].max_arg == slow[idx].maxarg);
            CHECK(fast[idx].min_arg == slow[idx].minarg);
        }
    }
}

TEST_CASE("witnessed language of the 0 1^m 0 witness") {
    auto words = witnessed_language(kMidRun, 9);
    for (int m = 0; m + 2 <= 9; ++m) {
        Word member = render_family(Class2Form::InJmI, 0, 1, m);
        CHECK(std::count(words.begin(), words.end(), member) == 1);
    }
}

TEST_CASE("commuting maps witness only constant strings") {
    // same fixed point 1/2, different slopes
    Ifs2 I{make_rat(1, 4), make_rat(1, 2), make_rat(3, 8), make_rat(1, 4), Rat(1)};
    REQUIRE(ifs2_diagnostics(I).label == Ifs2Case::Commuting);
    for (const auto& w : witnessed_language(I, 10)) {
        bool constant = true;
        for (auto c : w.letters)
            if (c != w[0]) constant = false;
        CHECK(constant);
    }
}

TEST_CASE("witness_class2 on the spec'd examples") {
    SUBCASE("0011") {
        auto full = witness_class2_full(W("0011"));
        CHECK(full.family.form == Class2Form::InJm);
        CHECK(full.verified_up_to == 12);
        auto tr = extremal_trace(full.ifs, 4);
        CHECK(tr[3].max_arg == W("0011"));
        CHECK(tr[3].max_unique);
    }
    SUBCASE("01110") {
        auto I = witness_class2(W("01110"));
        auto tr = extremal_trace(I, 5);
        CHECK(tr[4].max_arg == W("01110"));
        CHECK(tr[4].max_unique);
    }
    SUBCASE("001 then alternating") {
        Word w = render_family(Class2Form::InJIjM, 0, 2, 2); // 001(01)^2
        auto I = witness_class2(w);
        auto tr = extremal_trace(I, w.size());
        CHECK(tr[w.size() - 1].max_arg == w);
        CHECK(tr[w.size() - 1].max_unique);
    }
}

TEST_CASE("witness_class2 verifies across every classified word up to length 8") {
    int classified = 0;
    for (size_t n = 0; n <= 8; ++n) {
        std::vector<uint8_t> w(n, 0);
        while (true) {
            Word word(Alphabet(2), w);
            if (auto fam = is_class2(word)) {
                ++classified;
                auto full = witness_class2_full(word);
                if (n >= 1) {
                    auto tr = extremal_trace(full.ifs, n);
                    CHECK(tr[n - 1].max_unique);
                    CHECK(tr[n - 1].max_arg == word);
                }
            }
            size_t i = 0;
            while (i < n && w[i] == 1) w[i++] = 0;
            if (i == n) break;
            w[i] = 1;
        }
    }
    MESSAGE("classified words up to length 8: ", classified);
    CHECK(classified > 100);
}

TEST_CASE("forward direction: random systems only witness classified shapes") {
    std::mt19937_64 rng(79);
    for (int t = 0; t < 120; ++t) {
        Ifs2 I = random_valid_ifs2(rng);
        for (const auto& w : witnessed_language(I, 12)) CHECK(is_class2(w).has_value());
    }
}

TEST_CASE("family closure for the even-prefix alternating family") {
    // if 0^{2n}1(01)^m is witnessed for two consecutive m, the whole tail follows
    std::mt19937_64 rng(83);
    int found = 0;
    for (int t = 0; t < 400 && found < 12; ++t) {
        Ifs2 I = random_valid_ifs2(rng);
        size_t L = 13;
        auto words = witnessed_language(I, L);
        std::map<size_t, Word> by_len;
        for (const auto& w : words) by_len[w.size()] = w;
        for (int n2 = 2; n2 <= 4; n2 += 2) {
            for (int m = 0; m + 1 < 4; ++m) {
                Word a = render_family(Class2Form::InJIjM, 0, n2, m);
                Word b = render_family(Class2Form::InJIjM, 0, n2, m + 1);
                if (b.size() > L) continue;
                auto ita = by_len.find(a.size());
                auto itb = by_len.find(b.size());
                if (ita == by_len.end() || itb == by_len.end()) continue;
                if (ita->second != a || itb->second != b) continue;
                ++found;
                for (int mp = m + 2;; ++mp) {
                    Word c = render_family(Class2Form::InJIjM, 0, n2, mp);
                    if (c.size() > L) break;
                    auto itc = by_len.find(c.size());
                    REQUIRE(itc != by_len.end());
                    CHECK(itc->second == c);
                }
            }
        }
    }
    MESSAGE("closure instances exercised: ", found);
}

TEST_CASE("regular tail reports") {
    SUBCASE("pure constants") {
        std::vector<Word> ws;
        for (size_t l = 1; l <= 10; ++l) ws.push_back(repeat_word(Alphabet(2), 1, l));
        auto r = check_regular_tail(ws, 10);
        CHECK(r.matched);
        CHECK(r.bullet == "1^n");
    }
    SUBCASE("0 1^m 0 family") {
        auto r = check_regular_tail(witnessed_language(kMidRun, 10), 10);
        CHECK(r.matched);
        CHECK(r.bullet.find("0^1 1^m 0") != std::string::npos);
    }
    SUBCASE("empty") {
        auto r = check_regular_tail({}, 10);
        CHECK(r.matched);
        CHECK(r.bullet == "nothing");
    }
}

TEST_CASE("padding the alphabet changes nothing about witnessed strings") {
    auto padded = pad_alphabet(kMidRun, 3);
    REQUIRE(validate_ifs(padded).empty());

    // brute force over all ternary words: per length, unique maxima still
    // binary and identical to the binary system's
    size_t L = 8;
    auto binary_words = witnessed_language(kMidRun, L);
    std::map<size_t, Word> expect;
    for (const auto& w : binary_words) expect[w.size()] = w;

    for (size_t len = 1; len <= L; ++len) {
        Rat best;
        Word bestw;
        int count = 0;
        std::vector<uint8_t> w(len, 0);
        bool first = true;
        while (true) {
            Word word(Alphabet(3), w);
            Rat v = ifs_rho(padded, word);
            if (first || v > best) {
                best = v;
                bestw = word;
                count = 1;
            } else if (v == best) {
                ++count;
            }
            first = false;
            size_t i = len;
            while (i > 0 && w[i - 1] == 2) w[--i] = 0;
            if (i == 0) break;
            ++w[i - 1];
        }
        auto it = expect.find(len);
        if (it != expect.end()) {
            CHECK(count == 1);
            CHECK(bestw.letters == it->second.letters);
        } else {
            CHECK(count != 1);
        }
    }
}

TEST_CASE("padding with b=2 is the plain embedding") {
    auto padded = pad_alphabet(kMidRun, 2);
    CHECK(padded == ifs2_to_ifs(kMidRun));
}
