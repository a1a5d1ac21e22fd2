#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apc/ifs.hpp"
#include "fixtures.hpp"

using namespace apc;
using fixtures::W;

namespace {

Pfa random_pfa(std::mt19937_64& rng, int k, int alphabet, int max_accepting) {
    std::uniform_int_distribution<int> d(0, 5);
    auto row = [&](int len) {
        std::vector<Rat> r(len);
        long sum = 0;
        std::vector<long> raw(len);
        for (auto& x : raw) {
            x = d(rng);
            sum += x;
        }
        if (sum == 0) {
            raw[static_cast<size_t>(rng() % len)] = 1;
            sum = 1;
        }
        for (int i = 0; i < len; ++i) r[i] = make_rat(raw[i], sum);
        return r;
    };
    Pfa A;
    A.k = k;
    A.alphabet = Alphabet(alphabet);
    A.pi = row(k);
    for (int s = 0; s < alphabet; ++s) {
        Matrix<Rat> M(k);
        for (int i = 0; i < k; ++i) {
            auto r = row(k);
            for (int j = 0; j < k; ++j) M.at(i, j) = r[j];
        }
        A.P.push_back(std::move(M));
    }
    A.eta.assign(static_cast<size_t>(k), 0);
    int naccept = 1 + static_cast<int>(rng() % std::max(1, std::min(max_accepting, k - 1)));
    while (naccept > 0) {
        size_t s = rng() % k;
        if (!A.eta[s]) {
            A.eta[s] = 1;
            --naccept;
        }
    }
    return A;
}

Ifs2 random_valid_ifs2(std::mt19937_64& rng, int denom = 16) {
    auto rat01 = [&](long den) { return make_rat(static_cast<long>(rng() % (den + 1)), den); };
    while (true) {
        Rat a = rat01(denom), c = rat01(denom);
        // slope range keeps a and a+b inside [0,1]
        Rat bhi = 1 - a, blo = -a;
        Rat b = blo + (bhi - blo) * rat01(denom);
        Rat dhi = 1 - c, dlo = -c;
        Rat d = dlo + (dhi - dlo) * rat01(denom);
        Ifs2 I{a, b, c, d, rat01(denom)};
        if (validate_ifs2(I).empty()) return I;
    }
}

} // namespace

TEST_CASE("two-state decomposition of the 0110 witness") {
    auto I = pfa_to_ifs2(fixtures::two_state_0110());
    CHECK(I.a == make_rat(1, 2));
    CHECK(I.b == make_rat(-1, 2));
    CHECK(I.c == Rat(0));
    CHECK(I.d == make_rat(1, 2));
    CHECK(I.x0 == Rat(1));
    CHECK(ifs2_rho(I, W("0110")) == make_rat(1, 2));
    CHECK(ifs2_rho(I, Word(Alphabet(2), {})) == Rat(1));
}

TEST_CASE("identity transitions give identity maps") {
    auto A = fixtures::identity_pfa(3, 2, {make_rat(1, 2), make_rat(1, 4), make_rat(1, 4)}, {1, 0, 0});
    Ifs I = pfa_to_ifs(A);
    for (const auto& m : I.maps) {
        for (const auto& x : m.offset) CHECK(x == 0);
        CHECK(m.B == Matrix<Rat>::identity(I.dim));
    }
    for (auto s : {"", "0", "01", "110"})
        CHECK(ifs_rho(I, W(s)) == rho(A, W(s)));
}

TEST_CASE("identity Ifs2 leaves x0 fixed") {
    Ifs2 I{Rat(0), Rat(1), Rat(0), Rat(1), make_rat(3, 7)};
    for (auto s : {"0", "0101", "111"})
        CHECK(ifs2_rho(I, W(s)) == make_rat(3, 7));
}

TEST_CASE("three-state 0110 machine round-trips through its Ifs") {
    auto A = fixtures::three_state_0110();
    Ifs I = pfa_to_ifs(A);
    std::mt19937_64 rng(5);
    for (size_t len = 0; len <= 6; ++len)
        for (int t = 0; t < 8; ++t) {
            std::vector<uint8_t> ls(len);
            for (auto& c : ls) c = static_cast<uint8_t>(rng() % 2);
            Word w(Alphabet(2), ls);
            CHECK(ifs_rho(I, w) == rho(A, w));
        }
}

TEST_CASE("ifs_to_pfa inverts the decomposition") {
    Ifs2 I{make_rat(1, 2), make_rat(-1, 2), Rat(0), make_rat(1, 2), Rat(1)};
    Pfa A = ifs2_to_pfa(I);
    CHECK(A == fixtures::two_state_0110());
    CHECK(pfa_to_ifs2(A) == I);
}

TEST_CASE("round-trip exactness on random machines") {
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int t = 0; t < 500; ++t) {
        int k = 2 + static_cast<int>(rng() % 3);
        int b = 2 + static_cast<int>(rng() % 2);
        Pfa A = random_pfa(rng, k, b, k - 1);
        Ifs I = pfa_to_ifs(A);
        for (int u = 0; u < 6; ++u) {
            size_t len = rng() % 7;
            std::vector<uint8_t> ls(len);
            for (auto& c : ls) c = static_cast<uint8_t>(rng() % b);
            Word w(Alphabet(b), ls);
            CHECK(ifs_rho(I, w) == rho(A, w));
            ++checked;
        }
        // rebuilt machine carries the same acceptance function
        Pfa B = ifs_to_pfa(I);
        Word w = Word(Alphabet(b), {0, 1, 0});
        CHECK(rho(B, w) == rho(A, w));
    }
    CHECK(checked == 3000);
}

TEST_CASE("degenerate accepting sets are rejected") {
    auto none = fixtures::identity_pfa(2, 2, {Rat(1), Rat(0)}, {0, 0});
    auto all = fixtures::identity_pfa(2, 2, {Rat(1), Rat(0)}, {1, 1});
    CHECK_THROWS_AS(pfa_to_ifs(none), input_error);
    CHECK_THROWS_AS(pfa_to_ifs(all), input_error);
}

TEST_CASE("invalid maps are rejected by ifs_to_pfa") {
    Ifs2 I{make_rat(3, 4), make_rat(1, 2), Rat(0), make_rat(1, 2), Rat(0)}; // f0(1) = 5/4
    CHECK(!validate_ifs2(I).empty());
    CHECK_THROWS_AS(ifs2_to_pfa(I), input_error);
}

TEST_CASE("diagnostics on the positive-slope figure instance") {
    Ifs2 I{make_rat(285, 1000), make_rat(5, 10), make_rat(575, 1000), make_rat(14, 100), make_rat(1, 2)};
    auto d = ifs2_diagnostics(I);
    REQUIRE(d.r0.has_value());
    REQUIRE(d.r1.has_value());
    REQUIRE(d.intersection.has_value());
    CHECK(*d.r0 == make_rat(57, 100));
    CHECK(d.label == Ifs2Case::PosPosDec);
    CHECK(*d.r0 < *d.r1);
    CHECK(*d.r1 < d.intersection->first);
}

TEST_CASE("diagnostics edge labels") {
    Ifs2 same{make_rat(1, 4), make_rat(1, 4), make_rat(1, 4), make_rat(1, 4), Rat(0)};
    CHECK(ifs2_diagnostics(same).label == Ifs2Case::Degenerate);

    Ifs2 parallel{Rat(0), make_rat(1, 2), make_rat(1, 2), make_rat(1, 2), Rat(0)};
    CHECK(ifs2_diagnostics(parallel).label == Ifs2Case::NoIntersect);

    Ifs2 ident{Rat(0), Rat(1), Rat(0), make_rat(1, 2), Rat(0)};
    CHECK(ifs2_diagnostics(ident).label == Ifs2Case::Degenerate);

    // same fixed point, different slopes
    Ifs2 comm{make_rat(1, 4), make_rat(1, 2), make_rat(3, 8), make_rat(1, 4), Rat(0)};
    CHECK(ifs2_diagnostics(comm).label == Ifs2Case::Commuting);
}

TEST_CASE("sign chain: i_x - i_y, r1 - r0 and the commutator agree") {
    // convention a < c and b > d, distinct slopes, as in the case analysis
    std::mt19937_64 rng(43);
    int tested = 0;
    while (tested < 1000) {
        Ifs2 I = random_valid_ifs2(rng);
        if (!(I.a < I.c && I.b > I.d)) continue;
        auto d = ifs2_diagnostics(I);
        if (!d.intersection) continue;
        ++tested;
        Rat lhs = d.intersection->first - d.intersection->second; // i_x - i_y
        Rat mid = *d.r1 - *d.r0;
        Rat comm = (I.c + I.a * I.d) - (I.a + I.b * I.c); // f1f0 - f0f1 constant part
        CHECK(((lhs > 0) == (mid > 0)));
        CHECK(((lhs > 0) == (comm > 0)));
        CHECK(((lhs == 0) == (mid == 0)));
        CHECK(((lhs == 0) == (comm == 0)));
    }
}

TEST_CASE("composition order: f0f1 < f1f0 pointwise iff a+bc < c+ad") {
    std::mt19937_64 rng(47);
    int tested = 0;
    while (tested < 400) {
        Ifs2 I = random_valid_ifs2(rng);
        if (I.b == I.d) continue;
        ++tested;
        bool coeff = I.a + I.b * I.c < I.c + I.a * I.d;
        bool pointwise = true;
        for (int i = 0; i <= 8; ++i) {
            Rat x = make_rat(i, 8);
            if (!(I.f0(I.f1(x)) < I.f1(I.f0(x)))) pointwise = false;
        }
        if (coeff) CHECK(pointwise);
        if (pointwise) CHECK(coeff);
    }
}

TEST_CASE("negative slopes: fixed points huddle closer than the intersection") {
    // |r0 - r1| < |r1 - i_x| whenever both slopes are negative and neither
    // map fixes i_x
    std::mt19937_64 rng(53);
    int tested = 0;
    while (tested < 400) {
        Ifs2 I = random_valid_ifs2(rng);
        if (!(I.b < 0 && I.d < 0)) continue;
        auto d = ifs2_diagnostics(I);
        if (d.label != Ifs2Case::NegNegDec && d.label != Ifs2Case::NegNegInc) continue;
        ++tested;
        Rat r0 = *d.r0, r1 = *d.r1, ix = d.intersection->first;
        CHECK(abs(r0 - r1) < abs(r1 - ix));
    }
}

TEST_CASE("orbit trapping for negative-slope systems") {
    // NegNeg-Dec: orbits entering [r0, i_x) stay inside [0, i_x);
    // NegNeg-Inc mirrored.
    std::mt19937_64 rng(59);
    int tested = 0;
    while (tested < 200) {
        Ifs2 I = random_valid_ifs2(rng, 12);
        auto d = ifs2_diagnostics(I);
        bool dec = d.label == Ifs2Case::NegNegDec;
        bool inc = d.label == Ifs2Case::NegNegInc;
        if (!dec && !inc) continue;
        ++tested;
        Rat r0 = *d.r0, ix = d.intersection->first;
        for (int rep = 0; rep < 40; ++rep) {
            // random start in the trapping interval
            Rat lo = dec ? r0 : ix, hi = dec ? ix : r0;
            if (!(lo < hi)) break;
            Rat x = lo + (hi - lo) * make_rat(1 + static_cast<long>(rng() % 14), 16);
            if (inc && x == ix) continue;
            for (int step = 0; step < 25; ++step) {
                x = I.apply(static_cast<int>(rng() % 2), x);
                if (dec) {
                    CHECK(x < ix);
                    CHECK(x >= 0);
                } else {
                    CHECK(x > ix);
                    CHECK(x <= 1);
                }
            }
        }
    }
}
