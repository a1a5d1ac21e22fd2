#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "apc/pfa.hpp"
#include "fixtures.hpp"

using namespace apc;
using fixtures::W;

namespace {

// Random rational PFA with row entries drawn as small integers and
// normalized, so all arithmetic stays exact with modest denominators.
Pfa random_pfa(std::mt19937_64& rng, int k, int alphabet) {
    std::uniform_int_distribution<int> d(0, 6);
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
    A.eta.assign(k, 0);
    A.eta[static_cast<size_t>(rng() % k)] = 1;
    return A;
}

Word random_word(std::mt19937_64& rng, int alphabet, size_t len) {
    std::vector<uint8_t> ls(len);
    for (auto& c : ls) c = static_cast<uint8_t>(rng() % alphabet);
    return Word(Alphabet(alphabet), std::move(ls));
}

} // namespace

TEST_CASE("validate_pfa accepts the identity machine and flags bad rows") {
    auto A = fixtures::identity_pfa(2, 2, {Rat(1), Rat(0)}, {1, 0});
    CHECK(validate_pfa(A).empty());

    A.P[0].at(0, 0) = make_rat(9, 10);
    A.P[0].at(0, 1) = Rat(0);
    auto v = validate_pfa(A);
    REQUIRE(!v.empty());
    CHECK(v.front().letter == 0);
    CHECK(v.front().row == 0);
}

TEST_CASE("rho on the 0110 witness") {
    auto A = fixtures::two_state_0110();
    REQUIRE(validate_pfa(A).empty());
    CHECK(rho(A, W("0110")) == make_rat(1, 2));
    CHECK(rho(A, W("1110")) == make_rat(7, 16));
    CHECK(rho(A, Word(Alphabet(2), {})) == Rat(1)); // pi . eta
}

TEST_CASE("rho of identity transitions is pi.eta for every word") {
    auto A = fixtures::identity_pfa(3, 2, {make_rat(1, 3), make_rat(1, 3), make_rat(1, 3)}, {1, 1, 0});
    for (auto s : {"", "0", "10", "0101", "111111"})
        CHECK(rho(A, W(s)) == make_rat(2, 3));
}

TEST_CASE("gap regression on the 0110 witness family") {
    auto A = fixtures::two_state_0110();
    CHECK(gap(A, W("0110")) == make_rat(1, 16));
    CHECK(gap(A, W("01110")) == make_rat(1, 32));
    CHECK(gap(A, W("011110")) == make_rat(1, 64));
}

TEST_CASE("gap of the three-state machine on 0110 is 7/16") {
    auto A = fixtures::three_state_0110();
    REQUIRE(validate_pfa(A).empty());
    CHECK(gap(A, W("0110")) == make_rat(7, 16));
}

TEST_CASE("float-mode gap on the numeric 0110 machine") {
    auto A = fixtures::numeric_0110();
    REQUIRE(validate_pfa(A).empty());
    double g = gap(A, W("0110"));
    CHECK(std::abs(g - 0.1775) < 5e-4);
    CHECK(g > 1.0 / 6.0);
}

TEST_CASE("gap conventions and budget guard") {
    auto A = fixtures::two_state_0110();
    CHECK(gap(A, Word(Alphabet(2), {})) == Rat(1));

    Pfa U = fixtures::identity_pfa(2, 1, {Rat(1), Rat(0)}, {1, 0});
    CHECK(gap(U, repeat_word(Alphabet(1), 0, 5)) == Rat(1));

    CHECK_THROWS_AS(gap(A, repeat_word(Alphabet(2), 0, 30)), budget_error);
    CHECK_THROWS_AS(gap(A, W("0110"), /*budget=*/8), budget_error);
}

TEST_CASE("at most one word per length can have positive gap") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Pfa A = random_pfa(rng, 3, 2);
        for (size_t n : {1u, 2u, 3u, 4u}) {
            int positive = 0;
            std::vector<uint8_t> w(n, 0);
            // odometer over all words of length n
            while (true) {
                Word word(Alphabet(2), w);
                if (gap(A, word) > 0) ++positive;
                size_t i = 0;
                while (i < n && w[i] == 1) w[i++] = 0;
                if (i == n) break;
                w[i] = 1;
            }
            CHECK(positive <= 1);
        }
    }
}

TEST_CASE("drop_prefix identity") {
    auto A = fixtures::two_state_0110();
    SUBCASE("empty prefix is a no-op") {
        CHECK(drop_prefix(A, Word(Alphabet(2), {})) == A);
    }
    SUBCASE("pi' = pi P(x) and rho factors through concatenation") {
        auto B = drop_prefix(A, W("0"));
        CHECK(B.pi == std::vector<Rat>{Rat(0), Rat(1)});
        CHECK(rho(B, W("110")) == make_rat(1, 2));
    }
    SUBCASE("random machines, exact equality") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 40; ++t) {
            Pfa A2 = random_pfa(rng, 2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 2));
            Word x = random_word(rng, A2.alphabet.size, rng() % 4);
            Word w = random_word(rng, A2.alphabet.size, rng() % 4);
            CHECK(rho(drop_prefix(A2, x), w) == rho(A2, x.concat(w)));
        }
    }
}

TEST_CASE("suffix gap inequality under prefix drop") {
    // gap(drop_prefix(A,x), y) >= gap(A, x^y): y's competitors are a
    // projection of x^y's competitors with the same prefix.
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        Pfa A = random_pfa(rng, 2 + static_cast<int>(rng() % 2), 2);
        Word x = random_word(rng, 2, 1 + rng() % 3);
        Word y = random_word(rng, 2, 1 + rng() % 3);
        CHECK(gap(drop_prefix(A, x), y) >= gap(A, x.concat(y)));
    }
}

TEST_CASE("reverse_pfa on a self-reverse machine") {
    auto A = fixtures::identity_pfa(2, 2, {Rat(1), Rat(0)}, {1, 0});
    auto B = reverse_pfa(A);
    CHECK(B.pi == std::vector<Rat>{Rat(1), Rat(0)});
    CHECK(B.eta == std::vector<int>{1, 0});
}

TEST_CASE("reverse_pfa preserves gap under equal nonzero counts") {
    // Doubly stochastic transitions, uniform pi, |support(pi)| = |support(eta)|.
    Pfa A;
    A.k = 3;
    A.alphabet = Alphabet(2);
    A.pi = {make_rat(1, 2), make_rat(1, 2), Rat(0)};
    A.eta = {1, 0, 1};
    Matrix<Rat> P0(3), P1(3);
    // symmetric doubly stochastic
    P0.at(0, 0) = make_rat(1, 2); P0.at(0, 1) = make_rat(1, 4); P0.at(0, 2) = make_rat(1, 4);
    P0.at(1, 0) = make_rat(1, 4); P0.at(1, 1) = make_rat(1, 2); P0.at(1, 2) = make_rat(1, 4);
    P0.at(2, 0) = make_rat(1, 4); P0.at(2, 1) = make_rat(1, 4); P0.at(2, 2) = make_rat(1, 2);
    // permutation (cycle)
    P1.at(0, 1) = Rat(1); P1.at(1, 2) = Rat(1); P1.at(2, 0) = Rat(1);
    A.P = {P0, P1};
    REQUIRE(validate_pfa(A).empty());

    auto B = reverse_pfa(A);
    REQUIRE(validate_pfa(B).empty());
    std::mt19937_64 rng(17);
    for (size_t len = 0; len <= 6; ++len) {
        Word y = random_word(rng, 2, len);
        CHECK(rho(B, y.reversed()) == rho(A, y));
        if (len >= 1) CHECK(gap(B, y.reversed()) == gap(A, y));
    }
}

TEST_CASE("reverse_pfa rejects non-doubly-stochastic input") {
    auto A = fixtures::two_state_0110();
    CHECK_THROWS_AS(reverse_pfa(A), input_error);
}

TEST_CASE("rho stays in [0,1] on random machines") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        Pfa A = random_pfa(rng, 2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 2));
        Word w = random_word(rng, A.alphabet.size, rng() % 6);
        Rat r = rho(A, w);
        CHECK(r >= 0);
        CHECK(r <= 1);
    }
}
