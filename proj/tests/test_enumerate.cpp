#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "apc/enumerate.hpp"
#include "apc/json_io.hpp"
#include "fixtures.hpp"

using namespace apc;
using fixtures::W;

TEST_CASE("one-state enumeration has exactly the two unit machines") {
    std::vector<Pfa> all;
    enum_rational_pfas(1, 2, 1, [&](const Pfa& A) { all.push_back(A); });
    REQUIRE(all.size() == 2);
    CHECK(all[0].eta == std::vector<int>{0});
    CHECK(all[1].eta == std::vector<int>{1});
    for (const auto& A : all) {
        CHECK(A.P[0] == Matrix<Rat>::identity(1));
        CHECK(pfa_is_valid(A));
    }
}

TEST_CASE("denominator-2 stream contains the 01^m0 witness and no duplicates") {
    auto target = fixtures::two_state_0110();
    bool found = false;
    std::set<std::string> seen;
    size_t count = 0;
    enum_rational_pfas(2, 2, 2, [&](const Pfa& A) {
        ++count;
        if (A == target) found = true;
        CHECK(seen.insert(pfa_to_json(A).dump()).second);
    });
    CHECK(found);
    CHECK(count == seen.size());
    MESSAGE("two-state denominator-2 machines: ", count);
}

TEST_CASE("every streamed machine is valid") {
    enum_rational_pfas(2, 2, 3, [&](const Pfa& A) { REQUIRE(pfa_is_valid(A)); });
}

TEST_CASE("semidecide finds the two-state witness for 0110") {
    auto r = semidecide_ap_le(W("0110"), 2);
    REQUIRE(r.found);
    CHECK(r.exact_gap > 0);
    CHECK(gap(r.witness, W("0110")) == r.exact_gap);
    CHECK(r.witness.k == 2);
}

TEST_CASE("semidecide finds the deterministic witness at the DFA size") {
    Word w = W("010");
    auto d = ad(w);
    auto r = semidecide_ap_le(w, d.value);
    REQUIRE(r.found);
    CHECK(r.exact_gap > 0);
}

TEST_CASE("semidecide exhausts on the three-state word at two states") {
    SearchBudget tight;
    tight.max_denominator = 2;
    tight.max_machines = 60'000;
    tight.wall_seconds = 30;
    auto r = semidecide_ap_le(W("0100"), 2, tight);
    CHECK(!r.found);
    CHECK(r.machines_tried > 0);
}

TEST_CASE("ap_upper_bound routes classified words through the fast path") {
    auto r = ap_upper_bound(W("0001111"));
    CHECK(r.k == 2);
    CHECK(r.provenance == "classified");
    CHECK(r.exact_gap > 0);
    CHECK(gap(r.witness, W("0001111")) == r.exact_gap);
}

TEST_CASE("ap_upper_bound finds three states for 0100") {
    auto r = ap_upper_bound(W("0100"));
    CHECK(r.k == 3);
    CHECK(r.exact_gap > 0);
    MESSAGE("0100 route: ", r.provenance);
}

TEST_CASE("ap_upper_bound on the length-seven example stays within the lift bound") {
    Word w = W("0001101");
    auto r = ap_upper_bound(w);
    auto lift_states = an(w).value + 1;
    CHECK(r.k <= lift_states);
    CHECK(r.exact_gap > 0);
    MESSAGE("0001101: k = ", r.k, " via ", r.provenance);
}

TEST_CASE("budget validation") {
    SearchBudget bad;
    bad.max_denominator = 0;
    CHECK_THROWS_AS(semidecide_ap_le(W("01"), 2, bad), input_error);
    CHECK_THROWS_AS(enum_rational_pfas(0, 2, 1, [](const Pfa&) {}), input_error);
}
