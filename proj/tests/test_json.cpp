#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apc/json_io.hpp"
#include "fixtures.hpp"

using namespace apc;

TEST_CASE("rational PFA round-trips bit-exactly") {
    auto A = fixtures::two_state_0110();
    json j = pfa_to_json(A);
    CHECK(j["mode"] == "rational");
    CHECK(j["pi"][0] == "1");
    CHECK(j["P"][0][1][0] == "1/2");
    auto back = rational_pfa_from_json(json::parse(j.dump()));
    CHECK(back == A);
}

TEST_CASE("float PFA serializes numbers") {
    auto A = fixtures::numeric_0110();
    json j = pfa_to_json(A);
    CHECK(j["mode"] == "float");
    auto any = pfa_from_json(json::parse(j.dump()));
    auto* p = std::get_if<PfaF>(&any);
    REQUIRE(p != nullptr);
    CHECK(*p == A);
}

TEST_CASE("rational parsing rejects junk") {
    CHECK(parse_rat("7/16") == make_rat(7, 16));
    CHECK(parse_rat("-3/6") == make_rat(-1, 2));
    CHECK(parse_rat("5") == Rat(5));
    CHECK_THROWS_AS(parse_rat("1/0"), input_error);
    CHECK_THROWS_AS(parse_rat("abc"), input_error);
    CHECK_THROWS_AS(pfa_from_json(json{{"mode", "imaginary"}}), input_error);
}
