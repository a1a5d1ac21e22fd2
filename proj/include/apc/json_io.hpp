#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "apc/pfa.hpp"

namespace apc {

using json = nlohmann::json;

/// PFA wire format:
///   { "k": int, "alphabet": int, "mode": "rational"|"float",
///     "pi": [scalar], "P": [[[scalar]]] (letter -> row -> col),
///     "eta": [0|1] }
/// Rational scalars are "num/den" strings and round-trip bit-exactly;
/// float scalars are plain JSON numbers.
json pfa_to_json(const Pfa& A);
json pfa_to_json(const PfaF& A);

using AnyPfa = std::variant<Pfa, PfaF>;

AnyPfa pfa_from_json(const json& j);
Pfa rational_pfa_from_json(const json& j);

json rat_to_json(const Rat& q);
Rat rat_from_json(const json& j);

} // namespace apc

#include "apc/classical.hpp"
#include "apc/gamma.hpp"
#include "apc/ifs.hpp"

namespace apc {

/// NFA/DFA wire format mirrors the PFA one with integer 0/1 entries plus a
/// "start" index.
json nfa_to_json(const Nfa& N);
Nfa nfa_from_json(const json& j);
json dfa_to_json(const Dfa& D);
Dfa dfa_from_json(const json& j);

json ifs2_to_json(const Ifs2& I);
Ifs2 ifs2_from_json(const json& j);
json ifs_to_json(const Ifs& I);

json enclosure_to_json(const GapEnclosure& e, const Word& w);

} // namespace apc
