#include "apc/json_io.hpp"

namespace apc {

json rat_to_json(const Rat& q) { return rat_str(q); }

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw input_error("expected rational as \"num/den\" string");
}

namespace {

template <class S, class ToJson>
json pfa_to_json_impl(const BasicPfa<S>& A, const char* mode, const ToJson& scalar) {
    json j;
    j["k"] = A.k;
    j["alphabet"] = A.alphabet.size;
    j["mode"] = mode;
    json pi = json::array();
    for (const auto& x : A.pi) pi.push_back(scalar(x));
    j["pi"] = pi;
    json P = json::array();
    for (const auto& M : A.P) {
        json rows = json::array();
        for (int i = 0; i < M.k; ++i) {
            json row = json::array();
            for (int c = 0; c < M.k; ++c) row.push_back(scalar(M.at(i, c)));
            rows.push_back(row);
        }
        P.push_back(rows);
    }
    j["P"] = P;
    j["eta"] = A.eta;
    return j;
}

template <class S, class FromJson>
BasicPfa<S> pfa_from_json_impl(const json& j, const FromJson& scalar) {
    BasicPfa<S> A;
    A.k = j.at("k").get<int>();
    A.alphabet = Alphabet(j.at("alphabet").get<int>());
    for (const auto& x : j.at("pi")) A.pi.push_back(scalar(x));
    for (const auto& rows : j.at("P")) {
        Matrix<S> M(A.k);
        int i = 0;
        for (const auto& row : rows) {
            int c = 0;
            for (const auto& x : row) {
                if (i >= A.k || c >= A.k) throw input_error("transition matrix shape mismatch");
                M.at(i, c) = scalar(x);
                ++c;
            }
            if (c != A.k) throw input_error("transition matrix shape mismatch");
            ++i;
        }
        if (i != A.k) throw input_error("transition matrix shape mismatch");
        A.P.push_back(std::move(M));
    }
    A.eta = j.at("eta").get<std::vector<int>>();
    return A;
}

} // namespace

json pfa_to_json(const Pfa& A) {
    return pfa_to_json_impl(A, "rational", [](const Rat& q) { return rat_to_json(q); });
}

json pfa_to_json(const PfaF& A) {
    return pfa_to_json_impl(A, "float", [](double x) { return json(x); });
}

AnyPfa pfa_from_json(const json& j) {
    std::string mode = j.value("mode", "rational");
    if (mode == "rational")
        return pfa_from_json_impl<Rat>(j, [](const json& x) { return rat_from_json(x); });
    if (mode == "float")
        return pfa_from_json_impl<double>(j, [](const json& x) { return x.get<double>(); });
    throw input_error("unknown PFA mode: " + mode);
}

Pfa rational_pfa_from_json(const json& j) {
    auto any = pfa_from_json(j);
    if (auto* p = std::get_if<Pfa>(&any)) return *p;
    throw input_error("expected a rational-mode PFA");
}

json nfa_to_json(const Nfa& N) {
    json j;
    j["k"] = N.k;
    j["alphabet"] = N.alphabet.size;
    j["start"] = N.start;
    json P = json::array();
    for (const auto& M : N.P) {
        json rows = json::array();
        for (int i = 0; i < M.k; ++i) {
            json row = json::array();
            for (int c = 0; c < M.k; ++c) row.push_back(M.at(i, c));
            rows.push_back(row);
        }
        P.push_back(rows);
    }
    j["P"] = P;
    j["eta"] = N.eta;
    return j;
}

Nfa nfa_from_json(const json& j) {
    Nfa N;
    N.k = j.at("k").get<int>();
    N.alphabet = Alphabet(j.at("alphabet").get<int>());
    N.start = j.at("start").get<int>();
    for (const auto& rows : j.at("P")) {
        Matrix<int> M(N.k);
        int i = 0;
        for (const auto& row : rows) {
            int c = 0;
            for (const auto& x : row) {
                if (i >= N.k || c >= N.k) throw input_error("transition matrix shape mismatch");
                M.at(i, c) = x.get<int>();
                ++c;
            }
            ++i;
        }
        N.P.push_back(std::move(M));
    }
    N.eta = j.at("eta").get<std::vector<int>>();
    if (!validate_nfa(N).empty()) throw input_error("invalid NFA: " + validate_nfa(N).front());
    return N;
}

json dfa_to_json(const Dfa& D) {
    json j = nfa_to_json(dfa_to_nfa(D));
    return j;
}

Dfa dfa_from_json(const json& j) {
    Nfa N = nfa_from_json(j);
    Dfa D;
    D.k = N.k;
    D.start = N.start;
    D.alphabet = N.alphabet;
    D.delta.assign(static_cast<size_t>(N.alphabet.size), std::vector<int>(static_cast<size_t>(N.k), -1));
    for (int sigma = 0; sigma < N.alphabet.size; ++sigma)
        for (int i = 0; i < N.k; ++i) {
            int ones = 0;
            for (int c = 0; c < N.k; ++c)
                if (N.P[sigma].at(i, c)) {
                    D.delta[sigma][i] = c;
                    ++ones;
                }
            if (ones != 1) throw input_error("DFA rows must have exactly one transition");
        }
    D.eta = N.eta;
    return D;
}

json ifs2_to_json(const Ifs2& I) {
    return json{{"a", rat_to_json(I.a)},
                {"b", rat_to_json(I.b)},
                {"c", rat_to_json(I.c)},
                {"d", rat_to_json(I.d)},
                {"x0", rat_to_json(I.x0)}};
}

Ifs2 ifs2_from_json(const json& j) {
    return Ifs2{rat_from_json(j.at("a")), rat_from_json(j.at("b")), rat_from_json(j.at("c")),
                rat_from_json(j.at("d")), rat_from_json(j.at("x0"))};
}

json ifs_to_json(const Ifs& I) {
    json maps = json::array();
    for (const auto& m : I.maps) {
        json offset = json::array();
        for (const auto& x : m.offset) offset.push_back(rat_to_json(x));
        json B = json::array();
        for (int i = 0; i < m.B.k; ++i) {
            json row = json::array();
            for (int c = 0; c < m.B.k; ++c) row.push_back(rat_to_json(m.B.at(i, c)));
            B.push_back(row);
        }
        maps.push_back(json{{"offset", offset}, {"B", B}});
    }
    json x0 = json::array();
    for (const auto& x : I.x0) x0.push_back(rat_to_json(x));
    return json{{"dim", I.dim},
                {"alphabet", I.alphabet.size},
                {"maps", maps},
                {"x0", x0},
                {"accepting", I.accepting}};
}

json enclosure_to_json(const GapEnclosure& e, const Word& w) {
    return json{{"k", e.k},
                {"word", w.str()},
                {"lb", rat_to_json(e.lb)},
                {"ub", e.ub},
                {"witness", pfa_to_json(e.lb_witness)},
                {"seed", e.seed},
                {"eps_achieved", e.eps_achieved},
                {"boxes", e.boxes},
                {"restarts", e.restarts}};
}

} // namespace apc
