#pragma once

// Shared machines used as regression fixtures across the test suites.

#include "apc/pfa.hpp"
#include "apc/word.hpp"

namespace apc::fixtures {

/// Two-state binary PFA witnessing 01^m0; gap on 0110 is 1/16.
inline Pfa two_state_0110() {
    Pfa A;
    A.k = 2;
    A.alphabet = Alphabet(2);
    A.pi = {Rat(1), Rat(0)};
    A.eta = {1, 0};
    Matrix<Rat> P0(2), P1(2);
    P0.at(0, 0) = Rat(0);       P0.at(0, 1) = Rat(1);
    P0.at(1, 0) = make_rat(1, 2); P0.at(1, 1) = make_rat(1, 2);
    P1.at(0, 0) = make_rat(1, 2); P1.at(0, 1) = make_rat(1, 2);
    P1.at(1, 0) = Rat(0);       P1.at(1, 1) = Rat(1);
    A.P = {P0, P1};
    return A;
}

/// Three-state binary PFA with gap 7/16 on 0110.
inline Pfa three_state_0110() {
    Pfa A;
    A.k = 3;
    A.alphabet = Alphabet(2);
    A.pi = {Rat(1), Rat(0), Rat(0)};
    A.eta = {0, 0, 1};
    Matrix<Rat> P0(3), P1(3);
    P0.at(0, 2) = Rat(1);
    P0.at(1, 0) = make_rat(1, 4); P0.at(1, 1) = make_rat(3, 4);
    P0.at(2, 0) = Rat(1);
    P1.at(0, 1) = make_rat(3, 4); P1.at(0, 2) = make_rat(1, 4);
    P1.at(1, 0) = Rat(1);
    P1.at(2, 1) = Rat(1);
    A.P = {P0, P1};
    return A;
}

/// Two-state float PFA whose gap on 0110 is approximately 0.1775.
inline PfaF numeric_0110() {
    PfaF A;
    A.k = 2;
    A.alphabet = Alphabet(2);
    A.pi = {1.0, 0.0};
    A.eta = {1, 0};
    Matrix<double> P0(2), P1(2);
    P0.at(0, 0) = 0.16748; P0.at(0, 1) = 0.83252;
    P0.at(1, 0) = 0.99;    P0.at(1, 1) = 0.01;
    P1.at(0, 0) = 0.66116; P1.at(0, 1) = 0.33884;
    P1.at(1, 0) = 0.0;     P1.at(1, 1) = 1.0;
    A.P = {P0, P1};
    return A;
}

/// Identity transitions; rho is constantly pi * eta.
inline Pfa identity_pfa(int k, int alphabet, std::vector<Rat> pi, std::vector<int> eta) {
    Pfa A;
    A.k = k;
    A.alphabet = Alphabet(alphabet);
    A.pi = std::move(pi);
    A.eta = std::move(eta);
    for (int s = 0; s < alphabet; ++s) A.P.push_back(Matrix<Rat>::identity(k));
    return A;
}

inline Word W(const std::string& digits, int alphabet = 2) { return Word::parse(digits, alphabet); }

} // namespace apc::fixtures
