#pragma once

#include <gmpxx.h>

#include <string>

#include "apc/errors.hpp"

namespace apc {

// Arbitrary-precision rational scalar. GMP keeps values canonical
// (reduced, positive denominator) through arithmetic; only raw
// numerator/denominator construction needs an explicit canonicalize.
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "num/den" or a plain integer string into a reduced rational.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rat q(s);
            q.canonicalize();
            return q;
        }
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw input_error("rational with zero denominator: " + s);
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw input_error("not a rational: " + s);
    }
}

inline std::string rat_str(const Rat& q) {
    return q.get_str();
}

inline double rat_to_double(const Rat& q) {
    return q.get_d();
}

} // namespace apc
