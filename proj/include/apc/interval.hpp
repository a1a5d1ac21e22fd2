#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "apc/rational.hpp"

namespace apc {

/// Closed interval with outward rounding: every arithmetic result is
/// widened by one ulp per side, which dominates the half-ulp error of the
/// round-to-nearest primitive, so true values can never escape.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval exact(double x) { return {x, x}; }

    static Interval outward(double lo, double hi) {
        return {std::nextafter(lo, -std::numeric_limits<double>::infinity()),
                std::nextafter(hi, std::numeric_limits<double>::infinity())};
    }

    /// Tight enclosure of a rational; exact when the value is a double.
    static Interval from_rat(const Rat& q) {
        double d = rat_to_double(q);
        if (Rat(d) == q) return exact(d);
        return outward(d, d);
    }

    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool empty() const { return lo > hi; }

    Interval operator+(const Interval& o) const { return outward(lo + o.lo, hi + o.hi); }
    Interval operator-(const Interval& o) const { return outward(lo - o.hi, hi - o.lo); }

    Interval operator*(const Interval& o) const {
        double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return outward(std::min(std::min(a, b), std::min(c, d)),
                       std::max(std::max(a, b), std::max(c, d)));
    }

    Interval intersect(const Interval& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
};

} // namespace apc
