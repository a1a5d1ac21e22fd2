#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "apc/pfa.hpp"
#include "apc/rational.hpp"
#include "apc/word.hpp"

namespace apc {

/// Two-map affine system on [0,1]: f0(x) = a + b*x, f1(x) = c + d*x,
/// iterated from x0. Slopes may be negative; validity means both maps
/// send [0,1] into itself.
struct Ifs2 {
    Rat a, b, c, d;
    Rat x0;

    Rat f0(const Rat& x) const { return a + b * x; }
    Rat f1(const Rat& x) const { return c + d * x; }
    Rat apply(int letter, const Rat& x) const { return letter == 0 ? f0(x) : f1(x); }
    Rat slope(int letter) const { return letter == 0 ? b : d; }
    Rat offset(int letter) const { return letter == 0 ? a : c; }

    /// Swaps the roles of the two letters.
    Ifs2 bitflip() const { return {c, d, a, b, x0}; }

    bool operator==(const Ifs2&) const = default;
};

std::vector<std::string> validate_ifs2(const Ifs2& I);

/// Affine iterated function system on the (k-1)-simplex, one map
/// x -> offset + x*B per letter, with the subset of coordinates whose sum
/// recovers the acceptance probability.
struct Ifs {
    int dim = 1; // k - 1
    Alphabet alphabet{2};
    struct Map {
        std::vector<Rat> offset;
        Matrix<Rat> B;
        bool operator==(const Map&) const = default;
    };
    std::vector<Map> maps; // per letter
    std::vector<Rat> x0;
    std::vector<int> accepting;   // subset of {0..dim-1}
    std::vector<int> state_order; // permutation applied by pfa_to_ifs (old state per new slot)

    bool operator==(const Ifs&) const = default;
};

std::vector<std::string> validate_ifs(const Ifs& I);

/// The two-state system as a one-dimensional Ifs accepting coordinate 0.
Ifs ifs2_to_ifs(const Ifs2& I);
/// Inverse view when dim == 1 and accepting == {0}.
Ifs2 ifs_to_ifs2(const Ifs& I);

/// Projects a PFA with 1..k-1 accepting states onto the affine system that
/// reproduces rho exactly. States are permuted so the minimal-index
/// non-accepting state comes last; the permutation is recorded in
/// state_order so round trips are deterministic.
Ifs pfa_to_ifs(const Pfa& A);

Ifs2 pfa_to_ifs2(const Pfa& A);

/// Rebuilds the PFA with the given accepting coordinates (the final state
/// never accepts). Throws when a map leaves the simplex.
Pfa ifs_to_pfa(const Ifs& I, const std::vector<int>& accepting);
Pfa ifs_to_pfa(const Ifs& I);
Pfa ifs2_to_pfa(const Ifs2& I);

/// Left-to-right composition along w starting at x0, summed over the
/// accepting coordinates.
Rat ifs_rho(const Ifs& I, const Word& w);
Rat ifs2_rho(const Ifs2& I, const Word& w);

enum class Ifs2Case {
    NoIntersect,
    Commuting,
    PosPosDec,
    PosPosInc,
    NegNegDec,
    NegNegInc,
    MixedDec,
    MixedInc,
    Degenerate,
};

const char* ifs2_case_name(Ifs2Case c);

/// Exact fixed points, intersection and case label for the two-map system.
/// Dec/Inc records whether both maps decrease or increase the intersection
/// abscissa; identity or coinciding maps are Degenerate, commuting ones
/// Commuting, and parallel or outside-the-square intersections NoIntersect.
struct Ifs2Diagnostics {
    std::optional<Rat> r0, r1;
    std::optional<std::pair<Rat, Rat>> intersection; // (i_x, i_y)
    Ifs2Case label = Ifs2Case::Degenerate;
};

Ifs2Diagnostics ifs2_diagnostics(const Ifs2& I);

} // namespace apc
