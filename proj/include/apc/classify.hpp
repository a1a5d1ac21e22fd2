#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apc/ifs.hpp"
#include "apc/word.hpp"

namespace apc {

/// The four binary shapes with two-state witnesses, up to bit flip:
/// i^n j^m, i^n j^m i, i^n (ji)^m, i^n j (ij)^m with j = 1-i.
enum class Class2Form { InJm, InJmI, InJiM, InJIjM };

const char* class2_form_name(Class2Form f);

struct WitnessFamily {
    Class2Form form;
    int i = 0;
    int n = 0;
    int m = 0;

    bool operator==(const WitnessFamily&) const = default;
};

/// The member of the family with repetition count m.
Word render_family(Class2Form form, int i, int n, int m);
inline Word render_family(const WitnessFamily& f) { return render_family(f.form, f.i, f.n, f.m); }

/// Matches w against the four shapes, preferring the first hit in form
/// order, i = 0 before i = 1, then maximal prefix length n. Returns
/// nothing when w fits none of them.
std::optional<WitnessFamily> is_class2(const Word& w);

/// Per-length extrema of the acceptance values of a two-map system.
struct ExtremalEntry {
    Rat max_value;
    Word max_arg; // lexicographically least attaining word
    bool max_unique = false;
    Rat min_value;
    Word min_arg;
    bool min_unique = false;
};

/// Exact per-length maxima and minima with attaining words and uniqueness,
/// for lengths 1..L. Candidates per length: image of the previous maximum
/// under positive slopes, of the previous minimum under negative slopes,
/// and the constant value of any flat map (attained by every word, which
/// kills uniqueness from length 2 on whenever it is extremal). Attainment
/// counts propagate exactly, capped at two.
std::vector<ExtremalEntry> extremal_trace(const Ifs2& I, size_t L);

/// Words whose length class is uniquely maximized by them, lengths 1..L.
std::vector<Word> witnessed_language(const Ifs2& I, size_t L);

/// Constructive two-state witness with oracle verification: the returned
/// system makes w the unique maximum of its length, and every family member
/// with the same prefix parameter up to length 2|w|+4 likewise.
struct ClassWitness {
    WitnessFamily family;
    Ifs2 ifs;
    size_t verified_up_to = 0;
};

ClassWitness witness_class2_full(const Word& w);
Ifs2 witness_class2(const Word& w);

/// Tail classification of a witnessed language against the regular-shape
/// case list (fixed prefix, then a repeated pattern of length 1 or 2,
/// possibly one trailing letter). Inspects lengths L-6..L.
struct TailReport {
    bool matched = false;
    std::string bullet; // description, "nothing", or "no match"
};

TailReport check_regular_tail(const std::vector<Word>& words, size_t L);

/// Widens a two-map system to b letters; every added letter acts by the
/// midpoint map, which stays strictly between f0 and f1 away from their
/// intersection, so no string using it is ever uniquely extremal.
Ifs pad_alphabet(const Ifs2& I, int b);

} // namespace apc
