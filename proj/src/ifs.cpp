#include "apc/ifs.hpp"

#include <algorithm>

#include "apc/errors.hpp"

namespace apc {

std::vector<std::string> validate_ifs2(const Ifs2& I) {
    std::vector<std::string> out;
    auto unit = [](const Rat& x) { return x >= 0 && x <= 1; };
    if (!unit(I.a) || !unit(I.a + I.b)) out.push_back("f0 does not map [0,1] into itself");
    if (!unit(I.c) || !unit(I.c + I.d)) out.push_back("f1 does not map [0,1] into itself");
    if (!unit(I.x0)) out.push_back("x0 outside [0,1]");
    return out;
}

namespace {

bool in_simplex(const std::vector<Rat>& v) {
    Rat sum(0);
    for (const auto& x : v) {
        if (x < 0) return false;
        sum += x;
    }
    return sum <= 1;
}

std::vector<Rat> apply_map(const Ifs::Map& m, const std::vector<Rat>& x) {
    std::vector<Rat> out = m.offset;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < m.B.k; ++j) out[j] += x[i] * m.B.at(static_cast<int>(i), j);
    }
    return out;
}

} // namespace

std::vector<std::string> validate_ifs(const Ifs& I) {
    std::vector<std::string> out;
    if (I.dim < 1) out.push_back("dimension must be >= 1");
    if (static_cast<int>(I.maps.size()) != I.alphabet.size) out.push_back("one map per letter required");
    if (static_cast<int>(I.x0.size()) != I.dim) out.push_back("x0 has wrong dimension");
    if (!out.empty()) return out;
    for (const auto& m : I.maps) {
        if (static_cast<int>(m.offset.size()) != I.dim || m.B.k != I.dim) {
            out.push_back("map has wrong dimension");
            continue;
        }
        // affine image of the simplex is the hull of vertex images
        if (!in_simplex(m.offset)) out.push_back("map sends the origin outside the simplex");
        for (int i = 0; i < I.dim; ++i) {
            std::vector<Rat> v = m.offset;
            for (int j = 0; j < I.dim; ++j) v[j] += m.B.at(i, j);
            if (!in_simplex(v)) out.push_back("map sends a vertex outside the simplex");
        }
    }
    if (!in_simplex(I.x0)) out.push_back("x0 outside the simplex");
    for (int s : I.accepting)
        if (s < 0 || s >= I.dim) out.push_back("accepting coordinate out of range");
    return out;
}

Ifs ifs2_to_ifs(const Ifs2& I) {
    Ifs out;
    out.dim = 1;
    out.alphabet = Alphabet(2);
    Ifs::Map m0{{I.a}, Matrix<Rat>(1)}, m1{{I.c}, Matrix<Rat>(1)};
    m0.B.at(0, 0) = I.b;
    m1.B.at(0, 0) = I.d;
    out.maps = {std::move(m0), std::move(m1)};
    out.x0 = {I.x0};
    out.accepting = {0};
    out.state_order = {0, 1};
    return out;
}

Ifs2 ifs_to_ifs2(const Ifs& I) {
    if (I.dim != 1 || I.alphabet.size != 2 || I.accepting != std::vector<int>{0})
        throw input_error("not a two-state binary system accepting coordinate 0");
    return Ifs2{I.maps[0].offset[0], I.maps[0].B.at(0, 0), I.maps[1].offset[0], I.maps[1].B.at(0, 0), I.x0[0]};
}

Ifs pfa_to_ifs(const Pfa& A) {
    require_valid(A);
    int accepting_count = 0;
    for (int e : A.eta) accepting_count += e;
    if (accepting_count == 0 || accepting_count == A.k)
        throw input_error("degenerate PFA: rho is constant when no state or every state accepts");

    // permutation: minimal-index non-accepting state moved last, others in order
    int drop = 0;
    while (A.eta[drop]) ++drop;
    std::vector<int> order;
    for (int s = 0; s < A.k; ++s)
        if (s != drop) order.push_back(s);
    order.push_back(drop);

    const int d = A.k - 1;
    Ifs out;
    out.dim = d;
    out.alphabet = A.alphabet;
    out.state_order = order;
    out.x0.reserve(d);
    for (int i = 0; i < d; ++i) out.x0.push_back(A.pi[order[i]]);
    for (int i = 0; i < d; ++i)
        if (A.eta[order[i]]) out.accepting.push_back(i);

    for (int sigma = 0; sigma < A.alphabet.size; ++sigma) {
        const auto& P = A.P[sigma];
        Ifs::Map m;
        m.offset.reserve(d);
        for (int j = 0; j < d; ++j) m.offset.push_back(P.at(order[d], order[j]));
        m.B = Matrix<Rat>(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m.B.at(i, j) = P.at(order[i], order[j]) - m.offset[j];
        out.maps.push_back(std::move(m));
    }
    return out;
}

Ifs2 pfa_to_ifs2(const Pfa& A) {
    if (A.k != 2) throw input_error("pfa_to_ifs2 expects a two-state machine");
    return ifs_to_ifs2(pfa_to_ifs(A));
}

Pfa ifs_to_pfa(const Ifs& I, const std::vector<int>& accepting) {
    auto errs = validate_ifs(I);
    if (!errs.empty()) throw input_error("invalid IFS: " + errs.front());
    for (int s : accepting)
        if (s < 0 || s >= I.dim) throw input_error("accepting coordinate out of range");

    const int k = I.dim + 1;
    Pfa A;
    A.k = k;
    A.alphabet = I.alphabet;
    A.pi.reserve(k);
    Rat xs(0);
    for (const auto& x : I.x0) {
        A.pi.push_back(x);
        xs += x;
    }
    A.pi.push_back(1 - xs);
    A.eta.assign(static_cast<size_t>(k), 0);
    for (int s : accepting) A.eta[s] = 1;

    for (const auto& m : I.maps) {
        Matrix<Rat> P(k);
        Rat offsum(0);
        for (const auto& x : m.offset) offsum += x;
        for (int i = 0; i < I.dim; ++i) {
            Rat rowsum(0);
            for (int j = 0; j < I.dim; ++j) {
                P.at(i, j) = m.offset[j] + m.B.at(i, j);
                rowsum += P.at(i, j);
            }
            P.at(i, I.dim) = 1 - rowsum;
        }
        for (int j = 0; j < I.dim; ++j) P.at(I.dim, j) = m.offset[j];
        P.at(I.dim, I.dim) = 1 - offsum;
        A.P.push_back(std::move(P));
    }
    auto verrs = validate_pfa(A);
    if (!verrs.empty()) throw input_error("IFS maps leave the simplex: " + verrs.front().message);
    return A;
}

Pfa ifs_to_pfa(const Ifs& I) { return ifs_to_pfa(I, I.accepting); }

Pfa ifs2_to_pfa(const Ifs2& I) { return ifs_to_pfa(ifs2_to_ifs(I)); }

Rat ifs_rho(const Ifs& I, const Word& w) {
    std::vector<Rat> x = I.x0;
    for (size_t t = 0; t < w.size(); ++t) {
        if (w[t] >= I.alphabet.size) throw input_error("letter out of alphabet");
        x = apply_map(I.maps[w[t]], x);
    }
    Rat sum(0);
    for (int s : I.accepting) sum += x[s];
    return sum;
}

Rat ifs2_rho(const Ifs2& I, const Word& w) {
    Rat x = I.x0;
    for (size_t t = 0; t < w.size(); ++t) {
        if (w[t] >= 2) throw input_error("letter out of alphabet");
        x = I.apply(w[t], x);
    }
    return x;
}

const char* ifs2_case_name(Ifs2Case c) {
    switch (c) {
        case Ifs2Case::NoIntersect: return "NoIntersect";
        case Ifs2Case::Commuting: return "Commuting";
        case Ifs2Case::PosPosDec: return "PosPos-Dec";
        case Ifs2Case::PosPosInc: return "PosPos-Inc";
        case Ifs2Case::NegNegDec: return "NegNeg-Dec";
        case Ifs2Case::NegNegInc: return "NegNeg-Inc";
        case Ifs2Case::MixedDec: return "Mixed-Dec";
        case Ifs2Case::MixedInc: return "Mixed-Inc";
        case Ifs2Case::Degenerate: return "Degenerate";
    }
    return "?";
}

Ifs2Diagnostics ifs2_diagnostics(const Ifs2& I) {
    Ifs2Diagnostics out;
    if (I.b != 1) out.r0 = I.a / (1 - I.b);
    if (I.d != 1) out.r1 = I.c / (1 - I.d);
    if (I.b != I.d) {
        Rat ix = (I.c - I.a) / (I.b - I.d);
        Rat iy = (I.b * I.c - I.a * I.d) / (I.b - I.d);
        out.intersection = std::make_pair(ix, iy);
    }

    if (I.a == I.c && I.b == I.d) {
        out.label = Ifs2Case::Degenerate;
        return out;
    }
    // slope 1 inside [0,1] forces the identity map
    if (I.b == 1 || I.d == 1) {
        out.label = Ifs2Case::Degenerate;
        return out;
    }
    if (I.b == I.d) {
        out.label = Ifs2Case::NoIntersect; // parallel distinct lines
        return out;
    }
    if (I.a + I.b * I.c == I.c + I.a * I.d) { // f0 f1 = f1 f0
        out.label = Ifs2Case::Commuting;
        return out;
    }
    const auto& [ix, iy] = *out.intersection;
    if (ix < 0 || ix > 1 || iy < 0 || iy > 1) {
        out.label = Ifs2Case::NoIntersect;
        return out;
    }
    bool dec = iy < ix; // both maps move i_x the same way once they intersect
    if (I.b >= 0 && I.d >= 0)
        out.label = dec ? Ifs2Case::PosPosDec : Ifs2Case::PosPosInc;
    else if (I.b < 0 && I.d < 0)
        out.label = dec ? Ifs2Case::NegNegDec : Ifs2Case::NegNegInc;
    else
        out.label = dec ? Ifs2Case::MixedDec : Ifs2Case::MixedInc;
    return out;
}

} // namespace apc
