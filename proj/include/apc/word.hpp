#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "apc/errors.hpp"

namespace apc {

/// Alphabet {0, 1, ..., size-1}.
struct Alphabet {
    int size = 2;

    explicit Alphabet(int b = 2) : size(b) {
        if (b < 1) throw input_error("alphabet size must be >= 1");
    }
    bool operator==(const Alphabet&) const = default;
};

/// A finite string over an Alphabet, stored as letter indices.
struct Word {
    Alphabet alphabet;
    std::vector<uint8_t> letters;

    Word() = default;
    Word(Alphabet a, std::vector<uint8_t> ls) : alphabet(a), letters(std::move(ls)) {
        for (auto c : letters)
            if (c >= alphabet.size) throw input_error("letter out of alphabet");
    }

    /// Parses a digit string like "0110"; the alphabet defaults to the
    /// smallest size covering all digits (at least 2) unless given.
    static Word parse(const std::string& digits, int alphabet_size = 0) {
        std::vector<uint8_t> ls;
        int maxd = 1;
        for (char c : digits) {
            if (c < '0' || c > '9') throw input_error("word letters must be digits 0..9");
            ls.push_back(static_cast<uint8_t>(c - '0'));
            maxd = std::max(maxd, c - '0');
        }
        int b = alphabet_size > 0 ? alphabet_size : maxd + 1;
        return Word(Alphabet(b), std::move(ls));
    }

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    uint8_t operator[](size_t i) const { return letters[i]; }

    Word append(uint8_t letter) const {
        Word w = *this;
        if (letter >= alphabet.size) throw input_error("letter out of alphabet");
        w.letters.push_back(letter);
        return w;
    }

    Word concat(const Word& other) const {
        Word w = *this;
        w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
        return w;
    }

    Word reversed() const {
        Word w = *this;
        std::reverse(w.letters.begin(), w.letters.end());
        return w;
    }

    /// 0 <-> 1 on a binary word.
    Word bitflip() const {
        Word w = *this;
        for (auto& c : w.letters) c = static_cast<uint8_t>(1 - c);
        return w;
    }

    std::string str() const {
        std::string s;
        s.reserve(letters.size());
        for (auto c : letters) s.push_back(static_cast<char>('0' + c));
        return s;
    }

    bool operator==(const Word& o) const { return letters == o.letters; }
    bool operator!=(const Word& o) const { return letters != o.letters; }
    // Length-lexicographic order; used for canonical tie-breaking.
    bool operator<(const Word& o) const {
        if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
        return letters < o.letters;
    }
};

/// c^n as a word (c repeated n times).
inline Word repeat_word(Alphabet a, uint8_t c, size_t n) {
    return Word(a, std::vector<uint8_t>(n, c));
}

} // namespace apc
