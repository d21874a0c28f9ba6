#pragma once

// Generators and monomials of the free algebra.  A generator is one matrix
// entry a^i_j or b^i_j of one handle; words are packed strings of generator
// codes so subword search and hashing come from std::string.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace skein {

enum class GenKind : uint8_t { A = 0, B = 1 };

struct GenId {
    int factor;   // handle index, 1-based
    GenKind kind; // a- or b-matrix of that handle
    int row;      // 1 or 2
    int col;      // 1 or 2

    // Code order realizes the generator order: factor ascending, a before b,
    // then row-major within the matrix.
    uint8_t code() const {
        return static_cast<uint8_t>(((factor - 1) * 2 + static_cast<int>(kind)) * 4 +
                                    (row - 1) * 2 + (col - 1));
    }
    static GenId from_code(uint8_t c) {
        GenId g;
        g.factor = c / 8 + 1;
        g.kind = (c / 4) % 2 ? GenKind::B : GenKind::A;
        g.row = (c / 2) % 2 + 1;
        g.col = c % 2 + 1;
        return g;
    }

    std::string str() const {
        std::string s(1, kind == GenKind::A ? 'a' : 'b');
        s += std::to_string(factor);
        s += '_';
        s += std::to_string(row);
        s += std::to_string(col);
        return s;
    }

    friend bool operator==(const GenId&, const GenId&) = default;
};

inline GenId gen_a(int factor, int row, int col) { return {factor, GenKind::A, row, col}; }
inline GenId gen_b(int factor, int row, int col) { return {factor, GenKind::B, row, col}; }

/// A monomial: sequence of generator codes.  Empty = unit.
using Word = std::string;

inline Word word_of(std::initializer_list<GenId> gens) {
    Word w;
    for (const GenId& g : gens) w.push_back(static_cast<char>(g.code()));
    return w;
}

inline std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += '.';
        out += GenId::from_code(static_cast<uint8_t>(w[i])).str();
    }
    return out;
}

inline Word parse_word(const std::string& text) {
    if (text == "1") return {};
    Word w;
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '.') { ++i; continue; }
        char kc = text[i++];
        if (kc != 'a' && kc != 'b') throw std::invalid_argument("parse_word: bad kind in " + text);
        size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw std::invalid_argument("parse_word: missing factor in " + text);
        int factor = std::stoi(text.substr(i, j - i));
        i = j;
        if (i >= text.size() || text[i] != '_') throw std::invalid_argument("parse_word: missing _ in " + text);
        ++i;
        if (i + 1 >= text.size()) throw std::invalid_argument("parse_word: truncated in " + text);
        int row = text[i] - '0';
        int col = text[i + 1] - '0';
        i += 2;
        if (row < 1 || row > 2 || col < 1 || col > 2)
            throw std::invalid_argument("parse_word: bad indices in " + text);
        GenId g{factor, kc == 'a' ? GenKind::A : GenKind::B, row, col};
        w.push_back(static_cast<char>(g.code()));
    }
    return w;
}

/// Degree-first, then lexicographic by generator code.
inline std::strong_ordering monomial_compare(const Word& u, const Word& v) {
    if (u.size() != v.size()) return u.size() <=> v.size();
    for (size_t i = 0; i < u.size(); ++i) {
        auto a = static_cast<uint8_t>(u[i]), b = static_cast<uint8_t>(v[i]);
        if (a != b) return a <=> b;
    }
    return std::strong_ordering::equal;
}

struct DegLexLess {
    bool operator()(const Word& u, const Word& v) const {
        return monomial_compare(u, v) == std::strong_ordering::less;
    }
};

} // namespace skein
