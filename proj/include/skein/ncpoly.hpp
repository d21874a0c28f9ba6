#pragma once

// Elements of the free associative algebra over the scalar field Q(s),
// stored as ordered term maps (degree-lex order, largest term last).

#include "scalar.hpp"
#include "word.hpp"

#include <map>

namespace skein {

class NCPoly {
public:
    using Terms = std::map<Word, Scalar, DegLexLess>;

    NCPoly() = default;
    NCPoly(const Scalar& c) { add_term({}, c); }
    NCPoly(long c) { add_term({}, Scalar(c)); }
    static NCPoly monomial(const Word& w, Scalar c = Scalar(1)) {
        NCPoly p;
        p.add_term(w, std::move(c));
        return p;
    }
    static NCPoly gen(const GenId& g) { return monomial(Word(1, static_cast<char>(g.code()))); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    const Word& leading_word() const { require_nonzero(); return terms_.rbegin()->first; }
    const Scalar& leading_coeff() const { require_nonzero(); return terms_.rbegin()->second; }
    int degree() const { return is_zero() ? -1 : static_cast<int>(leading_word().size()); }

    Scalar coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

    NCPoly& operator+=(const NCPoly& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        for (const auto& [w, c] : o.terms_) add_term(w, -c);
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator-(const NCPoly& a) {
        NCPoly r;
        for (const auto& [w, c] : a.terms_) r.terms_[w] = -c;
        return r;
    }
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        NCPoly r;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) r.add_term(wa + wb, ca * cb);
        return r;
    }
    friend NCPoly operator*(const Scalar& c, NCPoly p) {
        p.scale(c);
        return p;
    }
    NCPoly& operator*=(const NCPoly& o) { return *this = *this * o; }

    void scale(const Scalar& c) {
        if (c.is_zero()) { terms_.clear(); return; }
        for (auto& [w, v] : terms_) v *= c;
    }

    /// left * p * right with monomial multipliers.
    NCPoly framed(const Word& left, const Word& right) const {
        NCPoly r;
        for (const auto& [w, c] : terms_) r.terms_.emplace(left + w + right, c);
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        // Print largest term first.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) out += " + ";
            first = false;
            std::string cs = it->second.str();
            if (it->first.empty()) { out += cs; continue; }
            if (cs == "1") out += word_str(it->first);
            else out += "[" + cs + "]*" + word_str(it->first);
        }
        return out;
    }

    size_t hash() const {
        size_t h = 14695981039346656037ull;
        for (const auto& [w, c] : terms_) {
            h = h * 1099511628211ull ^ std::hash<Word>{}(w);
            h = h * 1099511628211ull ^ c.hash();
        }
        return h;
    }

private:
    void require_nonzero() const {
        if (terms_.empty()) throw std::domain_error("NCPoly: zero polynomial");
    }
    Terms terms_;
};

} // namespace skein
