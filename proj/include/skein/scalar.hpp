#pragma once

// The coefficient field Q(s), s = q^{1/2} = A.  A Scalar is a reduced
// fraction of Laurent polynomials; the denominator is monic with minimal
// exponent 0, so equal values have bit-identical representations.

#include "laurent.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

namespace skein {

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SamplePoint {
    Rat value;
    explicit SamplePoint(Rat v) : value(std::move(v)) {
        if (value == 0) throw std::domain_error("SamplePoint: s0 must be nonzero");
        if (value == 1 || value == -1)
            throw std::domain_error("SamplePoint: s0 on the root-of-unity denylist");
    }
};

class Scalar {
public:
    Scalar() : den_(1) {}
    Scalar(long c) : num_(c), den_(1) {}
    Scalar(const Rat& c) : num_(c), den_(1) {}
    Scalar(LaurentPoly num) : num_(std::move(num)), den_(1) {}
    Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        reduce();
    }

    static Scalar s_pow(int k) { return Scalar(LaurentPoly::s_pow(k)); }
    static Scalar q_pow(int k) { return Scalar(LaurentPoly::s_pow(2 * k)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a) {
        Scalar r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
        return Scalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    /// Image under the ring involution s -> s^{-1}.
    Scalar mirror() const { return Scalar(num_.mirror(), den_.mirror()); }

    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
        return Scalar(den_, num_);
    }

    Scalar pow(int k) const {
        if (k < 0) return inverse().pow(-k);
        Scalar acc(1), base = *this;
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    /// Ring-homomorphism image under s -> p.value; throws PoleError if the
    /// denominator vanishes there.
    Rat specialize(const SamplePoint& p) const { return specialize_at(p.value); }

    /// The q -> 1 (s -> 1) limit for classical checks.
    Rat classical_limit() const { return specialize_at(Rat(1)); }

    Rat specialize_at(const Rat& s0) const {
        Rat d = den_.eval(s0);
        if (d == 0) throw PoleError("Scalar: pole at s = " + rat_str(s0));
        return num_.eval(s0) / d;
    }

    /// True if this is a single term c*s^k (used by normalizations that need
    /// an explicit square root).
    bool is_monomial() const { return den_.is_one() && num_.term_count() == 1; }

    size_t hash() const { return num_.hash() * 0x100000001b3ull ^ den_.hash(); }

    std::string str() const {
        if (den_.is_one()) return poly_str(num_);
        // Numerator always parenthesized before a fraction bar, so rational
        // coefficients like 5/3 can't be confused with the bar itself.
        std::string d = den_.term_count() > 1 ? "(" + poly_str(den_) + ")" : poly_str(den_);
        return "(" + poly_str(num_) + ")/" + d;
    }

    static Scalar parse(const std::string& text);

    static std::string poly_str(const LaurentPoly& p) {
        if (p.is_zero()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            Rat ac = c < 0 ? Rat(-c) : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            if (e == 0) {
                out += rat_str(ac);
            } else {
                if (ac != 1) out += rat_str(ac) + "*";
                out += e == 1 ? "s" : "s^" + std::to_string(e);
            }
        }
        return out;
    }

    static std::string rat_str(const Rat& r) { return r.get_str(); }

private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("Scalar: zero denominator");
        if (num_.is_zero()) { den_ = LaurentPoly(1); return; }
        // Shift the denominator's minimal exponent to 0 (the s-power unit
        // moves into the numerator).
        int dm = den_.min_exp();
        den_.scale(1, -dm);
        num_.scale(1, -dm);
        if (!den_.is_one()) {
            LaurentPoly g = laurent_gcd(num_, den_);
            if (!g.is_one()) {
                num_ = laurent_div_exact(num_, g);
                den_ = laurent_div_exact(den_, g);
                if (!den_.is_one() && den_.min_exp() != 0) {
                    int sh = den_.min_exp();
                    den_.scale(1, -sh);
                    num_.scale(1, -sh);
                }
            }
        }
        Rat lc = den_.leading_coeff();
        if (lc != 1) {
            den_.scale(Rat(1) / lc);
            num_.scale(Rat(1) / lc);
        }
    }

    LaurentPoly num_, den_;
};

namespace detail {

class ScalarParser {
public:
    explicit ScalarParser(const std::string& s) : s_(s) {}

    Scalar parse() {
        LaurentPoly num = parse_poly();
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            LaurentPoly den = parse_factor_poly();
            skip_ws();
            if (pos_ != s_.size()) fail("trailing input");
            return Scalar(std::move(num), std::move(den));
        }
        if (pos_ != s_.size()) fail("trailing input");
        return Scalar(std::move(num));
    }

private:
    LaurentPoly parse_poly() {
        skip_ws();
        LaurentPoly p;
        if (peek() == '(') {
            ++pos_;
            p = parse_sum();
            expect(')');
        } else {
            p = parse_sum();
        }
        return p;
    }

    // A factor after '/': either parenthesized or a single term.
    LaurentPoly parse_factor_poly() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            LaurentPoly p = parse_sum();
            expect(')');
            return p;
        }
        return parse_term(1);
    }

    LaurentPoly parse_sum() {
        LaurentPoly p;
        int sign = 1;
        skip_ws();
        if (peek() == '-') { sign = -1; ++pos_; }
        else if (peek() == '+') ++pos_;
        p += parse_term(sign);
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') sign = 1;
            else if (c == '-') sign = -1;
            else break;
            ++pos_;
            p += parse_term(sign);
        }
        return p;
    }

    LaurentPoly parse_term(int sign) {
        skip_ws();
        Rat coeff = sign;
        bool have_coeff = false;
        if (std::isdigit(peek())) {
            coeff = Rat(sign) * parse_rat();
            have_coeff = true;
            skip_ws();
            if (peek() == '*') { ++pos_; skip_ws(); }
        }
        char c = peek();
        if (c == 's' || c == 'q' || c == 'A') {
            ++pos_;
            int mult = c == 'q' ? 2 : 1;
            int exp = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                exp = parse_int();
            }
            return LaurentPoly::monomial(coeff, mult * exp);
        }
        if (!have_coeff) fail("expected term");
        return LaurentPoly(coeff);
    }

    Rat parse_rat() {
        std::string digits = parse_digits();
        // digit/digit is always a rational coefficient: a canonical
        // denominator is monic with minimal exponent 0, hence never a bare
        // integer, so the fraction bar is never followed by a digit.
        if (peek() == '/' && pos_ + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            Rat r(digits + "/" + parse_digits());
            r.canonicalize();
            return r;
        }
        return Rat(digits);
    }

    std::string parse_digits() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected number");
        return s_.substr(start, pos_ - start);
    }

    int parse_int() {
        skip_ws();
        int sign = 1;
        if (peek() == '-') { sign = -1; ++pos_; }
        else if (peek() == '+') ++pos_;
        return sign * std::stoi(parse_digits());
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("Scalar parse error at position " +
                                    std::to_string(pos_) + ": " + msg + " in \"" + s_ + "\"");
    }

    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace detail

inline Scalar Scalar::parse(const std::string& text) {
    return detail::ScalarParser(text).parse();
}

} // namespace skein

template <>
struct std::hash<skein::Scalar> {
    size_t operator()(const skein::Scalar& s) const { return s.hash(); }
};
