#pragma once

// Laurent polynomials in a single variable s = q^{1/2} = A, with exact
// rational coefficients.  The zero polynomial is the empty map; no zero
// coefficients are ever stored.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace skein {

using Rat = mpq_class;

class LaurentPoly {
public:
    using Terms = std::map<int, Rat>;

    LaurentPoly() = default;
    LaurentPoly(long c) { if (c != 0) terms_[0] = Rat(c); }
    LaurentPoly(const Rat& c) { if (c != 0) terms_[0] = c; }

    static LaurentPoly monomial(const Rat& c, int exp) {
        LaurentPoly p;
        if (c != 0) p.terms_[exp] = c;
        return p;
    }
    static LaurentPoly s_pow(int exp) { return monomial(1, exp); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 &&
               terms_.begin()->second == 1;
    }

    /// Image under the ring involution s -> s^{-1}.
    LaurentPoly mirror() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    int min_exp() const { require_nonzero(); return terms_.begin()->first; }
    int max_exp() const { require_nonzero(); return terms_.rbegin()->first; }
    const Rat& leading_coeff() const { require_nonzero(); return terms_.rbegin()->second; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    void scale(const Rat& c, int exp_shift = 0) {
        if (c == 0) { terms_.clear(); return; }
        Terms t;
        for (const auto& [e, v] : terms_) t[e + exp_shift] = v * c;
        terms_ = std::move(t);
    }

    /// Evaluate at s = s0 (s0 != 0; negative exponents are fine).
    Rat eval(const Rat& s0) const {
        if (s0 == 0) throw std::domain_error("LaurentPoly: evaluation at s = 0");
        Rat acc = 0;
        for (const auto& [e, c] : terms_) acc += c * rat_pow(s0, e);
        return acc;
    }

    void add_term(int exp, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) { terms_[exp] = c; return; }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    size_t term_count() const { return terms_.size(); }

    size_t hash() const {
        size_t h = 0x9e3779b97f4a7c15ull;
        for (const auto& [e, c] : terms_) {
            h = h * 1099511628211ull + static_cast<size_t>(e + 1000);
            h = h * 1099511628211ull + std::hash<std::string>{}(c.get_str());
        }
        return h;
    }

    static Rat rat_pow(const Rat& b, int e) {
        if (e == 0) return Rat(1);
        Rat base = e > 0 ? b : Rat(1) / b;
        int n = e > 0 ? e : -e;
        Rat acc = 1;
        while (n) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }

private:
    void require_nonzero() const {
        if (terms_.empty()) throw std::domain_error("LaurentPoly: zero polynomial");
    }
    Terms terms_;
};

/// Polynomial division step support: gcd over Q[s] of the "positive parts".
/// Both inputs nonzero; the result is monic with min exponent 0.
inline LaurentPoly laurent_gcd(LaurentPoly a, LaurentPoly b) {
    if (a.is_zero() || b.is_zero())
        throw std::domain_error("laurent_gcd: zero input");
    a.scale(1, -a.min_exp());
    b.scale(1, -b.min_exp());
    // Euclidean algorithm on ordinary polynomials in s.
    auto degree = [](const LaurentPoly& p) { return p.max_exp(); };
    while (!b.is_zero()) {
        // a mod b
        LaurentPoly r = a;
        while (!r.is_zero() && degree(r) >= degree(b)) {
            Rat f = r.leading_coeff() / b.leading_coeff();
            int sh = degree(r) - degree(b);
            LaurentPoly t = b;
            t.scale(f, sh);
            r -= t;
        }
        a = b;
        b = std::move(r);
        if (!b.is_zero()) b.scale(1, -b.min_exp());
    }
    a.scale(Rat(1) / a.leading_coeff());
    return a;
}

/// Exact division (throws if not divisible).
inline LaurentPoly laurent_div_exact(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw std::domain_error("laurent_div_exact: division by zero");
    if (num.is_zero()) return {};
    LaurentPoly r = num, q;
    int dden = den.max_exp();
    // An exact quotient has min exponent num.min - den.min; going below
    // that means the division does not terminate.
    int floor_exp = num.min_exp() - den.min_exp();
    while (!r.is_zero()) {
        int sh = r.max_exp() - dden;
        if (sh < floor_exp) throw std::domain_error("laurent_div_exact: not divisible");
        Rat f = r.leading_coeff() / den.leading_coeff();
        q.add_term(sh, f);
        LaurentPoly t = den;
        t.scale(f, sh);
        r -= t;
        if (!r.is_zero() && r.max_exp() - dden > sh)
            throw std::domain_error("laurent_div_exact: not divisible");
    }
    // Verify: q*den == num (cheap; catches inexact division with Laurent tails).
    if (!(q * den == num)) throw std::domain_error("laurent_div_exact: not divisible");
    return q;
}

} // namespace skein
