#pragma once

// Degree-truncated Gröbner-style completion for the free algebra, producing
// a rewriting system whose normal forms give graded dimension counts.  The
// completion is truncated at a degree budget D, but whenever every overlap
// of the final rule set resolves within the budget the system is certified
// confluent at all degrees.

#include "ncpoly.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace skein {

struct Rule {
    Word lhs;    // leading word
    NCPoly rhs;  // strictly smaller remainder: lhs == rhs modulo the ideal
};

class RewriteSystem {
public:
    std::vector<Rule> rules;
    int confluent_degree = 0;    // all overlaps of combined degree <= this resolve
    bool fully_confluent = false; // no overlap was skipped: exact at all degrees

    /// Largest degree at which normal forms are certified canonical.
    int safe_degree() const {
        if (fully_confluent) return 1 << 20;
        int maxrule = 0;
        for (const auto& r : rules) maxrule = std::max(maxrule, static_cast<int>(r.lhs.size()));
        return std::max(0, confluent_degree - maxrule);
    }

    /// Index of the first rule whose lhs occurs in w, with the position of
    /// its leftmost occurrence; prefers smaller positions, then rule order.
    std::optional<std::pair<size_t, size_t>> find_match(const Word& w) const {
        std::optional<std::pair<size_t, size_t>> best; // (pos, rule index)
        for (size_t r = 0; r < rules.size(); ++r) {
            if (rules[r].lhs.size() > w.size()) continue;
            size_t pos = w.find(rules[r].lhs);
            if (pos == Word::npos) continue;
            if (!best || pos < best->first) best = {pos, r};
        }
        return best;
    }

    bool is_normal(const Word& w) const { return !find_match(w).has_value(); }

    /// Normal form of a single word, memoized.
    const NCPoly& word_nf(const Word& w) const {
        auto it = nf_cache_.find(w);
        if (it != nf_cache_.end()) return it->second;
        NCPoly nf;
        auto m = find_match(w);
        if (!m) {
            nf = NCPoly::monomial(w);
        } else {
            const Rule& rule = rules[m->second];
            Word left = w.substr(0, m->first);
            Word right = w.substr(m->first + rule.lhs.size());
            NCPoly once = rule.rhs.framed(left, right);
            for (const auto& [u, c] : once.terms()) {
                NCPoly t = word_nf(u);
                t.scale(c);
                nf += t;
            }
        }
        return nf_cache_.emplace(w, std::move(nf)).first->second;
    }

    NCPoly reduce(const NCPoly& p) const {
        NCPoly out;
        for (const auto& [w, c] : p.terms()) {
            NCPoly t = word_nf(w);
            t.scale(c);
            out += t;
        }
        return out;
    }

    /// Normal words of degree exactly d over the given alphabet.
    std::vector<Word> normal_words(const std::vector<uint8_t>& alphabet, int d) const {
        std::vector<Word> layer{Word{}};
        for (int k = 0; k < d; ++k) {
            std::vector<Word> next;
            for (const Word& w : layer)
                for (uint8_t a : alphabet) {
                    Word x = w + static_cast<char>(a);
                    if (suffix_normal(x)) next.push_back(std::move(x));
                }
            layer = std::move(next);
        }
        return layer;
    }

    std::vector<size_t> normal_word_counts(const std::vector<uint8_t>& alphabet, int maxdeg) const {
        std::vector<size_t> counts;
        std::vector<Word> layer{Word{}};
        counts.push_back(1);
        for (int k = 1; k <= maxdeg; ++k) {
            std::vector<Word> next;
            for (const Word& w : layer)
                for (uint8_t a : alphabet) {
                    Word x = w + static_cast<char>(a);
                    if (suffix_normal(x)) next.push_back(std::move(x));
                }
            layer = std::move(next);
            counts.push_back(layer.size());
        }
        return counts;
    }

    void clear_cache() const { nf_cache_.clear(); }
    size_t cache_size() const { return nf_cache_.size(); }

    size_t hash() const {
        size_t h = 0xcbf29ce484222325ull;
        for (const auto& r : rules) {
            h = h * 1099511628211ull ^ std::hash<Word>{}(r.lhs);
            h = h * 1099511628211ull ^ r.rhs.hash();
        }
        return h;
    }

private:
    // Only the suffixes ending at the last letter need checking when words
    // are built left to right.
    bool suffix_normal(const Word& w) const {
        for (const auto& r : rules) {
            if (r.lhs.size() > w.size()) continue;
            if (w.compare(w.size() - r.lhs.size(), r.lhs.size(), r.lhs) == 0) return false;
        }
        return true;
    }

    mutable std::unordered_map<Word, NCPoly> nf_cache_;
};

struct CompletionBudget {
    int max_rules = 4000;
    long max_overlap_reductions = 2000000;
};

struct CompletionError : std::runtime_error {
    RewriteSystem partial;
    CompletionError(std::string msg, RewriteSystem part)
        : std::runtime_error(std::move(msg)), partial(std::move(part)) {}
};

namespace detail {

/// One S-polynomial per proper overlap of lhs1 (rule i1) and lhs2 (rule i2):
/// a suffix of lhs1 equals a prefix of lhs2.  Containment overlaps are
/// handled by inter-reduction, not here.
inline std::vector<NCPoly> overlap_spolys(const Rule& r1, const Rule& r2, int degree_cap,
                                          std::vector<int>* degrees = nullptr) {
    std::vector<NCPoly> out;
    const Word& u = r1.lhs;
    const Word& v = r2.lhs;
    if (u.empty() || v.empty()) return out;
    size_t maxt = std::min(u.size(), v.size()) - 1;
    for (size_t t = 1; t <= maxt; ++t) {
        if (u.compare(u.size() - t, t, v, 0, t) != 0) continue;
        int combined = static_cast<int>(u.size() + v.size() - t);
        if (degree_cap > 0 && combined > degree_cap) continue;
        // ambiguity word u·v[t:]; the two ways to rewrite it differ by:
        Word right = v.substr(t);
        Word left = u.substr(0, u.size() - t);
        out.push_back(r1.rhs.framed({}, right) - r2.rhs.framed(left, {}));
        if (degrees) degrees->push_back(combined);
    }
    return out;
}

} // namespace detail

/// All S-polynomials from proper overlaps (both orders, including self).
inline std::vector<NCPoly> spoly_overlaps(const Rule& r1, const Rule& r2) {
    std::vector<NCPoly> out = detail::overlap_spolys(r1, r2, 0);
    if (&r1 != &r2 && !(r1.lhs == r2.lhs)) {
        auto rev = detail::overlap_spolys(r2, r1, 0);
        out.insert(out.end(), rev.begin(), rev.end());
    }
    // containment: one lhs strictly inside the other
    auto contain = [&out](const Rule& big, const Rule& small) {
        if (big.lhs.size() <= small.lhs.size()) return;
        for (size_t pos = big.lhs.find(small.lhs); pos != Word::npos;
             pos = big.lhs.find(small.lhs, pos + 1)) {
            Word left = big.lhs.substr(0, pos);
            Word right = big.lhs.substr(pos + small.lhs.size());
            out.push_back(big.rhs - small.rhs.framed(left, right));
        }
    };
    contain(r1, r2);
    contain(r2, r1);
    return out;
}

/// Degree-truncated completion.  Relations are interpreted as rel = 0;
/// overlaps are processed in increasing combined degree, FIFO within a
/// degree.  Throws CompletionError when the budget is exhausted.
inline RewriteSystem complete(const std::vector<NCPoly>& relations, int D,
                              const CompletionBudget& budget = {}) {
    RewriteSystem sys;
    sys.confluent_degree = D;

    struct Pending {
        int degree;
        long seq;
        NCPoly poly;
        bool operator<(const Pending& o) const {
            return degree != o.degree ? degree < o.degree : seq < o.seq;
        }
    };
    std::deque<Pending> agenda;
    long seq = 0;
    for (const NCPoly& r : relations) {
        if (r.degree() > D) throw std::invalid_argument("complete: relation degree exceeds D");
        agenda.push_back({r.degree(), seq++, r});
    }
    bool skipped_overlap = false;
    long reductions = 0;

    auto pop_min = [&agenda]() {
        auto it = std::min_element(agenda.begin(), agenda.end());
        Pending p = std::move(*it);
        agenda.erase(it);
        return p;
    };

    while (!agenda.empty()) {
        Pending item = pop_min();
        if (++reductions > budget.max_overlap_reductions)
            throw CompletionError("completion budget exceeded (reductions)", sys);
        NCPoly nf = sys.reduce(item.poly);
        if (nf.is_zero()) continue;
        if (nf.degree() > D) { skipped_overlap = true; continue; } // above truncation
        // new rule
        Scalar lc = nf.leading_coeff();
        Word lhs = nf.leading_word();
        if (lhs.empty()) throw CompletionError("complete: unit lies in the ideal", sys);
        NCPoly rhs = NCPoly::monomial(lhs) - Scalar(1) / lc * nf;
        if (static_cast<int>(sys.rules.size()) >= budget.max_rules)
            throw CompletionError("completion budget exceeded (rules)", sys);

        // retire rules whose lhs contains the new lhs; they return to the agenda
        std::vector<Rule> kept;
        for (Rule& r : sys.rules) {
            if (r.lhs.find(lhs) != Word::npos) {
                agenda.push_back({static_cast<int>(r.lhs.size()), seq++,
                                  NCPoly::monomial(r.lhs) - r.rhs});
            } else {
                kept.push_back(std::move(r));
            }
        }
        sys.rules = std::move(kept);
        sys.rules.push_back({lhs, rhs});
        sys.clear_cache();
        const Rule& nr = sys.rules.back();

        // queue overlaps with every rule (including self)
        for (const Rule& r : sys.rules) {
            for (const Rule* pr : {&r, &nr}) {
                const Rule* qr = pr == &r ? &nr : &r;
                std::vector<int> degs;
                auto sps = detail::overlap_spolys(*pr, *qr, 0, &degs);
                for (size_t k = 0; k < sps.size(); ++k) {
                    if (degs[k] > D) { skipped_overlap = true; continue; }
                    agenda.push_back({degs[k], seq++, std::move(sps[k])});
                }
                if (&r == &nr) break; // self-overlap once
            }
        }
    }

    // Certify: if nothing was skipped, every overlap of the final rules
    // resolved, so the system is confluent at all degrees.
    sys.fully_confluent = !skipped_overlap;
    sys.clear_cache();
    return sys;
}

// ---- cache file format -----------------------------------------------------
//
//   line 1: "skeinrw 1 <presentation-hash> <D> <fully_confluent>"
//   then one rule per line: lhs TAB nterms TAB (coeff TAB word)*

inline void save_rewrite_system(const RewriteSystem& sys, size_t presentation_hash,
                                const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cache file " + path);
    out << "skeinrw 1 " << presentation_hash << ' ' << sys.confluent_degree << ' '
        << (sys.fully_confluent ? 1 : 0) << '\n';
    for (const auto& r : sys.rules) {
        out << word_str(r.lhs) << '\t' << r.rhs.term_count();
        for (const auto& [w, c] : r.rhs.terms()) out << '\t' << c.str() << '\t' << word_str(w);
        out << '\n';
    }
}

inline std::optional<RewriteSystem> load_rewrite_system(size_t presentation_hash, int D,
                                                        const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string magic;
    int version = 0, fc = 0, d = 0;
    size_t hash = 0;
    in >> magic >> version >> hash >> d >> fc;
    if (magic != "skeinrw" || version != 1 || hash != presentation_hash || d != D)
        return std::nullopt;
    in.ignore();
    RewriteSystem sys;
    sys.confluent_degree = d;
    sys.fully_confluent = fc != 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::getline(ls, field, '\t');
        Rule r;
        r.lhs = parse_word(field);
        std::getline(ls, field, '\t');
        size_t n = std::stoul(field);
        for (size_t i = 0; i < n; ++i) {
            std::getline(ls, field, '\t');
            Scalar c = Scalar::parse(field);
            std::getline(ls, field, '\t');
            r.rhs.add_term(parse_word(field), c);
        }
        sys.rules.push_back(std::move(r));
    }
    return sys;
}

} // namespace skein
