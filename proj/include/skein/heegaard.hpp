#pragma once

#include <algorithm>
#include <chrono>
#include <random>
#include <string>
#include <limits>
#include <unordered_map>
#include <vector>

#include <skein/automorphism.hpp>
#include <skein/fp.hpp>
#include <skein/linsolve.hpp>
#include <skein/presentation.hpp>

namespace skein {

enum class Side { left, right };

/// A one-sided ideal presenting a cyclic module over the internal skein
/// algebra: the quotient A / A·J (left side) or A / J·A (right side).
struct CyclicModuleSpec {
    Side side = Side::left;
    std::vector<NCPoly> ideal_generators;
};

/// The untwisted handlebody module: the counit kills the b-matrix of every
/// factor to the identity, so the ideal has the 4g generators b_11 - 1,
/// b_12, b_21, b_22 - 1.
inline CyclicModuleSpec handlebody_ideal(int g, Side side) {
    if (g < 1) throw std::invalid_argument("handlebody_ideal: genus >= 1 required");
    CyclicModuleSpec m;
    m.side = side;
    for (int f = 1; f <= g; ++f)
        for (int r = 1; r <= 2; ++r)
            for (int c = 1; c <= 2; ++c) {
                NCPoly gen = NCPoly::gen(gen_b(f, r, c));
                if (r == c) gen = gen - NCPoly(1);
                m.ideal_generators.push_back(gen);
            }
    return m;
}

inline CyclicModuleSpec apply_automorphism(const CyclicModuleSpec& m, const Automorphism& phi,
                                           const RewriteSystem& sys) {
    CyclicModuleSpec out;
    out.side = m.side;
    for (const auto& g : m.ideal_generators) out.ideal_generators.push_back(sys.reduce(phi.apply(g)));
    return out;
}

struct DimensionReport {
    long dimension = -1;
    int stabilization_degree = -1;
    bool stabilized = false;
    std::vector<Word> basis;
    int safe_degree = 0;
    int max_degree = 0;
    std::vector<long> per_degree;
    std::string strategy;
    double seconds = 0.0;
    size_t rows = 0, cols = 0;
};

inline std::vector<SamplePoint> default_samples(unsigned seed, int count) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(2, 97), den(2, 97);
    std::vector<SamplePoint> out;
    while ((int)out.size() < count) {
        Rat v(num(rng), den(rng));
        v.canonicalize();
        if (v == 1 || v == -1 || v == 0) continue;
        out.push_back(SamplePoint{v});
    }
    return out;
}

namespace detail {

inline bool is_pure(const Word& w, GenKind kind) {
    for (unsigned char ch : w)
        if (GenId::from_code(ch).kind != kind) return false;
    return true;
}

/// Whether the completed rules keep the "a-letters then b-letters" splitting
/// usable: every two-letter word b·a must be a rule head, and no mixed rule
/// head may itself be in a*b* form (such a head would rewrite split words).
inline bool splitting_fast_path_ok(const RewriteSystem& sys, int genus) {
    for (int fb = 1; fb <= genus; ++fb)
        for (int rb = 1; rb <= 2; ++rb)
            for (int cb = 1; cb <= 2; ++cb)
                for (int fa = 1; fa <= genus; ++fa)
                    for (int ra = 1; ra <= 2; ++ra)
                        for (int ca = 1; ca <= 2; ++ca) {
                            Word w = word_of({gen_b(fb, rb, cb), gen_a(fa, ra, ca)});
                            if (!sys.find_match(w)) return false;
                        }
    for (const auto& r : sys.rules) {
        if (is_pure(r.lhs, GenKind::A) || is_pure(r.lhs, GenKind::B)) continue;
        bool seen_b = false, split_form = true;
        for (unsigned char ch : r.lhs) {
            bool is_b = GenId::from_code(ch).kind == GenKind::B;
            if (is_b) seen_b = true;
            else if (seen_b) { split_form = false; break; }
        }
        if (split_form) return false; // a mixed a*b* head breaks the projection
    }
    return true;
}

/// Counit of the b-subalgebra on a pure-b word (sends the b-matrix to the
/// identity); an off-diagonal letter kills the word.
inline bool counit_is_one(const Word& w) {
    for (unsigned char ch : w) {
        GenId g = GenId::from_code(ch);
        if (g.row != g.col) return false;
    }
    return true;
}

/// Projection of a normal form onto pure-a words, applying the counit to the
/// pure-b tail of every term. Only valid under splitting_fast_path_ok.
inline NCPoly counit_project(const NCPoly& nf) {
    NCPoly out;
    for (const auto& [w, c] : nf.terms()) {
        size_t cut = 0;
        while (cut < w.size() && GenId::from_code(w[cut]).kind == GenKind::A) ++cut;
        Word tail = w.substr(cut);
        if (!counit_is_one(tail)) continue;
        out.add_term(w.substr(0, cut), c);
    }
    return out;
}

/// Word-level counit projection: strip the maximal pure-a prefix, keep the
/// word iff the pure-b tail is diagonal. Only valid under splitting_fast_path_ok.
inline bool counit_project_word(const Word& w, Word& out) {
    size_t cut = 0;
    while (cut < w.size() && GenId::from_code(w[cut]).kind == GenKind::A) ++cut;
    if (!counit_is_one(w.substr(cut))) return false;
    out = w.substr(0, cut);
    return true;
}

using FpPoly = std::map<Word, Fp, DegLexLess>;

inline void fp_add_scaled(FpPoly& dst, const FpPoly& src, Fp c) {
    if (c.is_zero()) return;
    for (const auto& [w, x] : src) {
        auto [it, ins] = dst.try_emplace(w, Fp{});
        it->second += c * x;
        if (it->second.is_zero()) dst.erase(it);
        (void)ins;
    }
}

inline FpPoly fp_framed(const FpPoly& p, const Word& l, const Word& r) {
    FpPoly out;
    for (const auto& [w, c] : p) out.emplace(l + w + r, c);
    return out;
}

inline FpPoly fp_specialize(const NCPoly& p, const Rat& at) {
    FpPoly out;
    for (const auto& [w, c] : p.terms()) {
        Fp x = Fp::from_rat(c.specialize_at(at));
        if (!x.is_zero()) out.emplace(w, x);
    }
    return out;
}

inline int b_count(const Word& w) {
    int n = 0;
    for (unsigned char ch : w)
        if (GenId::from_code(ch).kind == GenKind::B) ++n;
    return n;
}

/// A rewrite system over F_p, completed independently at each sample point.
/// The symbolic completion is intractable past degree ~8 because of rational
/// function coefficient growth, but over F_p coefficients are machine words,
/// so the same degree-truncated Knuth-Bendix procedure reaches the much
/// higher column degrees the dimension engine needs. Monic rules make each
/// F_p rule an honest member of the specialized defining ideal, so the upper
/// bound semantics of the rank readout are preserved.
struct FpSystem {
    struct FpRule {
        Word lhs;
        FpPoly rhs;
    };
    std::vector<FpRule> rules;
    int confluent_degree = 0;
    bool fully_confluent = false;

    /// Inter-reduced heads are substring-free, so at most one head matches at
    /// any position; a hash lookup over all substrings beats scanning the
    /// rule list, which dominates completion time otherwise.
    void reindex() const {
        head_index_.clear();
        max_head_ = 0;
        for (size_t r = 0; r < rules.size(); ++r) {
            head_index_.emplace(rules[r].lhs, r);
            max_head_ = std::max(max_head_, rules[r].lhs.size());
        }
    }

    std::optional<std::pair<size_t, size_t>> find_match(const Word& w) const {
        if (head_index_.size() != rules.size()) reindex();
        for (size_t pos = 0; pos < w.size(); ++pos) {
            size_t maxlen = std::min(max_head_, w.size() - pos);
            for (size_t len = 1; len <= maxlen; ++len) {
                auto it = head_index_.find(std::string_view(w).substr(pos, len));
                if (it != head_index_.end()) return std::make_pair(pos, it->second);
            }
        }
        return std::nullopt;
    }

    /// Returns a reference into the cache; unordered_map nodes are stable
    /// under later insertions. The cache is trimmed only at recursion depth
    /// zero so references held across recursive calls stay valid.
    const FpPoly& nf_word(const Word& w) const {
        if (depth_ == 0 && cache_.size() >= cache_cap) cache_.clear();
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        FpPoly out;
        auto m = find_match(w);
        if (!m) {
            out[w] = Fp{1};
        } else {
            const FpRule& rule = rules[m->second];
            Word left = w.substr(0, m->first);
            Word right = w.substr(m->first + rule.lhs.size());
            ++depth_;
            for (const auto& [t, c] : rule.rhs)
                fp_add_scaled(out, nf_word(left + t + right), c);
            --depth_;
        }
        return cache_.emplace(w, std::move(out)).first->second;
    }

    FpPoly reduce(const FpPoly& p) const {
        FpPoly out;
        for (const auto& [w, c] : p) fp_add_scaled(out, nf_word(w), c);
        return out;
    }

    std::vector<Word> normal_words_upto(const std::vector<uint8_t>& alphabet, int d) const {
        std::vector<Word> out{Word{}};
        std::vector<Word> layer{Word{}};
        for (int k = 1; k <= d; ++k) {
            std::vector<Word> next;
            for (const Word& w : layer)
                for (uint8_t a : alphabet) {
                    Word x = w + static_cast<char>(a);
                    if (suffix_normal(x)) next.push_back(std::move(x));
                }
            layer = std::move(next);
            out.insert(out.end(), layer.begin(), layer.end());
        }
        return out;
    }

    void clear_cache() const { cache_.clear(); }

  private:
    bool suffix_normal(const Word& w) const {
        for (const auto& r : rules) {
            if (r.lhs.size() > w.size()) continue;
            if (w.compare(w.size() - r.lhs.size(), r.lhs.size(), r.lhs) == 0) return false;
        }
        return true;
    }

    struct SvHash {
        using is_transparent = void;
        size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
        size_t operator()(const Word& s) const { return std::hash<std::string_view>{}(s); }
    };
    struct SvEq {
        using is_transparent = void;
        bool operator()(std::string_view a, std::string_view b) const { return a == b; }
    };
    mutable std::unordered_map<Word, size_t, SvHash, SvEq> head_index_;
    mutable size_t max_head_ = 0;
    mutable std::unordered_map<Word, FpPoly> cache_;
    mutable int depth_ = 0;
    static constexpr size_t cache_cap = 400000;
};

/// Degree-truncated completion over F_p; mirrors the symbolic procedure.
/// With max_b >= 0 only ambiguities with at most that many b-letters are
/// resolved. Rule right-hand sides never raise the b-letter count (checked
/// below), so words with at most max_b b-letters rewrite entirely inside
/// their sector and the truncated system is confluent on it: enough for
/// modules whose twisted generators stay within the sector.
inline FpSystem fp_complete(const std::vector<FpPoly>& relations, int D, int max_b = -1,
                            const CompletionBudget& budget = {.max_rules = 4000,
                                                              .max_overlap_reductions = 50000000}) {
    FpSystem sys;
    sys.confluent_degree = D;

    std::map<std::pair<int, long>, FpPoly> agenda; // (degree, seq) -> poly
    long seq = 0;
    for (const FpPoly& r : relations) {
        int deg = r.empty() ? 0 : (int)r.rbegin()->first.size();
        if (deg > D) throw std::invalid_argument("fp_complete: relation degree exceeds D");
        agenda.emplace(std::make_pair(deg, seq++), r);
    }
    bool skipped_overlap = false;
    long reductions = 0;

    auto queue_overlaps = [&](const FpSystem::FpRule& r1, const FpSystem::FpRule& r2) {
        const Word& u = r1.lhs;
        const Word& v = r2.lhs;
        if (u.empty() || v.empty()) return;
        size_t maxt = std::min(u.size(), v.size()) - 1;
        for (size_t t = 1; t <= maxt; ++t) {
            if (u.compare(u.size() - t, t, v, 0, t) != 0) continue;
            int combined = (int)(u.size() + v.size() - t);
            if (combined > D) { skipped_overlap = true; continue; }
            if (max_b >= 0 && b_count(u) + b_count(v.substr(t)) > max_b) continue;
            Word right = v.substr(t);
            Word left = u.substr(0, u.size() - t);
            FpPoly sp = fp_framed(r1.rhs, {}, right);
            fp_add_scaled(sp, fp_framed(r2.rhs, left, {}), Fp{Fp::P - 1});
            agenda.emplace(std::make_pair(combined, seq++), std::move(sp));
        }
    };

    while (!agenda.empty()) {
        FpPoly item = std::move(agenda.begin()->second);
        agenda.erase(agenda.begin());
        if (++reductions > budget.max_overlap_reductions)
            throw std::runtime_error("fp_complete: completion budget exceeded (reductions)");
        FpPoly nf = sys.reduce(item);
        if (nf.empty()) continue;
        if ((int)nf.rbegin()->first.size() > D) { skipped_overlap = true; continue; }
        Word lhs = nf.rbegin()->first;
        if (lhs.empty()) throw std::runtime_error("fp_complete: unit lies in the ideal");
        Fp lc = nf.rbegin()->second;
        FpPoly rhs;
        fp_add_scaled(rhs, nf, Fp{Fp::P - 1} / lc);
        rhs.erase(lhs); // = lhs - nf/lc without the cancelled leading term
        if (max_b >= 0)
            for (const auto& [w, c] : rhs)
                if (b_count(w) > b_count(lhs))
                    throw std::runtime_error("fp_complete: sector closure violated");
        if ((int)sys.rules.size() >= budget.max_rules)
            throw std::runtime_error("fp_complete: completion budget exceeded (rules)");

        // retire rules whose lhs contains the new lhs; they return to the agenda
        std::vector<FpSystem::FpRule> kept;
        for (auto& r : sys.rules) {
            if (r.lhs.find(lhs) != Word::npos) {
                FpPoly back;
                back.emplace(r.lhs, Fp{1});
                fp_add_scaled(back, r.rhs, Fp{Fp::P - 1});
                agenda.emplace(std::make_pair((int)r.lhs.size(), seq++), std::move(back));
            } else {
                kept.push_back(std::move(r));
            }
        }
        sys.rules = std::move(kept);
        sys.rules.push_back({lhs, std::move(rhs)});
        sys.reindex();
        sys.clear_cache();
        const FpSystem::FpRule& nr = sys.rules.back();
        for (const auto& r : sys.rules) {
            queue_overlaps(r, nr);
            if (&r != &nr) queue_overlaps(nr, r);
        }
    }
    sys.fully_confluent = !skipped_overlap;
    sys.clear_cache();
    return sys;
}

/// splitting_fast_path_ok, verified against the sample-specialized rules.
inline bool fp_splitting_ok(const FpSystem& sys, int genus) {
    for (int fb = 1; fb <= genus; ++fb)
        for (int rb = 1; rb <= 2; ++rb)
            for (int cb = 1; cb <= 2; ++cb)
                for (int fa = 1; fa <= genus; ++fa)
                    for (int ra = 1; ra <= 2; ++ra)
                        for (int ca = 1; ca <= 2; ++ca) {
                            Word w = word_of({gen_b(fb, rb, cb), gen_a(fa, ra, ca)});
                            if (!sys.find_match(w)) return false;
                        }
    for (const auto& r : sys.rules) {
        if (is_pure(r.lhs, GenKind::A) || is_pure(r.lhs, GenKind::B)) continue;
        bool seen_b = false, split_form = true;
        for (unsigned char ch : r.lhs) {
            bool is_b = GenId::from_code(ch).kind == GenKind::B;
            if (is_b) seen_b = true;
            else if (seen_b) { split_form = false; break; }
        }
        if (split_form) return false;
    }
    return true;
}

inline std::vector<Word> normal_words_upto(const RewriteSystem& sys,
                                           const std::vector<uint8_t>& alphabet, int d) {
    std::vector<Word> out;
    for (int k = 0; k <= d; ++k) {
        auto layer = sys.normal_words(alphabet, k);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

inline bool is_standard_handlebody(const CyclicModuleSpec& m, int genus) {
    CyclicModuleSpec ref = handlebody_ideal(genus, m.side);
    if (m.ideal_generators.size() != ref.ideal_generators.size()) return false;
    for (size_t i = 0; i < ref.ideal_generators.size(); ++i) {
        bool found = false;
        for (const auto& g : m.ideal_generators)
            if (g == ref.ideal_generators[i]) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

/// Completed F_p systems, memoized by defining relations, sample and degree:
/// every manifold built on the same surface reuses them.
inline const FpSystem& fp_system_for(const Presentation& P, const Rat& at, int D, int max_b) {
    static std::map<std::tuple<size_t, std::string, int, int>, FpSystem> memo;
    size_t relhash = 0xcbf29ce484222325ull;
    for (const auto& r : P.relations) relhash = relhash * 1099511628211ull ^ r.hash();
    int mb = max_b < 0 ? std::numeric_limits<int>::max() : max_b;
    for (const auto& [k, s] : memo)
        if (std::get<0>(k) == relhash && std::get<1>(k) == Scalar::rat_str(at) &&
            std::get<2>(k) >= D && std::get<3>(k) >= mb)
            return s;
    auto key = std::make_tuple(relhash, Scalar::rat_str(at), D, mb);
    std::vector<FpPoly> rels;
    for (const auto& r : P.relations) rels.push_back(fp_specialize(r, at));
    return memo.emplace(key, fp_complete(rels, D, max_b)).first->second;
}

} // namespace detail

/// Dimension of the relative tensor product A / (right.gens · A + A · left.gens),
/// the skein module of the glued manifold. Per-degree dimensions are upper
/// bounds that can only drop as the degree budget grows; the report is marked
/// stabilized when they sit still for `window` consecutive degrees.
inline DimensionReport skein_dimension(const Presentation& P, const RewriteSystem& sys,
                                       const CyclicModuleSpec& left, const CyclicModuleSpec& right,
                                       int D, const std::vector<SamplePoint>& samples,
                                       int window = 3, int extension = -1) {
    if (left.side != Side::left || right.side != Side::right)
        throw std::invalid_argument("skein_dimension: need a left-sided and a right-sided ideal");
    if (samples.empty()) throw std::invalid_argument("skein_dimension: need at least one sample point");
    (void)sys; // generators arrive pre-reduced; all rewriting below is per sample
    auto t0 = std::chrono::steady_clock::now();
    DimensionReport rep;
    rep.max_degree = D;
    rep.safe_degree = D;

    bool std_left = detail::is_standard_handlebody(left, P.genus);

    // The column window extends past the readout degree: an ideal row
    // generated in high degree folds down into the readout range only if the
    // words it passes through are present as columns. Without the extension
    // the top deg(generator) levels of the report would be starved of rows.
    int gen_deg = 1;
    for (const auto& g : right.ideal_generators) gen_deg = std::max(gen_deg, g.degree());
    if (!std_left)
        for (const auto& g : left.ideal_generators) gen_deg = std::max(gen_deg, g.degree());
    if (extension < 0) extension = gen_deg + 1;
    int Dcols = D + extension;

    // The counit fast path multiplies twisted generators by pure-a words, so
    // the whole computation stays inside the sector of words with at most
    // max_b b-letters, and completion can skip all wider ambiguities.
    int max_b = -1;
    if (std_left) {
        max_b = 0;
        for (const auto& g : right.ideal_generators)
            for (const auto& [w, c] : g.terms()) max_b = std::max(max_b, detail::b_count(w));
    }

    std::vector<long> agg;            // elementwise min of the per-sample readouts
    std::vector<Word> best_basis;
    bool have_sample = false;

    for (const auto& sp : samples) {
        const Rat& at = sp.value;
        std::vector<long> dims;
        std::vector<Word> basis;
        try {
            const detail::FpSystem& fsys = detail::fp_system_for(P, at, Dcols, max_b);
            bool fast = std_left && detail::fp_splitting_ok(fsys, P.genus);

            // columns: basis words of the cyclic module at this sample
            std::vector<uint8_t> col_alpha;
            if (fast) {
                for (const auto& g : P.generators)
                    if (g.kind == GenKind::A) col_alpha.push_back(g.code());
            } else {
                col_alpha = P.alphabet();
            }
            std::vector<Word> cols = fsys.normal_words_upto(col_alpha, Dcols);
            std::sort(cols.begin(), cols.end(), DegLexLess{});
            std::map<Word, size_t> colidx;
            for (size_t i = 0; i < cols.size(); ++i) colidx[cols[i]] = i;
            size_t ncols_total = cols.size();
            std::vector<size_t> ncols_by_deg(Dcols + 1, 0); // N_d: columns of degree <= d
            for (const auto& w : cols)
                for (int d = (int)w.size(); d <= Dcols; ++d) ++ncols_by_deg[d];

            std::vector<std::map<size_t, detail::Fp>> rws;
            auto push = [&](const NCPoly& gen, bool gen_on_left, bool project) {
                int dg = gen.degree();
                if (dg > Dcols) return;
                // Build rows incrementally: the row of u = parent,letter is
                // the normal form of row(parent) times that letter (prefixes
                // and suffixes of normal words are normal, so every parent
                // has been visited). All reductions are then "normal word
                // times one letter", which the rewriter cache absorbs.
                std::map<Word, detail::FpPoly, DegLexLess> rowpoly;
                for (const auto& u : cols) {
                    if ((int)u.size() > Dcols - dg) break; // sorted by degree
                    detail::FpPoly acc;
                    if (u.empty()) {
                        acc = fsys.reduce(detail::fp_specialize(gen, at));
                    } else {
                        Word parent = gen_on_left ? u.substr(0, u.size() - 1) : u.substr(1);
                        unsigned char letter = gen_on_left ? u.back() : u.front();
                        for (const auto& [w, c] : rowpoly.at(parent)) {
                            Word ext = gen_on_left ? w + Word(1, letter) : Word(1, letter) + w;
                            detail::fp_add_scaled(acc, fsys.nf_word(ext), c);
                        }
                    }
                    if ((int)u.size() < Dcols - dg) rowpoly[u] = acc;
                    std::map<size_t, detail::Fp> row;
                    for (const auto& [w2, c2] : acc) {
                        Word key = w2;
                        if (project && !detail::counit_project_word(w2, key)) continue;
                        auto [jt, ins] = row.try_emplace(colidx.at(key), detail::Fp{});
                        jt->second += c2;
                        if (jt->second.is_zero()) row.erase(jt);
                        (void)ins;
                    }
                    if (!row.empty()) rws.push_back(std::move(row));
                }
            };
            if (fast) {
                // the left ideal is absorbed by the projection; only the
                // right twisted ideal contributes rows
                for (const auto& g : right.ideal_generators) push(g, true, true);
            } else {
                for (const auto& g : right.ideal_generators) push(g, true, false);
                for (const auto& g : left.ideal_generators) push(g, false, false);
            }
            size_t nrows = rws.size();

            // An ideal element lies in the degree-d filtration layer iff it
            // eliminates against the columns above degree d:
            //   dim (I \cap A_{<=d}) = rank(M) - rank(M restricted to cols > d).
            // One right-to-left column elimination delivers every block rank
            // at once: the level-d dimension is the non-pivot column count
            // below N_d.
            std::vector<bool> pivot(ncols_total, false);
            for (;;) {
                size_t br = rws.size(), bc = 0, bn = 0;
                for (size_t i = 0; i < rws.size(); ++i) {
                    if (rws[i].empty()) continue;
                    size_t lead = rws[i].rbegin()->first;
                    if (br == rws.size() || lead > bc ||
                        (lead == bc && rws[i].size() < bn)) {
                        br = i;
                        bc = lead;
                        bn = rws[i].size();
                    }
                }
                if (br == rws.size()) break;
                pivot[bc] = true;
                detail::Fp piv = rws[br][bc];
                for (auto& [c, v] : rws[br]) v = v / piv;
                std::map<size_t, detail::Fp> prow = std::move(rws[br]);
                rws[br].clear();
                for (auto& row : rws) {
                    auto it = row.find(bc);
                    if (it == row.end()) continue;
                    detail::Fp f = it->second;
                    row.erase(it);
                    for (const auto& [c, v] : prow) {
                        if (c == bc) continue;
                        auto [jt, ins] = row.try_emplace(c, detail::Fp{});
                        jt->second -= f * v;
                        if (jt->second.is_zero()) row.erase(jt);
                        (void)ins;
                    }
                }
            }
            for (int d = 0; d <= D; ++d) {
                long dim = 0;
                for (size_t c = 0; c < ncols_by_deg[d]; ++c)
                    if (!pivot[c]) ++dim;
                dims.push_back(dim);
            }
            for (size_t c = 0; c < ncols_by_deg[D]; ++c)
                if (!pivot[c]) basis.push_back(cols[c]);

            if (!have_sample || dims.back() < agg.back()) {
                best_basis = std::move(basis);
                rep.rows = nrows;
                rep.cols = ncols_total;
                rep.strategy = fast ? "counit-projection" : "generic";
            }
            if (!have_sample) {
                agg = std::move(dims);
                have_sample = true;
            } else {
                for (size_t i = 0; i < agg.size(); ++i) agg[i] = std::min(agg[i], dims[i]);
            }
        } catch (const PoleError&) {
        }
    }
    if (!have_sample) throw std::runtime_error("skein_dimension: every sample point hit a pole");
    rep.per_degree = std::move(agg);
    rep.basis = std::move(best_basis);

    // stabilization: the tail of the readout sequence constant over the window
    int n = (int)rep.per_degree.size();
    if (n >= window) {
        bool flat_tail = true;
        for (int i = n - window; i < n; ++i)
            if (rep.per_degree[i] != rep.per_degree[n - 1]) flat_tail = false;
        if (flat_tail) {
            rep.stabilized = true;
            int first = n - 1;
            while (first > 0 && rep.per_degree[first - 1] == rep.per_degree[n - 1]) --first;
            rep.stabilization_degree = first;
        }
    }
    rep.dimension = rep.per_degree.back();

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Product rule for connected sums; inputs must be genuine (stabilized,
/// positive) dimensions.
inline long connected_sum_dim(long d1, long d2) {
    if (d1 <= 0 || d2 <= 0)
        throw std::invalid_argument(
            "connected_sum_dim: nonpositive factor dimension signals an upstream failure");
    return d1 * d2;
}

inline long connected_sum_dim(const DimensionReport& r1, const DimensionReport& r2) {
    if (!r1.stabilized || !r2.stabilized)
        throw std::invalid_argument(
            "connected_sum_dim: refusing non-stabilized factor dimensions");
    return connected_sum_dim(r1.dimension, r2.dimension);
}

} // namespace skein
