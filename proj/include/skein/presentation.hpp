#pragma once

// Defining presentations: the double of one handle (8 generators, three
// matrix equations plus two quantum determinants) and its braided tensor
// powers for higher genus, together with the classical q -> 1 presentation
// and the Hilbert-series flatness certificate.

#include "rewrite.hpp"
#include "rmatrix.hpp"

#include <string>
#include <vector>

namespace skein {

struct Presentation {
    int genus = 1;
    std::vector<GenId> generators;
    std::vector<NCPoly> relations;
    std::vector<std::string> tags; // provenance: AA | BB | BA | det | cross(k,l)

    std::vector<uint8_t> alphabet() const {
        std::vector<uint8_t> a;
        for (const auto& g : generators) a.push_back(g.code());
        return a;
    }

    std::string str() const {
        std::string out = "genus " + std::to_string(genus) + "\n";
        for (const auto& g : generators) out += g.str() + " ";
        out += "\n";
        for (size_t i = 0; i < relations.size(); ++i)
            out += tags[i] + ": " + relations[i].str() + "\n";
        return out;
    }
    size_t hash() const { return std::hash<std::string>{}(str()); }
};

namespace detail {

inline Mat2 gen_matrix(int factor, GenKind kind) {
    Mat2 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m.e[i][j] = NCPoly::gen({factor, kind, i + 1, j + 1});
    return m;
}

inline void push_matrix_relation(Presentation& p, const Mat4& residual, const std::string& tag) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!residual.e[i][j].is_zero()) {
                p.relations.push_back(residual.e[i][j]);
                p.tags.push_back(tag);
            }
}

inline NCPoly quantum_det(int factor, GenKind kind) {
    auto e = [&](int r, int c) { return NCPoly::gen({factor, kind, r, c}); };
    return e(1, 1) * e(2, 2) - Scalar::q_pow(2) * (e(1, 2) * e(2, 1)) - NCPoly(1);
}

} // namespace detail

/// Exchange-relation tails for the four cross-factor generator-matrix pairs
/// (A,A), (A,B), (B,A), (B,B): false = R12 tail, true = R21^{-1} tail (the
/// within-factor BA pattern).  The default assignment is the unique one that
/// passes the degree-6 flatness certificate; the certificate is re-checked
/// in the test suite.
struct CrossVariant {
    std::array<bool, 4> use_inverse_tail;
};

inline CrossVariant default_cross_variant() {
    // pairs in order (A,A), (A,B), (B,A), (B,B): the (B,A) pair takes the
    // R21^{-1} tail, mirroring the within-factor BA equation; the other
    // three take the R12 tail.
    return CrossVariant{{false, false, true, false}};
}

/// Exchange relations between the generator matrices of factors k < l:
/// R21 X1 R12 Y2 = Y2 R21 X1 · tail with X from factor k, Y from factor l.
inline std::vector<NCPoly> braided_cross_relations(int k, int l,
                                                   const CrossVariant& variant = default_cross_variant(),
                                                   std::vector<std::string>* tags = nullptr) {
    if (!(k < l)) throw std::invalid_argument("braided_cross_relations: need k < l");
    RMatrix R = rmatrix();
    Mat4 r12 = R.as_mat4();
    Mat4 r21 = R.flipped().as_mat4();
    Mat4 r21inv = R.flipped().inverse().as_mat4();
    std::vector<NCPoly> out;
    const std::array<std::pair<GenKind, GenKind>, 4> pairs = {{
        {GenKind::A, GenKind::A},
        {GenKind::A, GenKind::B},
        {GenKind::B, GenKind::A},
        {GenKind::B, GenKind::B},
    }};
    for (size_t pi = 0; pi < pairs.size(); ++pi) {
        Mat4 X1 = detail::gen_matrix(k, pairs[pi].first).leg1();
        Mat4 Y2 = detail::gen_matrix(l, pairs[pi].second).leg2();
        const Mat4& tail = variant.use_inverse_tail[pi] ? r21inv : r12;
        Mat4 res = r21 * X1 * r12 * Y2 - Y2 * r21 * X1 * tail;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!res.e[i][j].is_zero()) {
                    out.push_back(res.e[i][j]);
                    if (tags)
                        tags->push_back("cross(" + std::to_string(k) + "," + std::to_string(l) + ")");
                }
    }
    return out;
}

/// The internal skein algebra of the genus-g surface with one boundary disk:
/// g copies of the double, braided together.
inline Presentation dq_presentation(int g, const CrossVariant& variant = default_cross_variant()) {
    if (g < 1) throw std::invalid_argument("dq_presentation: genus >= 1 required");
    Presentation p;
    p.genus = g;
    for (int f = 1; f <= g; ++f)
        for (GenKind kind : {GenKind::A, GenKind::B})
            for (int r = 1; r <= 2; ++r)
                for (int c = 1; c <= 2; ++c) p.generators.push_back({f, kind, r, c});

    RMatrix R = rmatrix();
    Mat4 r12 = R.as_mat4();
    Mat4 r21 = R.flipped().as_mat4();
    Mat4 r21inv = R.flipped().inverse().as_mat4();

    for (int f = 1; f <= g; ++f) {
        Mat4 A1 = detail::gen_matrix(f, GenKind::A).leg1();
        Mat4 A2 = detail::gen_matrix(f, GenKind::A).leg2();
        Mat4 B1 = detail::gen_matrix(f, GenKind::B).leg1();
        Mat4 B2 = detail::gen_matrix(f, GenKind::B).leg2();
        // R21 A1 R12 A2 = A2 R21 A1 R12
        detail::push_matrix_relation(p, r21 * A1 * r12 * A2 - A2 * r21 * A1 * r12, "AA");
        // R21 B1 R B2 = B2 R21 B1 R
        detail::push_matrix_relation(p, r21 * B1 * r12 * B2 - B2 * r21 * B1 * r12, "BB");
        // R21 B1 R A2 = A2 R21 B1 R21^{-1}
        detail::push_matrix_relation(p, r21 * B1 * r12 * A2 - A2 * r21 * B1 * r21inv, "BA");
        p.relations.push_back(detail::quantum_det(f, GenKind::A));
        p.tags.push_back("det");
        p.relations.push_back(detail::quantum_det(f, GenKind::B));
        p.tags.push_back("det");
    }
    for (int k = 1; k <= g; ++k)
        for (int l = k + 1; l <= g; ++l) {
            auto rels = braided_cross_relations(k, l, variant, &p.tags);
            p.relations.insert(p.relations.end(), rels.begin(), rels.end());
        }
    return p;
}

/// Coefficient-wise q -> 1 limit; throws PoleError if any coefficient has a
/// pole at s = 1.
inline Presentation classical_presentation(const Presentation& p) {
    Presentation c;
    c.genus = p.genus;
    c.generators = p.generators;
    c.tags = p.tags;
    for (const NCPoly& r : p.relations) {
        NCPoly cr;
        for (const auto& [w, coef] : r.terms()) cr.add_term(w, Scalar(coef.classical_limit()));
        c.relations.push_back(std::move(cr));
    }
    return c;
}

struct FlatnessReport {
    bool flat = false;
    int checked_degree = 0;
    std::vector<size_t> quantum_counts;
    std::vector<size_t> classical_counts;
};

/// PBW flatness certificate: graded normal-monomial counts of the quantum
/// presentation agree with the classical ones through the certified degree.
inline FlatnessReport hilbert_flatness(const Presentation& p, int D,
                                       const CompletionBudget& budget = {}) {
    FlatnessReport rep;
    RewriteSystem q = complete(p.relations, D, budget);
    RewriteSystem c = complete(classical_presentation(p).relations, D, budget);
    // Graded count certificate: every overlap of degree <= D was resolved and
    // rewriting never raises degree, so normal-word counts are exact through
    // the completion degree even when the full basis is infinite.
    int safe = std::min({D, q.confluent_degree, c.confluent_degree});
    rep.checked_degree = safe;
    auto alpha = p.alphabet();
    rep.quantum_counts = q.normal_word_counts(alpha, safe);
    rep.classical_counts = c.normal_word_counts(alpha, safe);
    rep.flat = rep.quantum_counts == rep.classical_counts;
    return rep;
}

} // namespace skein
