#include <catch2/catch_amalgamated.hpp>

#include <skein/rewrite.hpp>

#include <cstdio>
#include <random>

using namespace skein;

namespace {

NCPoly G(const GenId& g) { return NCPoly::gen(g); }

// Two abstract letters for small examples: x = a1_11, y = a1_12.
const GenId X = gen_a(1, 1, 1);
const GenId Y = gen_a(1, 1, 2);

} // namespace

TEST_CASE("monomial order") {
    Word e;
    Word x = word_of({X}), y = word_of({Y});
    Word xy = word_of({X, Y}), yx = word_of({Y, X});
    CHECK(monomial_compare(e, x) == std::strong_ordering::less);
    // a1_11 a1_12 < a1_12 a1_11 (lex at position 1 after equal degree)
    CHECK(monomial_compare(xy, yx) == std::strong_ordering::less);
    // degree dominates: b1_11 < a1_11 a1_11
    CHECK(monomial_compare(word_of({gen_b(1, 1, 1)}), word_of({X, X})) ==
          std::strong_ordering::less);
    CHECK(monomial_compare(xy, xy) == std::strong_ordering::equal);
}

TEST_CASE("word print/parse") {
    Word w = word_of({gen_a(1, 1, 2), gen_b(2, 2, 1)});
    CHECK(word_str(w) == "a1_12.b2_21");
    CHECK(parse_word(word_str(w)) == w);
    CHECK(parse_word("1").empty());
    CHECK_THROWS(parse_word("c1_11"));
}

TEST_CASE("commutative completion: normal monomial counts d+1") {
    // yx - xy
    NCPoly rel = G(Y) * G(X) - G(X) * G(Y);
    RewriteSystem sys = complete({rel}, 8);
    CHECK(sys.fully_confluent);
    auto counts = sys.normal_word_counts({X.code(), Y.code()}, 6);
    for (int d = 0; d <= 6; ++d) CHECK(counts[d] == static_cast<size_t>(d + 1));
}

TEST_CASE("quantum plane is flat") {
    NCPoly rel = G(Y) * G(X) - Scalar::q_pow(1) * (G(X) * G(Y));
    RewriteSystem sys = complete({rel}, 8);
    CHECK(sys.fully_confluent);
    auto counts = sys.normal_word_counts({X.code(), Y.code()}, 6);
    for (int d = 0; d <= 6; ++d) CHECK(counts[d] == static_cast<size_t>(d + 1));
}

TEST_CASE("reduce examples") {
    // relations a2_2 a1_1 = a1_1 a2_2 and a2_2 a1_2 = q^2 a1_2 a2_2,
    // stated on the matrix entries of one handle's a-matrix
    GenId a11 = gen_a(1, 1, 1), a12 = gen_a(1, 1, 2), a22 = gen_a(1, 2, 2);
    NCPoly r1 = G(a22) * G(a11) - G(a11) * G(a22);
    NCPoly r2 = G(a22) * G(a12) - Scalar::q_pow(1) * (G(a12) * G(a22));
    RewriteSystem sys = complete({r1, r2}, 8);
    CHECK(sys.reduce(G(a22) * G(a11)) == G(a11) * G(a22));
    CHECK(sys.reduce(G(a22) * G(a12)) == Scalar::q_pow(1) * (G(a12) * G(a22)));
    CHECK(sys.reduce(NCPoly(1)) == NCPoly(1));
    // ideal membership soundness
    CHECK(sys.reduce(r1).is_zero());
    CHECK(sys.reduce(r2).is_zero());
}

TEST_CASE("spoly overlaps") {
    GenId x = X, y = Y;
    Rule rxy{word_of({x, y}), NCPoly(1)};
    Rule ryx{word_of({y, x}), NCPoly(1)};
    // xy and yx overlap on xyx and yxy
    CHECK(spoly_overlaps(rxy, ryx).size() == 2);
    // disjoint leading words
    Rule rab{word_of({gen_a(1, 2, 1), gen_a(1, 2, 2)}), NCPoly(1)};
    CHECK(spoly_overlaps(rxy, rab).empty());
    // self-overlap of xx on xxx
    Rule rxx{word_of({x, x}), NCPoly(1)};
    CHECK(spoly_overlaps(rxx, rxx).size() == 1);
}

TEST_CASE("Church-Rosser on random polynomials") {
    // Use the quantum plane plus an inhomogeneous relation: y x = q x y + 1
    NCPoly rel = G(Y) * G(X) - Scalar::q_pow(1) * (G(X) * G(Y)) - NCPoly(1);
    RewriteSystem sys = complete({rel}, 10);
    CHECK(sys.fully_confluent);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> len(0, 5), pick(0, 1), coef(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        NCPoly p;
        for (int t = 0; t < 3; ++t) {
            Word w;
            int l = len(rng);
            for (int i = 0; i < l; ++i)
                w.push_back(static_cast<char>(pick(rng) ? Y.code() : X.code()));
            p.add_term(w, Scalar(coef(rng)));
        }
        NCPoly nf = sys.reduce(p);
        // alternative strategy: reduce word by word in reverse order
        NCPoly nf2;
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            NCPoly t = sys.reduce(NCPoly::monomial(it->first));
            t.scale(it->second);
            nf2 += t;
        }
        CHECK(nf == nf2);
        // idempotent and degree-monotone
        CHECK(sys.reduce(nf) == nf);
        CHECK(nf.degree() <= p.degree());
    }
}

TEST_CASE("budget produces partial-result error") {
    // A presentation known to generate many rules: free product mess with a
    // tiny rule cap.
    GenId a = X, b = Y, c = gen_a(1, 2, 1);
    NCPoly r1 = G(a) * G(b) - G(b) * G(c) - G(c);
    NCPoly r2 = G(b) * G(a) - G(c) * G(a) - G(a);
    NCPoly r3 = G(c) * G(c) - G(a) * G(b) - NCPoly(1);
    CompletionBudget tiny;
    tiny.max_rules = 3;
    try {
        complete({r1, r2, r3}, 12, tiny);
        // If it completed within 3 rules that's fine too — but then raise the
        // bar so the test still exercises the error path.
        tiny.max_rules = 1;
        complete({r1, r2, r3}, 12, tiny);
        FAIL("expected CompletionError");
    } catch (const CompletionError& e) {
        CHECK(!e.partial.rules.empty());
    }
}

TEST_CASE("cache round trip") {
    NCPoly rel = G(Y) * G(X) - Scalar::q_pow(1) * (G(X) * G(Y)) - NCPoly(1);
    RewriteSystem sys = complete({rel}, 10);
    size_t phash = rel.hash();
    std::string path = "/tmp/skein_rw_cache_test.txt";
    save_rewrite_system(sys, phash, path);
    auto back = load_rewrite_system(phash, 10, path);
    REQUIRE(back.has_value());
    CHECK(back->fully_confluent == sys.fully_confluent);
    REQUIRE(back->rules.size() == sys.rules.size());
    for (size_t i = 0; i < sys.rules.size(); ++i) {
        CHECK(back->rules[i].lhs == sys.rules[i].lhs);
        CHECK(back->rules[i].rhs == sys.rules[i].rhs);
    }
    // hash mismatch → miss
    CHECK(!load_rewrite_system(phash + 1, 10, path).has_value());
    CHECK(!load_rewrite_system(phash, 11, path).has_value());
    std::remove(path.c_str());
}
