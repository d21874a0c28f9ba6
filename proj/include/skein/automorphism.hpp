#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <skein/linsolve.hpp>
#include <skein/presentation.hpp>

namespace skein {

/// An algebra endomorphism given by generator images, applied to words
/// multiplicatively. `verified_to_degree` records the completion degree of
/// the rewriting system against which relation preservation was checked.
struct Automorphism {
    std::map<unsigned char, NCPoly> images; // keyed by GenId::code()
    int verified_to_degree = 0;

    NCPoly apply(const NCPoly& p) const {
        NCPoly out;
        for (const auto& [w, c] : p.terms()) {
            NCPoly t(c);
            for (unsigned char ch : w) t = t * images.at(ch);
            out = out + t;
        }
        return out;
    }
};

inline Automorphism identity_automorphism(const Presentation& p) {
    Automorphism phi;
    for (const auto& g : p.generators) phi.images[g.code()] = NCPoly::gen(g);
    phi.verified_to_degree = 1 << 20;
    return phi;
}

/// True iff every defining relation maps into the ideal (reduction-to-zero
/// certificate). On success stamps verified_to_degree.
inline bool verify_automorphism(const Presentation& p, Automorphism& phi, const RewriteSystem& sys) {
    for (const auto& r : p.relations)
        if (!sys.reduce(phi.apply(r)).is_zero()) return false;
    phi.verified_to_degree = sys.confluent_degree;
    return true;
}

/// (f o g)(x) = f(g(x)); images stored in normal form.
inline Automorphism compose(const Automorphism& f, const Automorphism& g, const RewriteSystem& sys) {
    Automorphism h;
    for (const auto& [code, img] : g.images) h.images[code] = sys.reduce(f.apply(img));
    h.verified_to_degree = std::min(f.verified_to_degree, g.verified_to_degree);
    return h;
}

inline bool is_identity(const Automorphism& phi) {
    for (const auto& [code, img] : phi.images)
        if (!(img == NCPoly::gen(GenId::from_code(code)))) return false;
    return true;
}

class TwistAnsatzError : public std::runtime_error {
public:
    explicit TwistAnsatzError(const std::string& msg, std::vector<NCPoly> residuals = {})
        : std::runtime_error(msg), residuals(std::move(residuals)) {}
    std::vector<NCPoly> residuals;
};

namespace detail {

/// Kernel of an affine map c |-> residual polynomials. `residual_at` must be
/// affine in the coefficient vector. When homogenize is set, an extra final
/// coordinate multiplies the constant part (solutions of the inhomogeneous
/// system are vectors with that coordinate nonzero, rescaled to 1).
inline std::vector<std::vector<Scalar>> affine_kernel(
    size_t nunknowns,
    const std::function<std::vector<NCPoly>(const std::vector<Scalar>&)>& residual_at,
    bool homogenize) {
    std::vector<Scalar> zero(nunknowns);
    std::vector<NCPoly> r0 = residual_at(zero);
    std::map<std::pair<size_t, Word>, size_t> rowid;
    auto row_of = [&](size_t ri, const Word& w) {
        return rowid.emplace(std::make_pair(ri, w), rowid.size()).first->second;
    };
    std::map<std::pair<size_t, size_t>, Scalar> trip;
    auto put = [&](size_t r, size_t c, const Scalar& v) {
        auto [it, fresh] = trip.emplace(std::make_pair(r, c), v);
        if (!fresh) it->second = it->second + v;
    };
    size_t ncols = nunknowns + (homogenize ? 1 : 0);
    if (homogenize)
        for (size_t ri = 0; ri < r0.size(); ++ri)
            for (const auto& [w, c] : r0[ri].terms()) put(row_of(ri, w), nunknowns, c);
    for (size_t u = 0; u < nunknowns; ++u) {
        std::vector<Scalar> e(nunknowns);
        e[u] = Scalar(1);
        std::vector<NCPoly> r = residual_at(e);
        for (size_t ri = 0; ri < r.size(); ++ri) {
            NCPoly d = r[ri] - r0[ri];
            for (const auto& [w, c] : d.terms()) put(row_of(ri, w), u, c);
        }
    }
    SparseMatrix m(rowid.empty() ? 1 : rowid.size(), ncols);
    for (const auto& [rc, v] : trip) m.add(rc.first, rc.second, v);
    return kernel_basis(m);
}

/// Square root of a monomial scalar c * s^k (requires k even, c a square of
/// a positive rational); returns the positive root.
inline std::optional<Scalar> monomial_sqrt(const Scalar& x) {
    if (!x.is_monomial()) return std::nullopt;
    auto [e, c] = *x.num().terms().begin();
    if (e % 2 != 0 || c <= 0) return std::nullopt;
    mpz_class n = c.get_num(), d = c.get_den();
    mpz_class rn = sqrt(n), rd = sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return Scalar(Rat(rn, rd)) * Scalar::s_pow(e / 2);
}

inline std::array<std::array<NCPoly, 2>, 2> gen_2x2(int factor, GenKind kind) {
    std::array<std::array<NCPoly, 2>, 2> m;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            m[r][c] = NCPoly::gen(GenId{factor, kind, r + 1, c + 1});
    return m;
}

inline std::array<std::array<NCPoly, 2>, 2> mat_mul(const std::array<std::array<NCPoly, 2>, 2>& x,
                                                    const std::array<std::array<NCPoly, 2>, 2>& y) {
    std::array<std::array<NCPoly, 2>, 2> z;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) z[r][c] = x[r][0] * y[0][c] + x[r][1] * y[1][c];
    return z;
}

} // namespace detail

/// Two-sided inverse of the generator matrix (unit quantum determinant),
/// found by solving M*X = X*M = 1 over an ansatz linear in the generators.
inline std::array<std::array<NCPoly, 2>, 2> matrix_inverse(const RewriteSystem& sys, int factor,
                                                           GenKind kind) {
    auto M = detail::gen_2x2(factor, kind);
    std::vector<NCPoly> basis = {NCPoly(1), M[0][0], M[0][1], M[1][0], M[1][1]};
    const size_t nu = 4 * basis.size();
    auto assemble = [&](const std::vector<Scalar>& c) {
        std::array<std::array<NCPoly, 2>, 2> x;
        for (size_t e = 0; e < 4; ++e) {
            NCPoly acc;
            for (size_t k = 0; k < basis.size(); ++k) acc = acc + c[e * basis.size() + k] * basis[k];
            x[e / 2][e % 2] = acc;
        }
        return x;
    };
    auto residual_at = [&](const std::vector<Scalar>& c) {
        auto x = assemble(c);
        auto mx = detail::mat_mul(M, x), xm = detail::mat_mul(x, M);
        std::vector<NCPoly> res;
        for (int r = 0; r < 2; ++r)
            for (int col = 0; col < 2; ++col) {
                NCPoly id = (r == col) ? NCPoly(1) : NCPoly();
                res.push_back(sys.reduce(mx[r][col] - id));
                res.push_back(sys.reduce(xm[r][col] - id));
            }
        return res;
    };
    auto kernel = detail::affine_kernel(nu, residual_at, true);
    std::vector<std::vector<Scalar>> hits;
    for (auto& v : kernel)
        if (!v[nu].is_zero()) hits.push_back(v);
    if (hits.size() != 1)
        throw TwistAnsatzError("matrix_inverse: expected a unique solution, kernel gave " +
                               std::to_string(hits.size()));
    Scalar t = hits[0][nu].inverse();
    std::vector<Scalar> c(nu);
    for (size_t i = 0; i < nu; ++i) c[i] = hits[0][i] * t;
    return assemble(c);
}

namespace detail {

/// Shared core of the two genus-1 Dehn-twist derivations. One of the two
/// generator matrices keeps its entries, the other is replaced by an unknown
/// combination of the words (moving)_rk * (a-matrix column words); the mixed
/// b-a relations are linear in the unknowns and pin the shape, the quantum
/// determinant pins the scale, the classical limit pins the sign.
inline Automorphism derive_genus1_twist(const Presentation& P, const RewriteSystem& sys,
                                        GenKind moving) {
    auto A = gen_2x2(1, GenKind::A);
    auto B = gen_2x2(1, GenKind::B);
    // candidate words for the image of entry (r,c): b_{r1}a_{1c}, b_{r2}a_{2c}
    auto candidate = [&](int r, int c, int k) { return B[r][k] * A[k][c]; };
    auto assemble = [&](const std::vector<Scalar>& coef) {
        Automorphism phi = identity_automorphism(P);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                NCPoly img = coef[(r * 2 + c) * 2] * candidate(r, c, 0) +
                             coef[(r * 2 + c) * 2 + 1] * candidate(r, c, 1);
                phi.images[GenId{1, moving, r + 1, c + 1}.code()] = img;
            }
        return phi;
    };
    // the mixed relations contain each moving-matrix entry exactly once per
    // term, so the substituted residuals are linear (and homogeneous) in coef
    std::vector<const NCPoly*> linear_rels;
    size_t det_idx = P.relations.size();
    for (size_t i = 0; i < P.relations.size(); ++i) {
        if (P.tags[i] == "BA") linear_rels.push_back(&P.relations[i]);
        if (P.tags[i] == "det") {
            // the determinant relation of the moving matrix
            GenId probe{1, moving, 1, 1};
            if (P.relations[i].coeff(word_of({probe, GenId{1, moving, 2, 2}})) == Scalar(1))
                det_idx = i;
        }
    }
    if (linear_rels.empty() || det_idx == P.relations.size())
        throw TwistAnsatzError("derive_genus1_twist: presentation lacks expected relations");
    auto residual_at = [&](const std::vector<Scalar>& coef) {
        Automorphism phi = assemble(coef);
        std::vector<NCPoly> res;
        for (const NCPoly* r : linear_rels) res.push_back(sys.reduce(phi.apply(*r)));
        return res;
    };
    auto kernel = detail::affine_kernel(8, residual_at, false);
    if (kernel.size() != 1)
        throw TwistAnsatzError("derive_genus1_twist: mixed relations left a solution space of dimension " +
                               std::to_string(kernel.size()));
    // scale: determinant of the image must again be 1
    Automorphism phi = assemble(kernel[0]);
    NCPoly det_res = sys.reduce(phi.apply(P.relations[det_idx]));
    NCPoly d = det_res + NCPoly(1);
    if (d.degree() != 0 || d.term_count() != 1)
        throw TwistAnsatzError("derive_genus1_twist: determinant residual is not scalar",
                               {det_res});
    auto lam = detail::monomial_sqrt(d.coeff(Word{}).inverse());
    if (!lam)
        throw TwistAnsatzError("derive_genus1_twist: determinant scale has no square root",
                               {det_res});
    std::vector<Scalar> coef(8);
    for (int i = 0; i < 8; ++i) coef[i] = *lam * kernel[0][i];
    // sign: classical limit must be the plain matrix product, coefficient +1
    if (coef[0].classical_limit() == Rat(-1))
        for (auto& c : coef) c = Scalar(-1) * c;
    phi = assemble(coef);
    if (!verify_automorphism(P, phi, sys)) {
        std::vector<NCPoly> bad;
        for (const auto& r : P.relations) {
            NCPoly nf = sys.reduce(phi.apply(r));
            if (!nf.is_zero()) bad.push_back(nf);
        }
        throw TwistAnsatzError("derive_genus1_twist: derived map fails verification", bad);
    }
    return phi;
}

} // namespace detail

/// The derived genus-1 mapping-class generators. T twists along the b-core
/// (classically (X, Y) -> (X, YX)), Tp along the a-core ((X, Y) -> (YX, Y)),
/// and S = Tp o Tinv o Tp is the quarter turn swapping the cores.
struct TwistGenerators {
    Automorphism S, T, Tp;
    Automorphism S_inv, T_inv, Tp_inv;
};

inline TwistGenerators twist_generators_genus1(const Presentation& P, const RewriteSystem& sys) {
    if (P.genus != 1) throw std::invalid_argument("twist_generators_genus1: genus-1 presentation required");
    TwistGenerators tg;
    tg.T = detail::derive_genus1_twist(P, sys, GenKind::B);
    tg.Tp = detail::derive_genus1_twist(P, sys, GenKind::A);

    // inverses: the image matrices get the derived quantum inverse spliced in,
    // then the same determinant/classical normalization applies. T sends
    // B -> lambda B A, so T^{-1} sends B -> lambda^{-1} B A^{-1}.
    auto Ainv = matrix_inverse(sys, 1, GenKind::A);
    auto Binv = matrix_inverse(sys, 1, GenKind::B);
    auto A = detail::gen_2x2(1, GenKind::A);
    auto B = detail::gen_2x2(1, GenKind::B);
    Scalar li = Scalar::s_pow(-3);

    tg.T_inv = identity_automorphism(P);
    auto BAinv = detail::mat_mul(B, Ainv);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            tg.T_inv.images[gen_b(1, r + 1, c + 1).code()] = li * BAinv[r][c];

    tg.Tp_inv = identity_automorphism(P);
    auto BinvA = detail::mat_mul(Binv, A);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            tg.Tp_inv.images[gen_a(1, r + 1, c + 1).code()] = li * BinvA[r][c];

    if (!verify_automorphism(P, tg.T_inv, sys) || !verify_automorphism(P, tg.Tp_inv, sys))
        throw TwistAnsatzError("twist_generators_genus1: inverse twists fail verification");
    if (!is_identity(compose(tg.T, tg.T_inv, sys)) || !is_identity(compose(tg.T_inv, tg.T, sys)) ||
        !is_identity(compose(tg.Tp, tg.Tp_inv, sys)) || !is_identity(compose(tg.Tp_inv, tg.Tp, sys)))
        throw TwistAnsatzError("twist_generators_genus1: inverses do not invert");

    tg.S = compose(tg.Tp, compose(tg.T_inv, tg.Tp, sys), sys);
    tg.S_inv = compose(tg.Tp_inv, compose(tg.T, tg.Tp_inv, sys), sys);
    if (!verify_automorphism(P, tg.S, sys) || !verify_automorphism(P, tg.S_inv, sys))
        throw TwistAnsatzError("twist_generators_genus1: composed quarter turn fails verification");
    return tg;
}

} // namespace skein
