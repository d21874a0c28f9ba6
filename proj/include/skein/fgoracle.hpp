#pragma once

#include <skein/fp.hpp>
#include <skein/resolver.hpp>

#include <chrono>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace skein {

/// A primitive unoriented curve on the boundary torus of a solid torus:
/// p longitudes, q meridians, normalized so that (p, q) ~ (-p, -q) with
/// p > 0, or p = 0 and q = 1.
struct TorusCurve {
    long p = 1, q = 0;

    TorusCurve() = default;
    TorusCurve(long p_, long q_) : p(p_), q(q_) {
        if (p == 0 && q == 0) throw std::invalid_argument("TorusCurve: (0, 0) is not a curve");
        if (p < 0 || (p == 0 && q < 0)) {
            p = -p;
            q = -q;
        }
        if (std::gcd(std::abs(p), std::abs(q)) != 1)
            throw std::invalid_argument("TorusCurve: slope must be primitive");
    }
    bool operator==(const TorusCurve& o) const { return p == o.p && q == o.q; }
    bool operator<(const TorusCurve& o) const { return std::tie(p, q) < std::tie(o.p, o.q); }
};

/// Diagram of the (p, q)-curve pushed slightly into the solid torus, drawn
/// around k parallel core strands. `attempt` perturbs the construction to
/// escape accidental degeneracies.
inline AnnularDiagram curve_diagram(const TorusCurve& c, int k, int attempt = 0) {
    if (k < 0) throw std::invalid_argument("curve_diagram: negative strand count");
    AnnularDiagram d;
    for (int j = 0; j < k; ++j) {
        // strand levels spread over (3, 5), never symmetric about 4
        Rat lvl(2 * (j + 1), k + 1), off(j, 2 * k + 7);
        lvl.canonicalize();
        off.canonicalize();
        d.comps.push_back(core_strand(Rat(3) + lvl + Rat(1, 257 + 5 * j), Rat(1, 3) + off));
    }
    Rat vc = Rat(4) + Rat(1, 89 + 7 * attempt);
    Rat rho = Rat(9, 5) + Rat(1, 2) * Rat(1, 11 + 3 * attempt); // covers (..3, 5..)
    Rat phase = Rat(1, 8) + Rat(1, 67 + 2 * attempt);
    if (c.p == 0)
        d.comps.push_back(meridian_loop(Rat(1, 2) + Rat(1, 31 + attempt), vc, rho, Rat(1, 10)));
    else
        d.comps.push_back(torus_curve(c.p, c.q, vc, rho, phase));
    return d;
}

/// Framing defect of the standard (p, q)-curve diagram: writhe of the
/// projection minus the surface-framing number (half the signed crossing
/// count against a parallel copy on the same tube). The surface framing is
/// the unique choice preserved by every mapping class of the torus, so every
/// curve action is normalized to it.
inline long framing_defect(const TorusCurve& c) {
    if (c.p == 0 || c.q == 0) return 0; // meridian / longitude: embedded flat circles
    static std::map<std::pair<long, long>, long> memo;
    auto key = std::make_pair(c.p, c.q);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    for (int attempt = 0;; ++attempt) {
        try {
            Rat vc = Rat(4) + Rat(1, 89 + 7 * attempt);
            Rat rho = Rat(9, 5) + Rat(1, 2) * Rat(1, 11 + 3 * attempt);
            Rat phase = Rat(1, 8) + Rat(1, 67 + 2 * attempt);
            AnnularDiagram d;
            d.comps.push_back(torus_curve(c.p, c.q, vc, rho, phase));
            d.comps.push_back(torus_curve(c.p, c.q, vc, rho, phase + Rat(1, 23 + attempt)));
            auto cd = compile(d);
            long lk2 = cd.signed_crossings_between(0, 1);
            if (lk2 % 2 != 0) throw std::logic_error("framing_defect: odd crossing parity");
            long defect = cd.writhe(0) - lk2 / 2;
            if (cd.writhe(1) != cd.writhe(0))
                throw std::logic_error("framing_defect: parallel copies disagree");
            return memo.emplace(key, defect).first->second;
        } catch (const DegenerateDiagram&) {
            if (attempt >= 8) throw;
        }
    }
}

/// (p, q)-curve acting on z^k in the solid-torus skein module, computed by
/// full diagrammatic resolution and normalized to the surface framing.
/// Memoized; retries jittered constructions on degenerate geometry.
inline AnnularSkein curve_action(const TorusCurve& c, long k, const ResolveBudget& budget = {}) {
    static std::map<std::tuple<long, long, long>, AnnularSkein> memo;
    auto key = std::make_tuple(c.p, c.q, k);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    for (int attempt = 0;; ++attempt) {
        try {
            AnnularDiagram d = curve_diagram(c, (int)k, attempt);
            AnnularSkein out = resolve(d, budget);
            long defect = framing_defect(c);
            if (defect != 0) {
                Scalar fr = Scalar(defect % 2 ? -1 : 1) * Scalar::s_pow(-3 * (int)defect);
                out = fr * out;
            }
            return memo.emplace(key, std::move(out)).first->second;
        } catch (const DegenerateDiagram&) {
            if (attempt >= 8) throw;
        }
    }
}

/// Linear extension of curve_action over the solid-torus skein module.
inline AnnularSkein curve_action(const TorusCurve& c, const AnnularSkein& x,
                                 const ResolveBudget& budget = {}) {
    AnnularSkein out;
    for (const auto& [k, coef] : x.coeff) {
        AnnularSkein part = curve_action(c, k, budget);
        for (const auto& [m, c2] : part.coeff) out.add(m, coef * c2);
    }
    return out;
}

struct PairingReport {
    long p = 0, q = 0;
    int degree_cutoff = 0;
    long dimension = -1;
    std::vector<long> per_degree;
    bool stabilized = false;
    int stabilization_degree = -1;
    size_t rows = 0, cols = 0;
    double seconds = 0.0;
};

namespace detail {

/// Per-sample prime-field curve action (framing-normalized), for the lens
/// pairing where symbolic coefficients would dominate the runtime.
inline const std::map<long, Fp>& curve_action_fp(const TorusCurve& c, long k, const Rat& at,
                                                 const ResolveBudget& budget) {
    static std::map<std::tuple<long, long, long, Rat>, std::map<long, Fp>> memo;
    auto key = std::make_tuple(c.p, c.q, k, at);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    FpRing R(at);
    for (int attempt = 0;; ++attempt) {
        try {
            AnnularDiagram d = curve_diagram(c, (int)k, attempt);
            auto out = resolve_in(compile(d), R, budget);
            long defect = framing_defect(c);
            if (defect != 0) {
                Fp fr = R.s_pow(-3 * (int)defect);
                if (defect % 2) fr = Fp{0} - fr;
                for (auto& [m, v] : out) v = v * fr;
            }
            return memo.emplace(std::move(key), std::move(out)).first->second;
        } catch (const DegenerateDiagram&) {
            if (attempt >= 8) throw;
        }
    }
}

inline std::vector<Rat> oracle_samples(unsigned seed, int count) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(2, 97), den(2, 97);
    std::vector<Rat> out;
    while ((int)out.size() < count) {
        Rat v(num(rng), den(rng));
        v.canonicalize();
        if (v == 1 || v == -1 || v == 0) continue;
        out.push_back(v);
    }
    return out;
}

} // namespace detail

/// Dimension of the lens-space pairing C[z] (x)_{SkAlg(T^2)} C[z]: the span
/// of z^i (x) z^j truncated at total degree D, modulo the sliding relations
/// (w . z^i) (x) z^j = z^i (x) (sigma(w) . z^j) for the generating curves w,
/// where sigma twists by the gluing matrix of the splitting.
inline PairingReport lens_dimension(long p, long q, int D = -1,
                                    const ResolveBudget& budget = {}, unsigned seed = 12345,
                                    int sample_count = 3, int window = 3) {
    auto t0 = std::chrono::steady_clock::now();
    if (p < 0) {
        p = -p;
        q = -q;
    }
    if (p == 0 && std::abs(q) != 1)
        throw std::invalid_argument("lens_dimension: (0, q) needs q = +-1");
    if (std::gcd(std::abs(p), std::abs(q)) != 1)
        throw std::invalid_argument("lens_dimension: gcd(p, q) must be 1");
    if (D < 0) D = std::max<long>(6, p / 2 + 5);

    // gluing matrix with bottom row (p, q) and determinant one
    mpz_class g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), mpz_class(p).get_mpz_t(),
               mpz_class(q).get_mpz_t());
    long alpha = mpz_class(y).get_si(), beta = mpz_class(-x).get_si();

    const TorusCurve gens[2] = {TorusCurve(1, 0), TorusCurve(0, 1)};
    const TorusCurve imgs[2] = {TorusCurve(alpha, beta), TorusCurve(p, q)};

    long ext = 1;
    for (const auto& w : gens) ext = std::max(ext, w.p);
    for (const auto& w : imgs) ext = std::max(ext, w.p);
    ++ext;
    const int Dcols = D + (int)ext;

    // columns (i, j), i + j <= Dcols, ordered by total degree
    std::vector<std::pair<int, int>> cols;
    for (int t = 0; t <= Dcols; ++t)
        for (int i = 0; i <= t; ++i) cols.emplace_back(i, t - i);
    std::map<std::pair<int, int>, size_t> colidx;
    for (size_t i = 0; i < cols.size(); ++i) colidx[cols[i]] = i;
    auto deg_end = [&](int d) { return (size_t)(d + 1) * (d + 2) / 2; };

    PairingReport rep;
    rep.p = p;
    rep.q = q;
    rep.degree_cutoff = D;
    rep.cols = cols.size();

    std::vector<long> agg;
    bool have_sample = false;
    for (const Rat& at : detail::oracle_samples(seed, sample_count)) {
        try {
            // the first leg carries the right-module structure: its boundary
            // is seen with reversed orientation, so its curve actions are the
            // mirror images (s -> s^{-1}) of the resolver's left actions
            Rat at_inv = Rat(1) / at;
            // relation rows, kept only when every tensor leg they reference
            // stays inside the column range (the row window i + j <= D + 1
            // suffices for the readout at degrees <= D)
            std::vector<std::map<size_t, detail::Fp>> rws;
            for (int side = 0; side < 2; ++side) {
                for (const auto& [i, j] : cols) {
                    if (i + j > D + 1) continue;
                    const auto& lhs = detail::curve_action_fp(gens[side], i, at_inv, budget);
                    const auto& rhs = detail::curve_action_fp(imgs[side], j, at, budget);
                    std::map<size_t, detail::Fp> row;
                    bool ok = true;
                    auto put = [&](long a, long b, detail::Fp c) {
                        if (a + b > Dcols) {
                            ok = false;
                            return;
                        }
                        auto [jt, ins] = row.try_emplace(colidx.at({(int)a, (int)b}), detail::Fp{});
                        jt->second += c;
                        if (jt->second.is_zero()) row.erase(jt);
                        (void)ins;
                    };
                    for (const auto& [m, c] : lhs) put(m, j, c);
                    for (const auto& [m, c] : rhs) put(i, m, detail::Fp{0} - c);
                    if (ok && !row.empty()) rws.push_back(std::move(row));
                }
            }
            rep.rows = std::max(rep.rows, rws.size());

            // right-to-left elimination: the quotient dimension at total
            // degree d is the count of non-pivot columns of degree <= d
            std::vector<bool> pivot(cols.size(), false);
            for (;;) {
                size_t br = rws.size(), bc = 0, bn = 0;
                for (size_t i = 0; i < rws.size(); ++i) {
                    if (rws[i].empty()) continue;
                    size_t lead = rws[i].rbegin()->first;
                    if (br == rws.size() || lead > bc || (lead == bc && rws[i].size() < bn)) {
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
                    auto jt = row.find(bc);
                    if (jt == row.end()) continue;
                    detail::Fp f = jt->second;
                    row.erase(jt);
                    for (const auto& [c, v] : prow) {
                        if (c == bc) continue;
                        auto [kt, ins] = row.try_emplace(c, detail::Fp{});
                        kt->second -= f * v;
                        if (kt->second.is_zero()) row.erase(kt);
                        (void)ins;
                    }
                }
            }
            std::vector<long> dims;
            for (int d = 0; d <= D; ++d) {
                long dim = 0;
                for (size_t c = 0; c < deg_end(d); ++c)
                    if (!pivot[c]) ++dim;
                dims.push_back(dim);
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
    if (!have_sample) throw std::runtime_error("lens_dimension: every sample point hit a pole");
    rep.per_degree = std::move(agg);

    int n = (int)rep.per_degree.size();
    if (n >= window) {
        bool flat = true;
        for (int i = n - window; i < n; ++i)
            if (rep.per_degree[i] != rep.per_degree[n - 1]) flat = false;
        if (flat) {
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

} // namespace skein
