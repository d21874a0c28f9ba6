#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include <skein/diagram.hpp>
#include <skein/fp.hpp>

namespace skein {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Element of the solid-torus skein module: finite combination of z^k,
/// z = the core curve, z^0 = the empty skein.
struct AnnularSkein {
    std::map<long, Scalar> coeff;

    void add(long k, const Scalar& c) {
        auto [it, fresh] = coeff.try_emplace(k, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) coeff.erase(it);
        } else if (c.is_zero()) {
            coeff.erase(it);
        }
    }
    /// Coefficient-wise s -> s^{-1}: the effect of viewing every diagram in
    /// a mirror (all crossings switched).
    AnnularSkein mirror() const {
        AnnularSkein out;
        for (const auto& [k, c] : coeff) out.coeff.emplace(k, c.mirror());
        return out;
    }
    friend AnnularSkein operator+(const AnnularSkein& a, const AnnularSkein& b) {
        AnnularSkein out = a;
        for (const auto& [k, c] : b.coeff) out.add(k, c);
        return out;
    }
    friend AnnularSkein operator*(const Scalar& c, const AnnularSkein& a) {
        AnnularSkein out;
        for (const auto& [k, x] : a.coeff) out.add(k, c * x);
        return out;
    }
    friend bool operator==(const AnnularSkein& a, const AnnularSkein& b) {
        return a.coeff == b.coeff;
    }
    std::string str() const {
        std::string s;
        for (const auto& [k, c] : coeff) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")*z^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }
};

/// The value of a null-homotopic unknot.
inline Scalar kauffman_delta() { return -(Scalar::s_pow(2) + Scalar::s_pow(-2)); }

struct ResolveBudget {
    int max_exhaustive_crossings = 22;
    size_t max_states = 2000000;
};

namespace detail {

/// Coefficient ring of the symbolic resolution: Laurent polynomials in s.
struct ScalarRing {
    using Value = Scalar;
    Scalar one() const { return Scalar(1); }
    Scalar s_pow(int k) const { return Scalar::s_pow(k); }
    Scalar delta() const { return kauffman_delta(); }
    Scalar from_count(unsigned long long n) const { return Scalar(Rat((long)n)); }
};

/// Coefficient ring of a per-sample resolution: F_p with s specialized.
struct FpRing {
    using Value = Fp;
    Fp s1, sm1; // s and s^{-1} at the sample point

    explicit FpRing(const Rat& at) : s1(Fp::from_rat(at)) {
        if (s1.is_zero()) throw PoleError("FpRing: sample value is zero mod p");
        sm1 = Fp{Fp::pinv(s1.v)};
    }
    Fp one() const { return Fp{1}; }
    Fp s_pow(int k) const {
        Fp base = k >= 0 ? s1 : sm1, r{1};
        for (int i = std::abs(k); i > 0; --i) r = r * base;
        return r;
    }
    Fp delta() const { return Fp{0} - (s_pow(2) + s_pow(-2)); }
    Fp from_count(unsigned long long n) const { return Fp{n % Fp::P}; }
};

/// node ids: 2*arc = traversal start of the arc, 2*arc + 1 = traversal end
inline int half_node(const CompiledDiagram::Half& h) { return 2 * h.arc + (h.arc_end ? 1 : 0); }

template <class Ring>
void fold_freestanding(const CompiledDiagram& cd, const Ring& R,
                       std::map<long, typename Ring::Value>& r) {
    long ess = 0;
    auto mult = R.one();
    for (long w : cd.free_winds) {
        if (w == 0) mult = mult * R.delta();
        else if (w == 1 || w == -1) ++ess;
        else throw std::runtime_error("resolve: non-embedded diagram (winding > 1)");
    }
    std::map<long, typename Ring::Value> shifted;
    for (const auto& [k, c] : r) shifted.emplace(k + ess, mult * c);
    r = std::move(shifted);
}

/// Full Kauffman state sum: every crossing resolved both ways, loops traced
/// per state with their annular winding (0 -> delta, 1 -> z).
template <class Ring>
std::map<long, typename Ring::Value> resolve_exhaustive_in(const CompiledDiagram& cd,
                                                           const Ring& R,
                                                           const ResolveBudget& budget) {
    int c = (int)cd.crossings.size();
    if (c > budget.max_exhaustive_crossings)
        throw BudgetExceeded("resolve_exhaustive: " + std::to_string(c) +
                             " crossings exceed budget " +
                             std::to_string(budget.max_exhaustive_crossings));
    size_t nn = 2 * cd.arcs.size();
    std::vector<int> junction(nn, -1);
    for (const auto& t : cd.turns) {
        int x = half_node(t.a), y = half_node(t.b);
        junction[x] = y;
        junction[y] = x;
    }
    // smoothing pairings per crossing: A joins the under strand's arriving end
    // with its counterclockwise neighbour
    struct Pairing { int a[4], b[4]; }; // a: A-smoothing partner pairs flattened
    std::vector<Pairing> pr(c);
    for (int i = 0; i < c; ++i) {
        const auto& cr = cd.crossings[i];
        auto n = [&](int k) { return half_node(cr.he[(cr.under_in + k) % 4]); };
        pr[i].a[0] = n(0); pr[i].a[1] = n(1); pr[i].a[2] = n(2); pr[i].a[3] = n(3);
        pr[i].b[0] = n(0); pr[i].b[1] = n(3); pr[i].b[2] = n(1); pr[i].b[3] = n(2);
    }
    std::vector<int> seam(cd.arcs.size());
    for (size_t a = 0; a < cd.arcs.size(); ++a) seam[a] = cd.arcs[a].seam;

    // tally[#B][#null][#essential]
    std::map<std::tuple<int, int, int>, unsigned long long> tally;
    std::vector<int> mark(nn, -1);
    uint64_t nstates = c >= 1 ? (1ull << c) : 1;
    for (uint64_t mask = 0; mask < nstates; ++mask) {
        for (int i = 0; i < c; ++i) {
            const int* p = (mask >> i) & 1 ? pr[i].b : pr[i].a;
            junction[p[0]] = p[1];
            junction[p[1]] = p[0];
            junction[p[2]] = p[3];
            junction[p[3]] = p[2];
        }
        int nulls = 0, ess = 0;
        for (size_t n0 = 0; n0 < nn; ++n0) {
            if (mark[n0] == (int)mask) continue;
            long wind = 0;
            size_t cur = n0;
            do {
                mark[cur] = (int)mask;
                int j = junction[cur];
                mark[j] = (int)mask;
                wind += (j & 1) ? -seam[j >> 1] : seam[j >> 1];
                cur = j ^ 1;
            } while (cur != n0);
            if (wind < 0) wind = -wind;
            if (wind > 1) throw std::runtime_error("resolve: non-embedded diagram (winding > 1)");
            (wind == 0 ? nulls : ess)++;
        }
        ++tally[{(int)__builtin_popcountll(mask), nulls, ess}];
    }
    auto delta = R.delta();
    std::map<long, typename Ring::Value> out;
    std::vector<typename Ring::Value> dcache{R.one()};
    for (const auto& [key, count] : tally) {
        auto [nb, nulls, ess] = key;
        while ((int)dcache.size() <= nulls) dcache.push_back(dcache.back() * delta);
        auto term = R.from_count(count) * R.s_pow(c - 2 * nb) * dcache[nulls];
        auto [it, fresh] = out.try_emplace((long)ess, term);
        if (!fresh) it->second = it->second + term;
    }
    fold_freestanding(cd, R, out);
    return out;
}

/// Seam-sweep contraction: cut the annulus at u = 0, sweep the cut rectangle
/// left to right keeping, per Kauffman state class, the planar matching of
/// {seam points, current frontier}. Mid-sweep loops are contractible (delta);
/// winding appears only when the final matching is closed up through the seam
/// identification. Memory scales with the number of distinct matchings, not
/// with 2^crossings.
template <class Ring>
std::map<long, typename Ring::Value> resolve_sweep_in(const CompiledDiagram& cd, const Ring& R,
                                                      const ResolveBudget& budget) {
    using Strand = std::pair<int, long>; // (arc, base): unrolled position = base + u
    using V = typename Ring::Value;
    const V delta = R.delta();

    auto base_of = [&](const CompiledDiagram::Half& h, const Rat& uev) {
        const auto& path = cd.arcs[h.arc].path;
        Rat w = h.arc_end ? path.back().u : path.front().u;
        Rat b = w - uev;
        if (b.get_den() != 1) throw std::logic_error("resolve_sweep: non-integral strand base");
        return Strand{h.arc, (long)mpz_class(b.get_num()).get_si()};
    };

    // initial frontier: every integer-u passage of every arc, ordered by v
    std::vector<Strand> frontier;
    for (size_t a = 0; a < cd.arcs.size(); ++a) {
        const auto& arc = cd.arcs[a];
        for (mpz_class n = mpz_class(rat_floor(arc.umin)) + 1; Rat(n) < arc.umax; ++n)
            frontier.push_back({(int)a, n.get_si()});
    }
    std::sort(frontier.begin(), frontier.end(), [&](const Strand& x, const Strand& y) {
        return cd.arc_v_at(x.first, Rat(x.second)) < cd.arc_v_at(y.first, Rat(y.second));
    });
    const int m = (int)frontier.size();
    std::map<Strand, int> seam_id;
    for (int i = 0; i < m; ++i) seam_id[frontier[i]] = i;

    // merged event schedule
    struct Ev { Rat u; bool is_turn; int id; };
    std::vector<Ev> evs;
    for (size_t i = 0; i < cd.crossings.size(); ++i) evs.push_back({cd.crossings[i].u, false, (int)i});
    for (size_t i = 0; i < cd.turns.size(); ++i) evs.push_back({cd.turns[i].u, true, (int)i});
    std::sort(evs.begin(), evs.end(), [](const Ev& x, const Ev& y) { return x.u < y.u; });

    auto slot_of = [&](const Strand& s) {
        for (size_t i = 0; i < frontier.size(); ++i)
            if (frontier[i] == s) return (int)i;
        throw std::logic_error("resolve_sweep: strand not on the frontier");
    };

    // states: matching over {seam 0..m-1} + {frontier slots m..m+f-1}
    std::map<std::vector<int>, V> states;
    {
        std::vector<int> init(2 * m);
        for (int i = 0; i < m; ++i) {
            init[i] = m + i;
            init[m + i] = i;
        }
        states.emplace(std::move(init), R.one());
    }
    auto join = [&](std::vector<int>& p, V& coef, int x, int y) {
        // connect the region partners of boundary points x and y
        int px = p[x], py = p[y];
        if (px == y) {
            coef = coef * delta;
        } else {
            p[px] = py;
            p[py] = px;
        }
    };
    auto erase_two = [&](std::map<std::vector<int>, V>& st, int x, int y) {
        // drop boundary points x < y from every matching, shifting indices
        std::map<std::vector<int>, V> out;
        for (auto& [p, c] : st) {
            std::vector<int> q;
            q.reserve(p.size() - 2);
            for (int i = 0; i < (int)p.size(); ++i) {
                if (i == x || i == y) continue;
                int t = p[i];
                q.push_back(t - (t > y ? 2 : (t > x ? 1 : 0)));
            }
            auto [it, fresh] = out.try_emplace(std::move(q), c);
            if (!fresh) it->second = it->second + c;
        }
        st = std::move(out);
    };

    for (const auto& ev : evs) {
        if (states.size() > budget.max_states)
            throw BudgetExceeded("resolve_sweep: state budget exceeded");
        if (!ev.is_turn) {
            const auto& cr = cd.crossings[ev.id];
            std::vector<int> lefts, rights;
            for (int k = 0; k < 4; ++k) (cr.he[k].du < 0 ? lefts : rights).push_back(k);
            if (lefts.size() != 2 || rights.size() != 2)
                throw std::logic_error("resolve_sweep: crossing not 2-left/2-right");
            int s0 = slot_of(base_of(cr.he[lefts[0]], ev.u));
            int s1 = slot_of(base_of(cr.he[lefts[1]], ev.u));
            if (s0 > s1) std::swap(s0, s1), std::swap(lefts[0], lefts[1]);
            if (s1 != s0 + 1) throw std::logic_error("resolve_sweep: crossing strands not adjacent");
            // order the outgoing strands by slope (right side: smaller dv/du lower)
            const auto &r0 = cr.he[rights[0]], &r1 = cr.he[rights[1]];
            bool r0_lower = r0.dv * r1.du < r1.dv * r0.du;
            Strand low = base_of(r0_lower ? r0 : r1, ev.u);
            Strand high = base_of(r0_lower ? r1 : r0, ev.u);
            // which smoothing is the turnback (cap+cup) one: A joins under_in
            // with its ccw neighbour; e-type iff that pair is the two lefts
            auto in_pair = [&](int x, int y, int k1, int k2) {
                return (x == k1 && y == k2) || (x == k2 && y == k1);
            };
            int ui = cr.under_in, un = (cr.under_in + 1) % 4;
            bool a_is_e = in_pair(ui, un, lefts[0], lefts[1]) || in_pair(ui, un, rights[0], rights[1]);
            V wa = R.s_pow(1), wb = R.s_pow(-1);
            V w_pass = a_is_e ? wb : wa, w_e = a_is_e ? wa : wb;
            std::map<std::vector<int>, V> next;
            int x = m + s0, y = m + s1;
            for (auto& [p, c] : states) {
                { // pass-through: matching unchanged
                    auto [it, fresh] = next.try_emplace(p, c * w_pass);
                    if (!fresh) it->second = it->second + c * w_pass;
                }
                { // cap + cup
                    std::vector<int> q = p;
                    V cc = c * w_e;
                    join(q, cc, x, y);
                    q[x] = y;
                    q[y] = x;
                    auto [it, fresh] = next.try_emplace(std::move(q), cc);
                    if (!fresh) it->second = it->second + cc;
                }
            }
            states = std::move(next);
            frontier[s0] = low;
            frontier[s1] = high;
        } else {
            const auto& t = cd.turns[ev.id];
            if (t.is_max) {
                int s0 = slot_of(base_of(t.a, ev.u));
                int s1 = slot_of(base_of(t.b, ev.u));
                if (s0 > s1) std::swap(s0, s1);
                if (s1 != s0 + 1) throw std::logic_error("resolve_sweep: cap strands not adjacent");
                int x = m + s0, y = m + s1;
                std::map<std::vector<int>, V> next;
                for (auto& [p, c] : states) {
                    std::vector<int> q = p;
                    V cc = c;
                    join(q, cc, x, y);
                    q[x] = y;
                    q[y] = x; // placeholder pairing, removed below
                    auto [it, fresh] = next.try_emplace(std::move(q), cc);
                    if (!fresh) it->second = it->second + cc;
                }
                states = std::move(next);
                erase_two(states, x, y);
                frontier.erase(frontier.begin() + s0, frontier.begin() + s0 + 2);
            } else {
                Strand sa = base_of(t.a, ev.u), sb = base_of(t.b, ev.u);
                bool a_lower = t.a.dv * t.b.du < t.b.dv * t.a.du;
                Strand low = a_lower ? sa : sb, high = a_lower ? sb : sa;
                int idx = 0;
                for (const auto& s : frontier) {
                    if (cd.arc_v_at(s.first, Rat(s.second) + ev.u) < t.v) ++idx;
                }
                int x = m + idx, y = m + idx + 1;
                std::map<std::vector<int>, V> next;
                for (auto& [p, c] : states) {
                    std::vector<int> q(p.size() + 2);
                    for (int i = 0; i < (int)p.size(); ++i) {
                        int pi = p[i];
                        if (pi >= x) pi += 2;
                        q[i >= x ? i + 2 : i] = pi;
                    }
                    q[x] = y;
                    q[y] = x;
                    auto [it, fresh] = next.try_emplace(std::move(q), c);
                    if (!fresh) it->second = it->second + c;
                }
                states = std::move(next);
                frontier.insert(frontier.begin() + idx, {low, high});
            }
        }
    }

    if ((int)frontier.size() != m) throw std::logic_error("resolve_sweep: frontier count drifted");
    // closing the annulus: final strand (arc, b) continues into the seam
    // point of (arc, b + 1)
    std::vector<int> rid(m), invrid(m);
    for (int t = 0; t < m; ++t) {
        auto it = seam_id.find({frontier[t].first, frontier[t].second + 1});
        if (it == seam_id.end()) throw std::logic_error("resolve_sweep: unmatched final strand");
        rid[t] = it->second;
        invrid[it->second] = t;
    }
    std::map<long, V> out;
    for (const auto& [p, c] : states) {
        if ((int)p.size() != 2 * m) throw std::logic_error("resolve_sweep: bad final matching size");
        std::vector<char> seen(2 * m, 0);
        int nulls = 0;
        long ess = 0;
        V coef = c;
        for (int p0 = 0; p0 < 2 * m; ++p0) {
            if (seen[p0]) continue;
            long wind = 0;
            int cur = p0;
            do {
                seen[cur] = 1;
                int q = p[cur];
                seen[q] = 1;
                if (q >= m) {
                    ++wind;
                    cur = rid[q - m];
                } else {
                    --wind;
                    cur = m + invrid[q];
                }
            } while (cur != p0);
            if (wind < 0) wind = -wind;
            if (wind > 1) throw std::runtime_error("resolve: non-embedded diagram (winding > 1)");
            if (wind == 0) ++nulls; else ++ess;
        }
        for (int i = 0; i < nulls; ++i) coef = coef * delta;
        auto [it, fresh] = out.try_emplace(ess, coef);
        if (!fresh) it->second = it->second + coef;
    }
    fold_freestanding(cd, R, out);
    return out;
}

template <class Ring>
std::map<long, typename Ring::Value> resolve_in(const CompiledDiagram& cd, const Ring& R,
                                                const ResolveBudget& budget) {
    if ((int)cd.crossings.size() <= budget.max_exhaustive_crossings)
        return resolve_exhaustive_in(cd, R, budget);
    return resolve_sweep_in(cd, R, budget);
}

inline AnnularSkein to_skein(std::map<long, Scalar>&& m) {
    AnnularSkein out;
    for (auto& [k, c] : m) out.add(k, c);
    return out;
}

} // namespace detail

inline AnnularSkein resolve_exhaustive(const CompiledDiagram& cd, const ResolveBudget& budget = {}) {
    return detail::to_skein(detail::resolve_exhaustive_in(cd, detail::ScalarRing{}, budget));
}

inline AnnularSkein resolve_sweep(const CompiledDiagram& cd, const ResolveBudget& budget = {}) {
    return detail::to_skein(detail::resolve_sweep_in(cd, detail::ScalarRing{}, budget));
}

/// Resolve a diagram, choosing the exhaustive state sum when it fits the
/// budget and the seam sweep otherwise.
inline AnnularSkein resolve(const AnnularDiagram& d, const ResolveBudget& budget = {}) {
    CompiledDiagram cd = compile(d);
    return detail::to_skein(detail::resolve_in(cd, detail::ScalarRing{}, budget));
}

} // namespace skein
