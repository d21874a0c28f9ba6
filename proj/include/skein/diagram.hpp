#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <skein/scalar.hpp>

namespace skein {

/// Thrown when a diagram fails a genericity check (tangential intersection,
/// two events at the same sweep position, a vertex on the seam, ...). The
/// curve compilers retry with a different jitter.
class DegenerateDiagram : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point of a link diagram in the annulus, drawn on the flat cylinder:
/// u is the angular coordinate (period 1), v the radial one, and h the
/// height used only to decide over/under at projected crossings.
struct V3 {
    Rat u, v, h;
};

/// A closed piecewise-linear curve on the cylinder. Vertices are stored with
/// unrolled (lifted) u-coordinates; edge i runs pts[i] -> pts[i+1], and the
/// closing edge runs pts.back() -> pts[0] shifted by (wind, 0, 0). No edge
/// may be vertical (constant u) and no vertex may sit on an integer u.
struct Component {
    std::vector<V3> pts;
    long wind = 0;
};

struct AnnularDiagram {
    std::vector<Component> comps;
};

inline Rat rat_floor(const Rat& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return Rat(q);
}

// ---------------------------------------------------------------------------
// component builders

/// A single core-parallel circle (winding 1, no vertices at the seam).
inline Component core_strand(const Rat& v, const Rat& u0 = Rat(1, 3)) {
    Component c;
    c.pts.push_back({u0, v, Rat(0)});
    c.wind = 1;
    return c;
}

/// A flat null-homotopic diamond at height 0.
inline Component unknot_loop(const Rat& u0, const Rat& v0, const Rat& r) {
    Component c;
    c.pts = {{u0 - r, v0, Rat(0)},
             {u0, v0 - r, Rat(0)},
             {u0 + r, v0, Rat(0)},
             {u0, v0 + r, Rat(0)}};
    return c;
}

/// A meridian circle of the tube of radius rho around the core level vc:
/// winds once around the meridian direction, null-homotopic in the annulus.
inline Component meridian_loop(const Rat& u0, const Rat& vc, const Rat& rho, const Rat& w) {
    Component c;
    c.pts = {{u0, vc + rho, Rat(0)},
             {u0 + w, vc, -rho},
             {u0, vc - rho, Rat(0)},
             {u0 - w, vc, rho}};
    return c;
}

namespace detail {

/// Node phases of the piecewise-linear meridian wave. Deliberately NOT the
/// quarter points: a symmetric wave places torus-curve self-crossings exactly
/// on wave vertices (v(phi) = v(-phi) forces phi = 1/4 or 3/4), which no
/// phase jitter can repair.
inline const std::array<Rat, 4>& tube_nodes() {
    static const std::array<Rat, 4> nodes{Rat(0), Rat(17, 64), Rat(33, 64), Rat(49, 64)};
    return nodes;
}

/// Position on the tube of radius rho around level vc at meridian phase phi
/// (period 1): linear interpolation of (v, h) between the wave nodes
/// (vc+rho, 0) -> (vc, -rho) -> (vc-rho, 0) -> (vc, +rho) -> around.
inline std::pair<Rat, Rat> tube_point(const Rat& phi, const Rat& vc, const Rat& rho) {
    const auto& nd = tube_nodes();
    // an asymmetric quadrilateral winding once around (0, 0): all v-values
    // distinct, so crossings of longitudinally shifted branches fall in
    // segment interiors rather than on nodes
    static const Rat vals[4][2] = {{Rat(1), Rat(1, 8)},
                                   {Rat(1, 9), Rat(-1)},
                                   {Rat(-1), Rat(-1, 7)},
                                   {Rat(-1, 11), Rat(1)}};
    Rat f = phi - rat_floor(phi);
    for (int i = 3; i >= 0; --i) {
        if (f >= nd[i]) {
            Rat next = i == 3 ? Rat(1) + nd[0] : nd[i + 1];
            Rat t = (f - nd[i]) / (next - nd[i]);
            int j = (i + 1) % 4;
            Rat v = vals[i][0] + t * (vals[j][0] - vals[i][0]);
            Rat h = vals[i][1] + t * (vals[j][1] - vals[i][1]);
            return {vc + rho * v, rho * h};
        }
    }
    throw std::logic_error("tube_point: unreachable");
}

} // namespace detail

/// The (r, s)-curve on the tube of radius rho around level vc: r longitudinal
/// wraps, s meridional wraps (s of either sign, or 0 for the plain push-off).
/// The phase must avoid multiples of 1/4 so that t = 0 is not a wave vertex.
inline Component torus_curve(long r, long s, const Rat& vc, const Rat& rho, const Rat& phase,
                             const Rat& u0 = Rat(1, 3)) {
    if (r < 1) throw std::invalid_argument("torus_curve: r >= 1 required");
    Component c;
    c.wind = r;
    if (s == 0) {
        c.pts.push_back({u0, vc + rho, Rat(0)});
        return c;
    }
    const auto& nd = detail::tube_nodes();
    {
        Rat f = phase - rat_floor(phase);
        for (const Rat& n : nd)
            if (f == n) throw DegenerateDiagram("torus_curve: phase on a wave node");
    }
    std::vector<Rat> ts{Rat(0)};
    Rat lo = s > 0 ? phase : phase + s, hi = s > 0 ? phase + s : phase;
    for (mpz_class m = mpz_class(rat_floor(lo)) - 1; Rat(m) < hi + 1; ++m) {
        for (const Rat& n : nd) {
            Rat node = Rat(m) + n;
            if (node <= lo || node >= hi) continue;
            Rat t = (node - phase) / s;
            if (t > 0 && t < 1) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());
    for (const Rat& t : ts) {
        auto [v, h] = detail::tube_point(phase + s * t, vc, rho);
        c.pts.push_back({u0 + r * t, v, h});
    }
    return c;
}

// ---------------------------------------------------------------------------
// compilation: exact intersections, arcs, crossings, turning points

struct CompiledDiagram {
    /// A maximal piece of a component between two events, monotone in u.
    /// path holds unrolled coordinates along the traversal direction.
    struct Arc {
        int comp = -1;
        std::vector<V3> path;
        Rat umin, umax;
        int seam = 0; // signed count of integer-u passages (traversal sign)
    };
    /// One of the four ends meeting at a junction. arc_end tells whether the
    /// traversal of the arc ends here; (du, dv) points away from the junction.
    struct Half {
        int arc = -1;
        bool arc_end = false;
        Rat du, dv;
    };
    struct Crossing {
        Rat u, v; // cylinder coordinates of the double point
        std::array<Half, 4> he; // counterclockwise order
        int under_in = -1;      // index of the under strand's arriving end
    };
    struct Turn {
        Rat u, v;
        bool is_max = false;
        Half a, b; // a: traversal arrives, b: traversal departs
    };

    std::vector<Arc> arcs;
    std::vector<Crossing> crossings;
    std::vector<Turn> turns;
    std::vector<long> free_winds; // |winding| of event-free components

    /// Sign of a crossing for the traversal orientations: +1 when rotating
    /// the under direction counterclockwise onto the over direction sweeps
    /// less than a half turn.
    int crossing_sign(size_t ci) const {
        const Crossing& cr = crossings[ci];
        int uo = (cr.under_in + 2) % 4;
        const Half& under = cr.he[uo]; // departing under half: travel direction
        const Half* over = nullptr;
        for (int k = 0; k < 4; ++k)
            if (k != cr.under_in && k != uo && !cr.he[k].arc_end) over = &cr.he[k];
        if (!over) throw std::logic_error("crossing_sign: malformed crossing");
        Rat x = over->du * under.dv - over->dv * under.du;
        return x > 0 ? 1 : -1;
    }

    /// Signed self-crossing count of one component.
    long writhe(int comp) const {
        long w = 0;
        for (size_t i = 0; i < crossings.size(); ++i) {
            bool self = true;
            for (const auto& h : crossings[i].he)
                if (arcs[h.arc].comp != comp) self = false;
            if (self) w += crossing_sign(i);
        }
        return w;
    }

    /// Sum of crossing signs between two distinct components (twice their
    /// linking number in the projection).
    long signed_crossings_between(int c1, int c2) const {
        long w = 0;
        for (size_t i = 0; i < crossings.size(); ++i) {
            bool saw1 = false, saw2 = false, other = false;
            for (const auto& h : crossings[i].he) {
                int c = arcs[h.arc].comp;
                (c == c1 ? saw1 : c == c2 ? saw2 : other) = true;
            }
            if (saw1 && saw2 && !other) w += crossing_sign(i);
        }
        return w;
    }

    /// v-coordinate of an arc at a given unrolled u (must lie in its range).
    Rat arc_v_at(int a, const Rat& uu) const {
        const auto& p = arcs[a].path;
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            const Rat &u1 = p[i].u, &u2 = p[i + 1].u;
            if ((u1 <= uu && uu <= u2) || (u2 <= uu && uu <= u1)) {
                if (u1 == u2) continue;
                Rat t = (uu - u1) / (u2 - u1);
                return p[i].v + t * (p[i + 1].v - p[i].v);
            }
        }
        throw std::logic_error("arc_v_at: u outside arc range");
    }
};

namespace detail {

struct Sub {
    V3 a, b;      // unrolled along traversal
    int edge = 0; // original edge index
};

/// CCW-from-positive-x angular order on nonvertical directions.
inline bool ccw_less(const std::pair<Rat, Rat>& x, const std::pair<Rat, Rat>& y) {
    auto half = [](const std::pair<Rat, Rat>& d) {
        return (d.second > 0 || (d.second == 0 && d.first > 0)) ? 0 : 1;
    };
    int hx = half(x), hy = half(y);
    if (hx != hy) return hx < hy;
    return x.first * y.second - x.second * y.first > 0;
}

} // namespace detail

inline CompiledDiagram compile(const AnnularDiagram& d) {
    using detail::Sub;
    CompiledDiagram out;

    // 1. unroll, validate, split at integer u
    std::vector<std::vector<Sub>> subs(d.comps.size());
    for (size_t ci = 0; ci < d.comps.size(); ++ci) {
        const Component& c = d.comps[ci];
        if (c.pts.empty()) throw std::invalid_argument("compile: empty component");
        std::vector<V3> ring = c.pts;
        ring.push_back({c.pts[0].u + c.wind, c.pts[0].v, c.pts[0].h});
        for (auto& p : ring) {
            // GMP comparisons assume canonical rationals
            p.u.canonicalize();
            p.v.canonicalize();
            p.h.canonicalize();
        }
        for (const auto& p : c.pts)
            if (p.u == rat_floor(p.u)) throw DegenerateDiagram("compile: vertex on the seam");
        for (size_t i = 0; i + 1 < ring.size(); ++i) {
            V3 A = ring[i], B = ring[i + 1];
            if (A.u == B.u) throw DegenerateDiagram("compile: vertical edge");
            // cut at every interior integer u
            std::vector<Rat> cuts;
            Rat lo = std::min(A.u, B.u), hi = std::max(A.u, B.u);
            for (mpz_class n = mpz_class(rat_floor(lo)) + 1; Rat(n) < hi; ++n) cuts.push_back(Rat(n));
            if (A.u > B.u) std::reverse(cuts.begin(), cuts.end());
            V3 prev = A;
            auto lerp = [&](const Rat& uu) {
                Rat t = (uu - A.u) / (B.u - A.u);
                return V3{uu, A.v + t * (B.v - A.v), A.h + t * (B.h - A.h)};
            };
            for (const Rat& uu : cuts) {
                V3 mid = lerp(uu);
                subs[ci].push_back({prev, mid, (int)i});
                prev = mid;
            }
            subs[ci].push_back({prev, B, (int)i});
        }
    }

    // 2. pairwise intersections in cylinder coordinates
    struct Branch {
        int comp, pos;
        Rat t;      // parameter within the sub-segment
        Rat h;
        Rat du, dv; // traversal direction
        V3 at;      // unrolled double-point position on this branch
    };
    struct RawCrossing {
        Rat u, v;
        Branch br[2];
        int over; // 0 or 1
    };
    std::vector<RawCrossing> raw;
    for (size_t c1 = 0; c1 < subs.size(); ++c1)
        for (size_t i = 0; i < subs[c1].size(); ++i)
            for (size_t c2 = c1; c2 < subs.size(); ++c2)
                for (size_t j = (c2 == c1 ? i + 1 : 0); j < subs[c2].size(); ++j) {
                    if (c1 == c2) {
                        size_t n = subs[c1].size();
                        if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                    }
                    const Sub &S = subs[c1][i], &T = subs[c2][j];
                    Rat sh_s = rat_floor(std::min(S.a.u, S.b.u));
                    Rat sh_t = rat_floor(std::min(T.a.u, T.b.u));
                    // both segments live in one unit strip after shifting
                    Rat p0 = S.a.u - sh_s, p1 = S.b.u - sh_s;
                    Rat q0 = T.a.u - sh_t, q1 = T.b.u - sh_t;
                    Rat dxs = p1 - p0, dys = S.b.v - S.a.v;
                    Rat dxt = q1 - q0, dyt = T.b.v - T.a.v;
                    Rat den = dxs * dyt - dys * dxt;
                    Rat rx = q0 - p0, ry = T.a.v - S.a.v;
                    if (den == 0) {
                        if (rx * dyt - ry * dxt == 0) {
                            // same supporting line: degenerate only if the
                            // u-ranges actually overlap
                            Rat lo = std::max(std::min(p0, p1), std::min(q0, q1));
                            Rat hi = std::min(std::max(p0, p1), std::max(q0, q1));
                            if (lo < hi) throw DegenerateDiagram("compile: collinear segments");
                        }
                        continue;
                    }
                    Rat t = (rx * dyt - ry * dxt) / den;
                    Rat w = (rx * dys - ry * dxs) / den;
                    if (t < 0 || t > 1 || w < 0 || w > 1) continue;
                    if (t == 0 || t == 1 || w == 0 || w == 1)
                        throw DegenerateDiagram("compile: intersection at a segment endpoint");
                    Rat h1 = S.a.h + t * (S.b.h - S.a.h);
                    Rat h2 = T.a.h + w * (T.b.h - T.a.h);
                    if (h1 == h2) throw DegenerateDiagram("compile: equal heights at a crossing");
                    RawCrossing rc;
                    rc.u = p0 + t * dxs;
                    rc.v = S.a.v + t * dys;
                    rc.br[0] = {(int)c1, (int)i, t, h1, dxs, dys,
                                {S.a.u + t * (S.b.u - S.a.u), rc.v, h1}};
                    rc.br[1] = {(int)c2, (int)j, w, h2, dxt, dyt,
                                {T.a.u + w * (T.b.u - T.a.u), rc.v, h2}};
                    rc.over = h1 > h2 ? 0 : 1;
                    raw.push_back(std::move(rc));
                }

    // 3. per-component event lists (crossing passages and u-turning vertices)
    struct Event {
        int pos;       // sub-segment index along the component
        Rat t;         // parameter within it
        int kind;      // 0 crossing passage, 1 turn
        int id;        // raw crossing id / turn id
        int side;      // which branch of the crossing
    };
    std::vector<std::vector<Event>> events(d.comps.size());
    for (size_t ri = 0; ri < raw.size(); ++ri)
        for (int b = 0; b < 2; ++b)
            events[raw[ri].br[b].comp].push_back({raw[ri].br[b].pos, raw[ri].br[b].t, 0, (int)ri, b});

    struct RawTurn {
        int comp, pos; // vertex sits at parameter 0 of sub-segment `pos`
        V3 at;
        bool is_max;
    };
    std::vector<RawTurn> turns_raw;
    for (size_t ci = 0; ci < d.comps.size(); ++ci) {
        const auto& ss = subs[ci];
        size_t n = ss.size();
        for (size_t i = 0; i < n; ++i) {
            // a turn can only sit at an original vertex, where edge index changes
            const Sub& prev = ss[(i + n - 1) % n];
            const Sub& cur = ss[i];
            if (prev.edge == cur.edge) continue;
            bool in_right = prev.b.u > prev.a.u;
            bool out_right = cur.b.u > cur.a.u;
            if (in_right == out_right) continue;
            turns_raw.push_back({(int)ci, (int)i, cur.a, in_right});
            events[ci].push_back({(int)i, Rat(0), 1, (int)turns_raw.size() - 1, 0});
        }
    }

    // 4. genericity: all event positions distinct on the cylinder, none at 0
    {
        std::vector<Rat> us;
        for (const auto& rc : raw) us.push_back(rc.u);
        for (const auto& t : turns_raw) us.push_back(t.at.u - rat_floor(t.at.u));
        std::sort(us.begin(), us.end());
        for (size_t i = 0; i + 1 < us.size(); ++i)
            if (us[i] == us[i + 1]) throw DegenerateDiagram("compile: coincident event columns");
        if (!us.empty() && us.front() == 0) throw DegenerateDiagram("compile: event on the seam");
    }

    // 5. arcs between consecutive events along each component
    struct Attach { // arc ids arriving/departing at (kind, id, side)
        int arc_in = -1, arc_out = -1;
    };
    std::map<std::tuple<int, int, int>, Attach> attach;
    for (size_t ci = 0; ci < d.comps.size(); ++ci) {
        auto& ev = events[ci];
        if (ev.empty()) {
            long w = d.comps[ci].wind;
            if (w < -1 || w > 1)
                throw std::invalid_argument("compile: event-free component winds more than once");
            out.free_winds.push_back(w < 0 ? -w : w);
            continue;
        }
        std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
            if (a.pos != b.pos) return a.pos < b.pos;
            return a.t < b.t;
        });
        const auto& ss = subs[ci];
        long wind = d.comps[ci].wind;
        auto point_of = [&](const Event& e, const Rat& shift) {
            if (e.kind == 1) {
                V3 p = turns_raw[e.id].at;
                p.u = p.u + shift;
                return p;
            }
            V3 p = raw[e.id].br[e.side].at;
            p.u = p.u + shift;
            return p;
        };
        size_t ne = ev.size();
        for (size_t k = 0; k < ne; ++k) {
            const Event &e1 = ev[k], &e2 = ev[(k + 1) % ne];
            bool wraps = (k + 1 == ne);
            CompiledDiagram::Arc arc;
            arc.comp = (int)ci;
            arc.path.push_back(point_of(e1, Rat(0)));
            // walk the sub-segment boundaries strictly between the two events
            int steps = wraps ? e2.pos + (int)ss.size() - e1.pos : e2.pos - e1.pos;
            int pos = e1.pos;
            Rat shift(0);
            for (int st = 0; st < steps; ++st) {
                V3 bpt = ss[pos].b;
                bpt.u = bpt.u + shift;
                arc.path.push_back(bpt);
                ++pos;
                if (pos == (int)ss.size()) {
                    pos = 0;
                    shift = shift + wind;
                }
            }
            arc.path.push_back(point_of(e2, shift));
            arc.umin = arc.umax = arc.path[0].u;
            for (const auto& p : arc.path) {
                arc.umin = std::min(arc.umin, p.u);
                arc.umax = std::max(arc.umax, p.u);
            }
            bool increasing = arc.path.back().u > arc.path.front().u;
            mpz_class lo = mpz_class(rat_floor(arc.umin)), hi = mpz_class(rat_floor(arc.umax));
            int passages = (int)mpz_class(hi - lo).get_si();
            arc.seam = increasing ? passages : -passages;
            int aid = (int)out.arcs.size();
            out.arcs.push_back(std::move(arc));
            attach[{e1.kind, e1.id, e1.side}].arc_out = aid;
            attach[{e2.kind, e2.id, e2.side}].arc_in = aid;
        }
    }

    // 6. assemble crossings with CCW half-edge order
    for (size_t ri = 0; ri < raw.size(); ++ri) {
        const RawCrossing& rc = raw[ri];
        CompiledDiagram::Crossing cr;
        cr.u = rc.u;
        cr.v = rc.v;
        std::vector<CompiledDiagram::Half> hs;
        std::vector<int> is_under_in;
        for (int b = 0; b < 2; ++b) {
            const Attach& at = attach.at({0, (int)ri, b});
            if (at.arc_in < 0 || at.arc_out < 0)
                throw std::logic_error("compile: dangling crossing attachment");
            const Branch& br = rc.br[b];
            hs.push_back({at.arc_in, true, -br.du, -br.dv});
            is_under_in.push_back(b != rc.over ? 1 : 0);
            hs.push_back({at.arc_out, false, br.du, br.dv});
            is_under_in.push_back(0);
        }
        std::array<int, 4> ord{0, 1, 2, 3};
        std::sort(ord.begin(), ord.end(), [&](int x, int y) {
            return detail::ccw_less({hs[x].du, hs[x].dv}, {hs[y].du, hs[y].dv});
        });
        for (int k = 0; k < 4; ++k) {
            cr.he[k] = hs[ord[k]];
            if (is_under_in[ord[k]]) cr.under_in = k;
        }
        if (cr.under_in < 0) throw std::logic_error("compile: lost the under strand");
        out.crossings.push_back(std::move(cr));
    }

    // 7. assemble turns
    for (size_t ti = 0; ti < turns_raw.size(); ++ti) {
        const RawTurn& rt = turns_raw[ti];
        const Attach& at = attach.at({1, (int)ti, 0});
        if (at.arc_in < 0 || at.arc_out < 0)
            throw std::logic_error("compile: dangling turn attachment");
        CompiledDiagram::Turn t;
        t.u = rt.at.u - rat_floor(rt.at.u);
        t.v = rt.at.v;
        t.is_max = rt.is_max;
        const auto& ss = subs[rt.comp];
        size_t n = ss.size();
        const Sub& prev = ss[(rt.pos + n - 1) % n];
        const Sub& cur = ss[rt.pos];
        t.a = {at.arc_in, true, prev.a.u - prev.b.u, prev.a.v - prev.b.v};
        t.b = {at.arc_out, false, cur.b.u - cur.a.u, cur.b.v - cur.a.v};
        out.turns.push_back(std::move(t));
    }
    return out;
}

/// Planar-diagram code for regression fixtures: one X(a,b,c,d) entry per
/// crossing, arc ids counterclockwise starting at the under strand's arriving
/// end, plus the winding numbers of crossing-free components.
inline std::string pd_code(const CompiledDiagram& cd) {
    std::string s;
    for (const auto& cr : cd.crossings) {
        s += "X(";
        for (int k = 0; k < 4; ++k) {
            if (k) s += ",";
            s += std::to_string(cr.he[(cr.under_in + k) % 4].arc);
        }
        s += ")";
    }
    for (long w : cd.free_winds) s += "O(" + std::to_string(w) + ")";
    return s;
}

} // namespace skein
