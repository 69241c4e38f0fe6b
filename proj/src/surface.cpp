#include "flatblock/surface.hpp"

#include "flatblock/unfolding.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace fb {

namespace {

Quad half(const Quad& q) { return q * Quad(Rat(1, 2)); }
Vec half(const Vec& v) { return Vec(half(v.x), half(v.y)); }

bool parallel_pos(const Vec& u, const Vec& v) {
    return cross(u, v).is_zero() && dot(u, v).sign() > 0;
}

// Is ref inside the half-open wedge swept counterclockwise from a to b?
// The sweep angle is the corner's interior angle, anywhere in (0, 2pi).
bool wedge_contains(const Vec& a, const Vec& b, const Vec& ref) {
    if (parallel_pos(ref, b)) return true;
    if (parallel_pos(ref, a)) return false;
    int c = cross(a, b).sign();
    int ca = cross(a, ref).sign(), cb = cross(ref, b).sign();
    if (c > 0) return ca > 0 && cb > 0;
    if (c < 0) return ca > 0 || cb > 0;
    if (dot(a, b).sign() > 0)
        throw Error("InternalError", "degenerate corner wedge");
    return ca > 0;  // straight corner: half plane above a
}

std::string point_key(size_t poly, const Vec& v) {
    return std::to_string(poly) + "|" + v.x.str() + "|" + v.y.str();
}

}  // namespace

// ---------------------------------------------------------------------------

TranslationSurface TranslationSurface::assemble(std::vector<Polygon> polys,
                                                std::vector<Gluing> gluings,
                                                std::vector<SurfacePoint> marked) {
    TranslationSurface s;
    s.polys = std::move(polys);
    s.gluings = std::move(gluings);
    s.marked = std::move(marked);

    Int disc = 0;
    for (size_t p = 0; p < s.polys.size(); ++p) {
        const Polygon& P = s.polys[p];
        if (P.size() < 3)
            throw Error("BadSurface", "polygon " + std::to_string(p) + " has < 3 vertices");
        for (size_t e = 0; e < P.size(); ++e) {
            if (P.side(e).is_zero())
                throw Error("BadSurface", "zero side in polygon " + std::to_string(p));
            disc = Quad::join(disc, Quad::join(P.verts[e].x.D, P.verts[e].y.D));
        }
        if (P.area2().sign() <= 0)
            throw Error("BadSurface", "polygon " + std::to_string(p) + " is not counterclockwise");
    }
    s.disc = disc;

    s.partner_.resize(s.polys.size());
    s.shift_.resize(s.polys.size());
    for (size_t p = 0; p < s.polys.size(); ++p) {
        s.partner_[p].assign(s.polys[p].size(), EdgeRef{SIZE_MAX, SIZE_MAX});
        s.shift_[p].resize(s.polys[p].size());
    }
    auto in_range = [&](const EdgeRef& r) {
        return r.poly < s.polys.size() && r.edge < s.polys[r.poly].size();
    };
    for (const Gluing& g : s.gluings) {
        if (!in_range(g.a) || !in_range(g.b))
            throw Error("BadGluing", "edge reference out of range");
        if (g.a == g.b) throw Error("BadGluing", "edge glued to itself");
        if (s.partner_[g.a.poly][g.a.edge].poly != SIZE_MAX ||
            s.partner_[g.b.poly][g.b.edge].poly != SIZE_MAX)
            throw Error("BadGluing", "edge glued twice");
        const Polygon& A = s.polys[g.a.poly];
        const Polygon& B = s.polys[g.b.poly];
        if (!(A.side(g.a.edge) == -B.side(g.b.edge)))
            throw Error("BadGluing", "glued edges are not opposite equal vectors");
        s.partner_[g.a.poly][g.a.edge] = g.b;
        s.partner_[g.b.poly][g.b.edge] = g.a;
        s.shift_[g.a.poly][g.a.edge] =
            B.verts[(g.b.edge + 1) % B.size()] - A.verts[g.a.edge];
        s.shift_[g.b.poly][g.b.edge] =
            A.verts[(g.a.edge + 1) % A.size()] - B.verts[g.b.edge];
    }
    for (size_t p = 0; p < s.polys.size(); ++p)
        for (size_t e = 0; e < s.polys[p].size(); ++e)
            if (s.partner_[p][e].poly == SIZE_MAX)
                throw Error("BadGluing", "unmatched edge " + std::to_string(p) + "." +
                                             std::to_string(e));

    for (const SurfacePoint& m : s.marked)
        if (m.poly >= s.polys.size() ||
            locate(s.polys[m.poly], m.pos).where == Where::Outside)
            throw Error("InvalidPoint", "marked point outside its polygon");
    return s;
}

Quad TranslationSurface::area2() const {
    Quad a(0);
    for (const Polygon& p : polys) a += p.area2();
    return a;
}

std::pair<size_t, size_t> corner_ccw(const TranslationSurface& s, size_t poly, size_t vert) {
    size_t k = s.polys[poly].size();
    const EdgeRef& pr = s.partner(poly, (vert + k - 1) % k);
    return {pr.poly, pr.edge};
}

std::pair<size_t, size_t> corner_cw(const TranslationSurface& s, size_t poly, size_t vert) {
    const EdgeRef& pr = s.partner(poly, vert);
    return {pr.poly, (pr.edge + 1) % s.polys[pr.poly].size()};
}

std::vector<SurfacePoint> TranslationSurface::representatives(const SurfacePoint& sp) const {
    if (sp.poly >= polys.size()) throw Error("InvalidPoint", "polygon index out of range");
    const Polygon& P = polys[sp.poly];
    Location loc = locate(P, sp.pos);
    if (loc.where == Where::Outside)
        throw Error("InvalidPoint", "point outside its polygon");
    if (loc.where == Where::Interior) return {sp};
    if (loc.where == Where::OnEdge) {
        const EdgeRef& pr = partner(sp.poly, loc.index);
        Vec other = sp.pos + shift(sp.poly, loc.index);
        return {sp, SurfacePoint{pr.poly, other, sp.label}};
    }
    std::vector<SurfacePoint> reps;
    size_t p = sp.poly, v = loc.index;
    do {
        reps.push_back(SurfacePoint{p, polys[p].verts[v], sp.label});
        auto nx = corner_ccw(*this, p, v);
        p = nx.first;
        v = nx.second;
    } while (!(p == sp.poly && v == loc.index));
    return reps;
}

SurfacePoint TranslationSurface::canonical(const SurfacePoint& sp) const {
    std::vector<SurfacePoint> reps = representatives(sp);
    size_t best = 0;
    for (size_t i = 1; i < reps.size(); ++i) {
        if (reps[i].poly != reps[best].poly
                ? reps[i].poly < reps[best].poly
                : vec_cmp(reps[i].pos, reps[best].pos) < 0)
            best = i;
    }
    return reps[best];
}

bool TranslationSurface::same_point(const SurfacePoint& a, const SurfacePoint& b) const {
    SurfacePoint ca = canonical(a), cb = canonical(b);
    return ca.poly == cb.poly && ca.pos == cb.pos;
}

// ---------------------------------------------------------------------------
// Cone structure.  Walk each corner cycle counterclockwise; the total angle is
// 2pi times the number of times the cycle's wedges sweep past a fixed
// reference ray.  Exact, and invariant under any orientation-preserving
// linear chart.

ConeAnalysis cone_analysis(const TranslationSurface& s) {
    ConeAnalysis out;
    const Vec ref(Quad(1), Quad(0));
    std::vector<std::vector<char>> seen(s.polys.size());
    for (size_t p = 0; p < s.polys.size(); ++p) seen[p].assign(s.polys[p].size(), 0);

    long long total_excess = 0;
    for (size_t p0 = 0; p0 < s.polys.size(); ++p0)
        for (size_t v0 = 0; v0 < s.polys[p0].size(); ++v0) {
            if (seen[p0][v0]) continue;
            ConeClass cls;
            long long winding = 0;
            size_t p = p0, v = v0;
            do {
                seen[p][v] = 1;
                cls.corners.push_back({p, v});
                const Polygon& P = s.polys[p];
                size_t k = P.size();
                Vec a = P.side(v);
                Vec b = -P.side((v + k - 1) % k);
                if (wedge_contains(a, b, ref)) ++winding;
                auto nx = corner_ccw(s, p, v);
                p = nx.first;
                v = nx.second;
            } while (!(p == p0 && v == v0));
            if (winding < 1)
                throw Error("InternalError", "corner cycle with zero winding");
            cls.angle_over_2pi = winding;
            total_excess += winding - 1;
            out.classes.push_back(std::move(cls));
        }

    if (total_excess % 2 != 0)
        throw Error("InternalError", "odd total cone excess");
    out.genus = total_excess / 2 + 1;
    for (const ConeClass& c : out.classes)
        if (c.angle_over_2pi > 1) out.stratum.push_back(c.angle_over_2pi - 1);
    std::sort(out.stratum.rbegin(), out.stratum.rend());
    return out;
}

bool ConeAnalysis::is_singular(size_t poly, size_t vertex) const {
    return class_of(poly, vertex).angle_over_2pi > 1;
}

const ConeClass& ConeAnalysis::class_of(size_t poly, size_t vertex) const {
    for (const ConeClass& c : classes)
        for (const auto& [p, v] : c.corners)
            if (p == poly && v == vertex) return c;
    throw Error("InvalidPoint", "corner not in any cone class");
}

// ---------------------------------------------------------------------------
// Canonical unfolding: one copy of the polygon per element of the dihedral
// group D_d, reflected copies with reversed vertex order to stay
// counterclockwise, glued along side i to the copy composed with the
// reflection across that side's direction.

TranslationSurface build_unfolding(const Polygon& base) {
    long long d = base.d;
    Chart ch(d);
    size_t k = base.size();

    auto edge_of = [&](long long g, size_t i) -> size_t {
        return g / d == 0 ? i : (k - 1 - i) % k;
    };

    std::vector<Polygon> copies;
    for (long long g = 0; g < 2 * d; ++g) {
        long long refl = g / d, t = g % d;
        Mat2 M = ch.rotation(t);
        if (refl) M = M * ch.reflection(0);
        std::vector<Vec> vs(k);
        std::vector<Rat> an(k);
        for (size_t i = 0; i < k; ++i) {
            size_t j = refl ? (k - i) % k : i;
            vs[i] = M.apply(base.verts[j]);
            an[i] = base.angles[j];
        }
        copies.push_back(polygon_from_vertices(an, vs));
    }

    std::vector<Gluing> gl;
    for (long long g = 0; g < 2 * d; ++g)
        for (size_t i = 0; i < k; ++i) {
            long long m = ((base.side_m[i] % d) + d) % d;
            long long h = dihedral_mul(g, d + m, d);
            if (g < h)
                gl.push_back({EdgeRef{(size_t)g, edge_of(g, i)},
                              EdgeRef{(size_t)h, edge_of(h, i)}});
        }
    return TranslationSurface::assemble(std::move(copies), std::move(gl));
}

TranslationSurface square_torus() {
    std::vector<Rat> an(4, Rat(1, 2));
    std::vector<Vec> vs = {Vec(Quad(0), Quad(0)), Vec(Quad(1), Quad(0)),
                           Vec(Quad(1), Quad(1)), Vec(Quad(0), Quad(1))};
    Polygon p = polygon_from_vertices(an, vs);
    return TranslationSurface::assemble(
        {p}, {Gluing{{0, 0}, {0, 2}}, Gluing{{0, 1}, {0, 3}}});
}

TranslationSurface transform(const TranslationSurface& s, const Mat2& m) {
    if (m.det().sign() <= 0)
        throw Error("InvalidTransform", "determinant must be positive");
    std::vector<Polygon> ps;
    for (const Polygon& p : s.polys) {
        Polygon q;
        q.angles = p.angles;  // no longer tied to a chart; kept for bookkeeping
        q.d = p.d;
        for (const Vec& v : p.verts) q.verts.push_back(m.apply(v));
        ps.push_back(std::move(q));
    }
    std::vector<SurfacePoint> mk;
    for (const SurfacePoint& sp : s.marked)
        mk.push_back({sp.poly, m.apply(sp.pos), sp.label});
    return TranslationSurface::assemble(std::move(ps), s.gluings, std::move(mk));
}

// ---------------------------------------------------------------------------
// Horizontal slicing.  Cut every polygon at each of its vertex levels and the
// given chord levels into trapezoid bands, then take the common refinement of
// the resulting boundary points across internal cut lines and across the
// original gluings.  Inserting a straight vertex into a piece never forces
// further cuts, so one refinement pass suffices.

SlicedSurface slice_horizontal(const TranslationSurface& s,
                               const std::vector<Chord>& chords) {
    size_t n = s.polys.size();

    std::vector<std::vector<Quad>> levels(n);
    auto add_level = [&](size_t p, const Quad& y) {
        for (const Quad& q : levels[p])
            if (q == y) return;
        levels[p].push_back(y);
    };
    for (size_t p = 0; p < n; ++p)
        for (const Vec& v : s.polys[p].verts) add_level(p, v.y);
    for (const Chord& c : chords) add_level(c.poly, c.y);
    for (auto& lv : levels)
        std::sort(lv.begin(), lv.end(),
                  [](const Quad& a, const Quad& b) { return (a - b).sign() < 0; });

    struct Piece {
        size_t parent;
        std::vector<Vec> verts;
    };
    std::vector<Piece> pieces;
    for (size_t p = 0; p < n; ++p) {
        const Polygon& P = s.polys[p];
        size_t k = P.size();
        for (size_t bi = 0; bi + 1 < levels[p].size(); ++bi) {
            const Quad& lo = levels[p][bi];
            const Quad& hi = levels[p][bi + 1];
            Quad mid = half(lo + hi);
            struct Crossing {
                Quad xlo, xhi, xmid;
            };
            std::vector<Crossing> cr;
            for (size_t e = 0; e < k; ++e) {
                Vec a = P.verts[e], b = P.verts[(e + 1) % k];
                if (a.y == b.y) continue;
                Quad ymin = a.y < b.y ? a.y : b.y;
                Quad ymax = a.y < b.y ? b.y : a.y;
                if (!(ymin <= lo && hi <= ymax)) continue;
                auto xat = [&](const Quad& y) {
                    return a.x + (b.x - a.x) * ((y - a.y) / (b.y - a.y));
                };
                cr.push_back({xat(lo), xat(hi), xat(mid)});
            }
            std::sort(cr.begin(), cr.end(), [](const Crossing& u, const Crossing& v) {
                return (u.xmid - v.xmid).sign() < 0;
            });
            if (cr.size() % 2 != 0)
                throw Error("InternalError", "odd crossing count in band");
            for (size_t i = 0; i + 1 < cr.size(); i += 2) {
                std::vector<Vec> vs;
                vs.push_back(Vec(cr[i].xlo, lo));
                if (!(cr[i + 1].xlo == cr[i].xlo)) vs.push_back(Vec(cr[i + 1].xlo, lo));
                vs.push_back(Vec(cr[i + 1].xhi, hi));
                if (!(cr[i].xhi == cr[i + 1].xhi)) vs.push_back(Vec(cr[i].xhi, hi));
                pieces.push_back({p, std::move(vs)});
            }
        }
    }

    // Breakpoints on internal cut lines, keyed (parent, y), and on original
    // edges, keyed by the gluing structure.
    std::map<std::string, std::vector<Quad>> cutx;  // key: parent|y
    auto cut_key = [](size_t p, const Quad& y) {
        return std::to_string(p) + "|" + y.str();
    };
    auto add_cutx = [&](size_t p, const Quad& y, const Quad& x) {
        auto& v = cutx[cut_key(p, y)];
        for (const Quad& q : v)
            if (q == x) return;
        v.push_back(x);
    };

    auto on_segment = [](const Vec& a, const Vec& b, const Vec& pt) {
        if (!cross(b - a, pt - a).is_zero()) return false;
        return dot(pt - a, b - a).sign() >= 0 && dot(pt - b, a - b).sign() >= 0;
    };

    std::vector<std::vector<std::vector<Vec>>> edgepts(n);  // [poly][edge] points
    for (size_t p = 0; p < n; ++p) edgepts[p].resize(s.polys[p].size());
    auto add_edgept = [&](size_t p, size_t e, const Vec& pt) {
        for (const Vec& q : edgepts[p][e])
            if (q == pt) return;
        edgepts[p][e].push_back(pt);
    };

    auto register_point = [&](size_t p, const Vec& c) {
        add_cutx(p, c.y, c.x);
        const Polygon& P = s.polys[p];
        for (size_t e = 0; e < P.size(); ++e)
            if (on_segment(P.verts[e], P.verts[(e + 1) % P.size()], c))
                add_edgept(p, e, c);
    };
    for (const Piece& pc : pieces)
        for (const Vec& c : pc.verts) register_point(pc.parent, c);
    for (size_t p = 0; p < n; ++p)
        for (const Vec& v : s.polys[p].verts) register_point(p, v);
    for (const Chord& c : chords) {
        add_cutx(c.poly, c.y, c.x1);
        add_cutx(c.poly, c.y, c.x2);
    }

    // Common refinement across gluings: each side inherits the partner's
    // breakpoints through the gluing translation.
    for (const Gluing& g : s.gluings) {
        std::vector<Vec> froma = edgepts[g.a.poly][g.a.edge];
        std::vector<Vec> fromb = edgepts[g.b.poly][g.b.edge];
        const Vec& sa = s.shift(g.a.poly, g.a.edge);
        const Vec& sb = s.shift(g.b.poly, g.b.edge);
        for (const Vec& pt : fromb) add_edgept(g.a.poly, g.a.edge, pt + sb);
        for (const Vec& pt : froma) add_edgept(g.b.poly, g.b.edge, pt + sa);
    }

    // Rebuild pieces with every breakpoint on their boundary inserted.
    std::vector<Polygon> out_polys;
    std::vector<size_t> out_parent;
    std::map<std::string, EdgeRef> owner;  // oriented sub-edge -> (piece, edge)
    auto sub_key = [](size_t parent, const Vec& a, const Vec& b) {
        return std::to_string(parent) + "|" + a.x.str() + "," + a.y.str() + "|" +
               b.x.str() + "," + b.y.str();
    };
    for (const Piece& pc : pieces) {
        const Polygon& P = s.polys[pc.parent];
        std::vector<Vec> vs;
        size_t m = pc.verts.size();
        for (size_t i = 0; i < m; ++i) {
            Vec a = pc.verts[i], b = pc.verts[(i + 1) % m];
            vs.push_back(a);
            std::vector<Vec> mids;
            auto maybe = [&](const Vec& pt) {
                if (pt == a || pt == b) return;
                if (!on_segment(a, b, pt)) return;
                for (const Vec& q : mids)
                    if (q == pt) return;
                mids.push_back(pt);
            };
            if (a.y == b.y) {
                auto it = cutx.find(cut_key(pc.parent, a.y));
                if (it != cutx.end())
                    for (const Quad& x : it->second) maybe(Vec(x, a.y));
            }
            for (size_t e = 0; e < P.size(); ++e)
                if (on_segment(P.verts[e], P.verts[(e + 1) % P.size()], a) &&
                    on_segment(P.verts[e], P.verts[(e + 1) % P.size()], b))
                    for (const Vec& pt : edgepts[pc.parent][e]) maybe(pt);
            Vec dir = b - a;
            std::sort(mids.begin(), mids.end(), [&](const Vec& u, const Vec& v) {
                return (dot(u - a, dir) - dot(v - a, dir)).sign() < 0;
            });
            for (const Vec& pt : mids) vs.push_back(pt);
        }
        Polygon q;
        q.verts = std::move(vs);
        q.d = P.d;
        out_parent.push_back(pc.parent);
        out_polys.push_back(std::move(q));
    }
    for (size_t pi = 0; pi < out_polys.size(); ++pi) {
        const Polygon& q = out_polys[pi];
        for (size_t e = 0; e < q.size(); ++e)
            owner[sub_key(out_parent[pi], q.verts[e], q.verts[(e + 1) % q.size()])] =
                EdgeRef{pi, e};
    }

    std::vector<Gluing> out_gl;
    // along original gluings
    for (const Gluing& g : s.gluings) {
        const Polygon& A = s.polys[g.a.poly];
        Vec a0 = A.verts[g.a.edge];
        Vec a1 = A.verts[(g.a.edge + 1) % A.size()];
        std::vector<Vec> pts = edgepts[g.a.poly][g.a.edge];
        bool have0 = false, have1 = false;
        for (const Vec& pt : pts) {
            if (pt == a0) have0 = true;
            if (pt == a1) have1 = true;
        }
        if (!have0) pts.push_back(a0);
        if (!have1) pts.push_back(a1);
        Vec dir = a1 - a0;
        std::sort(pts.begin(), pts.end(), [&](const Vec& u, const Vec& v) {
            return (dot(u - a0, dir) - dot(v - a0, dir)).sign() < 0;
        });
        const Vec& sa = s.shift(g.a.poly, g.a.edge);
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            auto ia = owner.find(sub_key(g.a.poly, pts[i], pts[i + 1]));
            auto ib = owner.find(sub_key(g.b.poly, pts[i + 1] + sa, pts[i] + sa));
            if (ia == owner.end() || ib == owner.end())
                throw Error("InternalError",
                            "unrefined sub-edge on a gluing: " +
                                sub_key(g.a.poly, pts[i], pts[i + 1]) + " / " +
                                sub_key(g.b.poly, pts[i + 1] + sa, pts[i] + sa));
            out_gl.push_back({ia->second, ib->second});
        }
    }
    // along internal cut lines
    for (const auto& [key, xs_const] : cutx) {
        size_t bar = key.find('|');
        size_t p = std::stoul(key.substr(0, bar));
        Quad y = parse_quad(key.substr(bar + 1));
        std::vector<Quad> xs = xs_const;
        std::sort(xs.begin(), xs.end(),
                  [](const Quad& a, const Quad& b) { return (a - b).sign() < 0; });
        for (size_t i = 0; i + 1 < xs.size(); ++i) {
            auto up = owner.find(sub_key(p, Vec(xs[i], y), Vec(xs[i + 1], y)));
            auto dn = owner.find(sub_key(p, Vec(xs[i + 1], y), Vec(xs[i], y)));
            if (up == owner.end() || dn == owner.end()) continue;  // boundary or gap
            out_gl.push_back({up->second, dn->second});
        }
    }

    std::vector<SurfacePoint> mk;
    for (const SurfacePoint& sp : s.marked)
        for (size_t pi = 0; pi < out_polys.size(); ++pi)
            if (out_parent[pi] == sp.poly &&
                locate(out_polys[pi], sp.pos).where != Where::Outside) {
                mk.push_back({pi, sp.pos, sp.label});
                break;
            }

    SlicedSurface res;
    res.surf = TranslationSurface::assemble(std::move(out_polys), std::move(out_gl),
                                            std::move(mk));
    res.parent = std::move(out_parent);
    if (!(res.surf.area2() == s.area2()))
        throw Error("InternalError", "slicing changed the total area");
    return res;
}

// ---------------------------------------------------------------------------
// Central symmetry z -> s - z.  Match polygon 0 against every candidate image
// polygon and alignment, propagate the forced offsets across gluings, and
// verify everything closes up into an involution.

namespace {

struct SymCore {
    std::vector<size_t> sigma;
    std::vector<long long> rot;
    std::vector<Vec> off;
};

std::optional<long long> match_offset(const Polygon& P, const Polygon& Q, const Vec& off) {
    size_t k = P.size();
    if (Q.size() != k) return std::nullopt;
    Vec w0 = off - P.verts[0];
    for (size_t r = 0; r < k; ++r) {
        if (!(Q.verts[r] == w0)) continue;
        bool ok = true;
        for (size_t j = 1; j < k && ok; ++j)
            if (!(Q.verts[(j + r) % k] == off - P.verts[j])) ok = false;
        if (ok) return (long long)r;
    }
    return std::nullopt;
}

std::optional<SymCore> find_symmetry(const TranslationSurface& s) {
    size_t n = s.polys.size();
    const Polygon& P0 = s.polys[0];
    for (size_t q0 = 0; q0 < n; ++q0) {
        if (s.polys[q0].size() != P0.size()) continue;
        for (size_t r0 = 0; r0 < s.polys[q0].size(); ++r0) {
            Vec off0 = s.polys[q0].verts[r0] + P0.verts[0];
            auto rr = match_offset(P0, s.polys[q0], off0);
            if (!rr || (size_t)*rr != r0) continue;
            SymCore core;
            core.sigma.assign(n, SIZE_MAX);
            core.rot.assign(n, 0);
            core.off.assign(n, Vec());
            core.sigma[0] = q0;
            core.rot[0] = *rr;
            core.off[0] = off0;
            std::queue<size_t> bfs;
            bfs.push(0);
            bool good = true;
            while (good && !bfs.empty()) {
                size_t p = bfs.front();
                bfs.pop();
                size_t q = core.sigma[p];
                size_t k = s.polys[p].size();
                for (size_t e = 0; e < k && good; ++e) {
                    size_t ie = (e + (size_t)core.rot[p]) % k;
                    EdgeRef pe = s.partner(p, e);
                    EdgeRef qe = s.partner(q, ie);
                    Vec off1 = core.off[p] - s.shift(pe.poly, pe.edge) + s.shift(q, ie);
                    if (core.sigma[pe.poly] == SIZE_MAX) {
                        auto r1 = match_offset(s.polys[pe.poly], s.polys[qe.poly], off1);
                        if (!r1) {
                            good = false;
                            break;
                        }
                        core.sigma[pe.poly] = qe.poly;
                        core.rot[pe.poly] = *r1;
                        core.off[pe.poly] = off1;
                        bfs.push(pe.poly);
                    } else if (core.sigma[pe.poly] != qe.poly ||
                               !(core.off[pe.poly] == off1)) {
                        good = false;
                    }
                }
            }
            if (good)
                for (size_t p = 0; p < n; ++p)
                    if (core.sigma[p] == SIZE_MAX) good = false;  // disconnected
            if (good)
                for (size_t p = 0; p < n && good; ++p) {
                    size_t q = core.sigma[p];
                    if (core.sigma[q] != p || !(core.off[q] == core.off[p])) good = false;
                }
            if (good) return core;
        }
    }
    return std::nullopt;
}

std::vector<SurfacePoint> symmetry_fixed_points(const TranslationSurface& dom,
                                                const SymCore& core,
                                                const TranslationSurface& orig,
                                                const std::vector<size_t>& parent) {
    std::vector<SurfacePoint> cand;
    size_t n = dom.polys.size();
    for (size_t p = 0; p < n; ++p) {
        if (core.sigma[p] != p) continue;
        Vec z = half(core.off[p]);
        if (locate(dom.polys[p], z).where != Where::Outside) cand.push_back({p, z, ""});
    }
    for (size_t p = 0; p < n; ++p) {
        size_t k = dom.polys[p].size();
        for (size_t e = 0; e < k; ++e) {
            size_t q = core.sigma[p];
            size_t ie = (e + (size_t)core.rot[p]) % k;
            EdgeRef back = dom.partner(q, ie);
            if (!(back.poly == p && back.edge == e)) continue;
            Vec z = half(core.off[p] + dom.shift(q, ie));
            Location l = locate(dom.polys[p], z);
            if (l.where == Where::OnEdge && l.index == e) cand.push_back({p, z, ""});
        }
    }
    std::vector<std::vector<char>> seen(n);
    for (size_t p = 0; p < n; ++p) seen[p].assign(dom.polys[p].size(), 0);
    for (size_t p0 = 0; p0 < n; ++p0)
        for (size_t v0 = 0; v0 < dom.polys[p0].size(); ++v0) {
            if (seen[p0][v0]) continue;
            size_t p = p0, v = v0;
            do {
                seen[p][v] = 1;
                auto nx = corner_ccw(dom, p, v);
                p = nx.first;
                v = nx.second;
            } while (!(p == p0 && v == v0));
            Vec z = dom.polys[p0].verts[v0];
            Vec w = core.off[p0] - z;
            if (dom.same_point({core.sigma[p0], w, ""}, {p0, z, ""}))
                cand.push_back({p0, z, ""});
        }

    std::vector<SurfacePoint> out;
    std::set<std::string> dedup;
    for (const SurfacePoint& c : cand) {
        SurfacePoint cn = orig.canonical({parent[c.poly], c.pos, ""});
        if (dedup.insert(point_key(cn.poly, cn.pos)).second) out.push_back(cn);
    }
    std::sort(out.begin(), out.end(), [](const SurfacePoint& a, const SurfacePoint& b) {
        if (a.poly != b.poly) return a.poly < b.poly;
        return vec_cmp(a.pos, b.pos) < 0;
    });
    for (size_t i = 0; i < out.size(); ++i) out[i].label = "fp" + std::to_string(i + 1);
    return out;
}

// Slice horizontally and vertically (via a quarter turn) into grid cells.
// Needed because an involution can act on a full-cylinder band only modulo
// the circumference wrap; cells small enough are matched exactly.
SlicedSurface slice_grid(const TranslationSurface& s) {
    SlicedSurface h = slice_horizontal(s);
    Mat2 rot{Quad(0), Quad(Rat(-1)), Quad(1), Quad(0)};
    Mat2 inv{Quad(0), Quad(1), Quad(Rat(-1)), Quad(0)};
    SlicedSurface v = slice_horizontal(transform(h.surf, rot));
    SlicedSurface out;
    out.surf = transform(v.surf, inv);
    for (size_t i = 0; i < v.parent.size(); ++i)
        out.parent.push_back(h.parent[v.parent[i]]);
    return out;
}

bool rectilinear(const TranslationSurface& s) {
    for (const Polygon& p : s.polys)
        for (size_t e = 0; e < p.size(); ++e) {
            Vec v = p.side(e);
            if (!v.x.is_zero() && !v.y.is_zero()) return false;
        }
    return true;
}

}  // namespace

CentralSymmetry central_symmetry(const TranslationSurface& s) {
    std::optional<SymCore> core = find_symmetry(s);
    TranslationSurface dom = s;
    std::vector<size_t> parent(s.polys.size());
    for (size_t p = 0; p < parent.size(); ++p) parent[p] = p;
    if (!core && rectilinear(s)) {
        SlicedSurface sl = slice_grid(s);
        core = find_symmetry(sl.surf);
        if (core) {
            dom = std::move(sl.surf);
            parent = std::move(sl.parent);
        }
    }
    if (!core)
        throw Error("NotCentrallySymmetric", "no central symmetry found");
    CentralSymmetry cs;
    cs.fixed_points = symmetry_fixed_points(dom, *core, s, parent);
    cs.domain = std::move(dom);
    cs.parent = std::move(parent);
    cs.sigma = std::move(core->sigma);
    cs.offset = std::move(core->off);
    return cs;
}

std::vector<SurfacePoint> central_symmetry_weierstrass(const TranslationSurface& s) {
    return central_symmetry(s).fixed_points;
}

SurfacePoint apply_symmetry(const TranslationSurface& s, const CentralSymmetry& cs,
                            const SurfacePoint& p) {
    for (size_t dp = 0; dp < cs.domain.polys.size(); ++dp) {
        if (cs.parent[dp] != p.poly) continue;
        if (locate(cs.domain.polys[dp], p.pos).where == Where::Outside) continue;
        Vec img = cs.offset[dp] - p.pos;
        return s.canonical({cs.parent[cs.sigma[dp]], img, p.label});
    }
    throw Error("InvalidPoint", "point not found on the symmetry domain");
}

}  // namespace fb
