#include "flatblock/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>

// Cylinder decomposition.  Rotate the surface so the direction is horizontal,
// trace every rightward separatrix exactly (NotPeriodic when the step budget
// runs out), slice along the traced spine, and merge the slices that are not
// separated by it.  All comparisons stay exact.

namespace fb {

namespace {

const long long kTraceBudget = 100000;

bool parallel_pos(const Vec& u, const Vec& v) {
    return cross(u, v).is_zero() && dot(u, v).sign() > 0;
}

// ref inside the open wedge from a counterclockwise to b (neither ray).
bool wedge_strict(const Vec& a, const Vec& b, const Vec& ref) {
    if (parallel_pos(ref, a) || parallel_pos(ref, b)) return false;
    int c = cross(a, b).sign();
    int ca = cross(a, ref).sign(), cb = cross(ref, b).sign();
    if (c > 0) return ca > 0 && cb > 0;
    if (c < 0) return ca > 0 || cb > 0;
    return ca > 0;
}

void add_chord(std::vector<Chord>& chords, size_t poly, const Quad& y, Quad x1,
               Quad x2) {
    if ((x2 - x1).sign() < 0) std::swap(x1, x2);
    if (x1 == x2) return;
    for (const Chord& c : chords)
        if (c.poly == poly && c.y == y && c.x1 == x1 && c.x2 == x2) return;
    chords.push_back({poly, y, x1, x2});
}

// Outgoing corner of the vertex class of (p, v) whose half-open wedge
// [side, -prev side) contains the rightward direction.
std::pair<size_t, size_t> outgoing_corner(const TranslationSurface& t, size_t p,
                                          size_t v) {
    const Vec right(Quad(1), Quad(0));
    size_t cp = p, cv = v;
    do {
        const Polygon& P = t.polys[cp];
        size_t k = P.size();
        Vec a = P.side(cv);
        Vec b = -P.side((cv + k - 1) % k);
        if (parallel_pos(right, a) || wedge_strict(a, b, right)) return {cp, cv};
        auto nx = corner_ccw(t, cp, cv);
        cp = nx.first;
        cv = nx.second;
    } while (!(cp == p && cv == v));
    throw Error("InternalError", "no outgoing corner for the rightward direction");
}

// First boundary hit of the rightward ray from x (strictly right of x).
struct Hit {
    Vec point;
    size_t edge = 0;
    bool at_vertex = false;
    size_t vertex = 0;
};

Hit first_hit(const Polygon& P, const Vec& x) {
    bool found = false;
    Hit best;
    auto consider = [&](const Quad& hx, size_t e) {
        if ((hx - x.x).sign() <= 0) return;
        if (found && (hx - best.point.x).sign() >= 0) return;
        best.point = Vec(hx, x.y);
        best.edge = e;
        found = true;
    };
    size_t k = P.size();
    for (size_t e = 0; e < k; ++e) {
        Vec a = P.verts[e], b = P.verts[(e + 1) % k];
        if (a.y == b.y) {
            if (!(a.y == x.y)) continue;
            consider(a.x, e);
            consider(b.x, e);
        } else {
            Quad ymin = a.y < b.y ? a.y : b.y;
            Quad ymax = a.y < b.y ? b.y : a.y;
            if (!(ymin <= x.y && x.y <= ymax)) continue;
            consider(a.x + (b.x - a.x) * ((x.y - a.y) / (b.y - a.y)), e);
        }
    }
    if (!found) throw Error("InternalError", "rightward ray escapes its polygon");
    for (size_t v = 0; v < k; ++v)
        if (P.verts[v] == best.point) {
            best.at_vertex = true;
            best.vertex = v;
            break;
        }
    return best;
}

// Trace the rightward leaf leaving the corner (p0, v0).  Ends at a singular
// vertex, or at the stop point when one is given (closed-leaf search on
// surfaces without cone points).  False when the budget runs out.
bool trace_right(const TranslationSurface& t, const ConeAnalysis& ca, size_t p0,
                 size_t v0, std::vector<Chord>& chords, long long& budget,
                 const SurfacePoint* stop) {
    size_t p = p0, v = v0;
    bool first = true;
    for (;;) {
        if (--budget <= 0) return false;
        const Polygon& P = t.polys[p];
        if (parallel_pos(P.side(v), Vec(Quad(1), Quad(0)))) {
            // run along the edge (p, v); both sides of it lie on the spine
            size_t k = P.size();
            Vec u = P.verts[v], w = P.verts[(v + 1) % k];
            add_chord(chords, p, u.y, u.x, w.x);
            EdgeRef pr = t.partner(p, v);
            Vec sh = t.shift(p, v);
            add_chord(chords, pr.poly, (u + sh).y, (u + sh).x, (w + sh).x);
            p = p;
            v = (v + 1) % k;
        } else {
            // march through polygon interiors until a vertex stops us
            Vec x = P.verts[v];
            size_t mp = p;
            for (;;) {
                if (--budget <= 0) return false;
                Hit h = first_hit(t.polys[mp], x);
                add_chord(chords, mp, x.y, x.x, h.point.x);
                if (h.at_vertex) {
                    p = mp;
                    v = h.vertex;
                    break;
                }
                x = h.point + t.shift(mp, h.edge);
                mp = t.partner(mp, h.edge).poly;
            }
        }
        // arrived at vertex (p, v) moving rightward
        if (!first || !(p == p0 && v == v0)) {
            if (stop &&
                t.same_point(*stop, {p, t.polys[p].verts[v], ""}))
                return true;
            if (ca.is_singular(p, v)) return true;
        }
        first = false;
        auto oc = outgoing_corner(t, p, v);
        p = oc.first;
        v = oc.second;
    }
}

struct IntervalSet {
    std::vector<std::pair<Quad, Quad>> iv;  // merged, sorted
    void build(std::vector<std::pair<Quad, Quad>> raw) {
        std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
            return (a.first - b.first).sign() < 0;
        });
        for (auto& r : raw) {
            if (!iv.empty() && (r.first - iv.back().second).sign() <= 0) {
                if ((r.second - iv.back().second).sign() > 0) iv.back().second = r.second;
            } else
                iv.push_back(r);
        }
    }
    bool covers(const Quad& lo, const Quad& hi) const {
        for (const auto& r : iv)
            if (r.first <= lo && hi <= r.second) return true;
        return false;
    }
};

struct Dsu {
    std::vector<size_t> up;
    explicit Dsu(size_t n) : up(n) { std::iota(up.begin(), up.end(), size_t(0)); }
    size_t find(size_t x) { return up[x] == x ? x : up[x] = find(up[x]); }
    void join(size_t a, size_t b) { up[find(a)] = find(b); }
};

int quad_cmp(const Quad& a, const Quad& b) { return (a - b).sign(); }

int list_cmp(const std::vector<Quad>& a, const std::vector<Quad>& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = quad_cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
}

std::vector<Quad> min_rotation(std::vector<Quad> v) {
    if (v.empty()) return v;
    std::vector<Quad> best = v;
    for (size_t r = 1; r < v.size(); ++r) {
        std::rotate(v.begin(), v.begin() + 1, v.end());
        if (list_cmp(v, best) < 0) best = v;
    }
    return best;
}

// Follow the boundary of a cylinder along horizontal sub-edges: from the end
// of one sub-edge, rotate clockwise around the junction until the next edge
// pointing the same way appears.  Returns the merged saddle-connection
// lengths, canonically rotated.
std::vector<Quad> boundary_lengths(const TranslationSurface& t, const ConeAnalysis& ca,
                                   size_t piece, size_t edge) {
    Vec target = t.polys[piece].side(edge);
    std::vector<Quad> lens;
    std::vector<char> sing;
    size_t p = piece, e = edge;
    size_t guard = 0, total = 0;
    for (const Polygon& q : t.polys) total += q.size();
    do {
        const Polygon& P = t.polys[p];
        Quad w = P.side(e).x;
        lens.push_back(w.sign() < 0 ? -w : w);
        size_t v = (e + 1) % P.size();
        sing.push_back(ca.is_singular(p, v) ? 1 : 0);
        size_t cp = p, cv = v;
        size_t inner = 0;
        while (!parallel_pos(t.polys[cp].side(cv), target)) {
            auto nx = corner_cw(t, cp, cv);
            cp = nx.first;
            cv = nx.second;
            if (++inner > total) throw Error("InternalError", "boundary walk stuck");
        }
        p = cp;
        e = cv;
        if (++guard > total) throw Error("InternalError", "boundary walk does not close");
    } while (!(p == piece && e == edge));

    size_t n = lens.size();
    bool any_sing = std::find(sing.begin(), sing.end(), 1) != sing.end();
    if (!any_sing) {
        Quad s(0);
        for (const Quad& l : lens) s += l;
        return {s};
    }
    // start right after a singular junction, then merge runs between them
    size_t start = 0;
    while (sing[start] == 0) ++start;
    start = (start + 1) % n;
    std::vector<Quad> merged;
    Quad acc(0);
    for (size_t i = 0; i < n; ++i) {
        size_t j = (start + i) % n;
        acc += lens[j];
        if (sing[j]) {
            merged.push_back(acc);
            acc = Quad(0);
        }
    }
    return min_rotation(merged);
}

}  // namespace

CylinderResult cylinder_decomposition(const TranslationSurface& s, const Vec& dir) {
    if (dir.is_zero()) throw Error("InvalidDirection", "zero direction");
    Mat2 frame{dir.x, dir.y, -dir.y, dir.x};
    TranslationSurface t = transform(s, frame);
    ConeAnalysis ca = cone_analysis(t);
    const Vec right(Quad(1), Quad(0));

    std::vector<Chord> chords;
    long long budget = kTraceBudget;
    CylinderResult res;

    bool has_cone = !ca.stratum.empty();
    if (has_cone) {
        for (const ConeClass& cls : ca.classes) {
            if (cls.angle_over_2pi <= 1) continue;
            for (const auto& [p, v] : cls.corners) {
                const Polygon& P = t.polys[p];
                size_t k = P.size();
                Vec a = P.side(v);
                Vec b = -P.side((v + k - 1) % k);
                if (!(parallel_pos(right, a) || wedge_strict(a, b, right))) continue;
                if (!trace_right(t, ca, p, v, chords, budget, nullptr)) {
                    res.periodic = false;
                    res.witness = "open separatrix from polygon " + std::to_string(p) +
                                  " vertex " + std::to_string(v) +
                                  " exceeded the step budget";
                    return res;
                }
            }
        }
    } else {
        // no cone points: a single leaf through a marked vertex decides
        auto [p, v] = outgoing_corner(t, ca.classes[0].corners[0].first,
                                      ca.classes[0].corners[0].second);
        SurfacePoint start{p, t.polys[p].verts[v], ""};
        if (!trace_right(t, ca, p, v, chords, budget, &start)) {
            res.periodic = false;
            res.witness = "leaf from polygon " + std::to_string(p) + " vertex " +
                          std::to_string(v) + " did not close within the step budget";
            return res;
        }
    }

    SlicedSurface sl = slice_horizontal(t, chords);
    ConeAnalysis sca = cone_analysis(sl.surf);

    // interval sets of the spine, per (parent polygon, level)
    std::map<std::string, IntervalSet> spine;
    {
        std::map<std::string, std::vector<std::pair<Quad, Quad>>> raw;
        for (const Chord& c : chords)
            raw[std::to_string(c.poly) + "|" + c.y.str()].push_back({c.x1, c.x2});
        for (auto& [k, v] : raw) spine[k].build(std::move(v));
    }
    auto on_spine = [&](size_t piece, size_t e) {
        const Polygon& P = sl.surf.polys[piece];
        Vec u = P.verts[e], w = P.verts[(e + 1) % P.size()];
        if (!(u.y == w.y)) return false;
        auto it = spine.find(std::to_string(sl.parent[piece]) + "|" + u.y.str());
        if (it == spine.end()) return false;
        Quad lo = u.x < w.x ? u.x : w.x;
        Quad hi = u.x < w.x ? w.x : u.x;
        return it->second.covers(lo, hi);
    };

    Dsu dsu(sl.surf.polys.size());
    for (const Gluing& g : sl.surf.gluings)
        if (!on_spine(g.a.poly, g.a.edge)) dsu.join(g.a.poly, g.b.poly);

    // conversion from the rotated frame back to surface lengths: the frame
    // scales the direction by sqrt(dir . dir); undo it when representable
    Quad n = dir.norm2();
    Quad factor(1);
    if (!(n == Quad(1)) && n.is_rational()) factor = rat_sqrt(n.a).inverse();

    std::map<size_t, std::vector<size_t>> groups;
    for (size_t p = 0; p < sl.surf.polys.size(); ++p) groups[dsu.find(p)].push_back(p);

    for (const auto& [root, members] : groups) {
        Cylinder cyl;
        cyl.direction = dir;
        Quad area2(0);
        Quad circ(0);
        std::pair<size_t, size_t> bottom_start{SIZE_MAX, SIZE_MAX};
        std::pair<size_t, size_t> top_start{SIZE_MAX, SIZE_MAX};
        for (size_t p : members) {
            const Polygon& P = sl.surf.polys[p];
            area2 += P.area2();
            for (size_t e = 0; e < P.size(); ++e) {
                Vec sd = P.side(e);
                if (!sd.y.is_zero() || !on_spine(p, e)) continue;
                if (sd.x.sign() > 0) {
                    circ += sd.x;
                    bottom_start = std::min(bottom_start, {p, e});
                } else {
                    top_start = std::min(top_start, {p, e});
                }
            }
        }
        if (circ.sign() <= 0 || bottom_start.first == SIZE_MAX ||
            top_start.first == SIZE_MAX)
            throw Error("InternalError", "cylinder without spine boundary");
        cyl.circumference = circ * factor;
        cyl.height = (area2 / (Quad(2) * circ)) * factor;
        cyl.bottom_lengths =
            boundary_lengths(sl.surf, sca, bottom_start.first, bottom_start.second);
        cyl.top_lengths =
            boundary_lengths(sl.surf, sca, top_start.first, top_start.second);
        for (Quad& q : cyl.bottom_lengths) q *= factor;
        for (Quad& q : cyl.top_lengths) q *= factor;
        res.cylinders.push_back(std::move(cyl));
    }

    std::sort(res.cylinders.begin(), res.cylinders.end(),
              [](const Cylinder& a, const Cylinder& b) {
                  int c = quad_cmp(a.circumference, b.circumference);
                  if (c != 0) return c < 0;
                  c = quad_cmp(a.height, b.height);
                  if (c != 0) return c < 0;
                  return list_cmp(a.bottom_lengths, b.bottom_lengths) < 0;
              });
    res.periodic = true;
    return res;
}

bool cylinders_similar(const Cylinder& a, const Cylinder& b) {
    if (a.bottom_lengths.size() != b.bottom_lengths.size() ||
        a.top_lengths.size() != b.top_lengths.size())
        return false;
    Quad lambda = b.circumference / a.circumference;
    if (lambda.sign() <= 0) return false;
    if (!(b.height == lambda * a.height)) return false;
    for (size_t i = 0; i < a.bottom_lengths.size(); ++i)
        if (!(b.bottom_lengths[i] == lambda * a.bottom_lengths[i])) return false;
    for (size_t i = 0; i < a.top_lengths.size(); ++i)
        if (!(b.top_lengths[i] == lambda * a.top_lengths[i])) return false;
    return true;
}

}  // namespace fb
