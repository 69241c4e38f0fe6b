#include "flatblock/surface.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>

// Straight segments between two marked points.  Candidate holonomies come
// from developing the surface along edge-crossing chains: each chain carries
// the exact cone of directions out of the start point that can still reach
// the current copy, and is pruned once the cone-clipped entry edge leaves the
// disk of radius Lmax.  (Pruning by offset alone does not terminate: on an
// irrational surface the holonomy group is dense in the plane.)  Every
// candidate is then validated by an exact march along the segment, which also
// rejects interior cone points and interior passes through either endpoint,
// and records probe crossings.

namespace fb {

namespace {

long long node_cap() {
    if (const char* e = std::getenv("FLATBLOCK_NODE_CAP")) {
        long long v = std::atoll(e);
        if (v > 0) return v;
    }
    return 500000;
}

bool parallel_pos(const Vec& u, const Vec& v) {
    return cross(u, v).is_zero() && dot(u, v).sign() > 0;
}

bool wedge_strict(const Vec& a, const Vec& b, const Vec& ref) {
    if (parallel_pos(ref, a) || parallel_pos(ref, b)) return false;
    int c = cross(a, b).sign();
    int ca = cross(a, ref).sign(), cb = cross(ref, b).sign();
    if (c > 0) return ca > 0 && cb > 0;
    if (c < 0) return ca > 0 || cb > 0;
    return ca > 0;
}

// corner wedge at (p, v) contains ref, a-ray included, b-ray excluded
bool corner_admits(const Polygon& P, size_t v, const Vec& ref) {
    size_t k = P.size();
    Vec a = P.side(v);
    Vec b = -P.side((v + k - 1) % k);
    return parallel_pos(ref, a) || wedge_strict(a, b, ref);
}

std::pair<size_t, size_t> outgoing_corner(const TranslationSurface& t, size_t p,
                                          size_t v, const Vec& ref) {
    size_t cp = p, cv = v;
    do {
        if (corner_admits(t.polys[cp], cv, ref)) return {cp, cv};
        auto nx = corner_ccw(t, cp, cv);
        cp = nx.first;
        cv = nx.second;
    } while (!(cp == p && cv == v));
    throw Error("InternalError", "no corner admits the segment direction");
}

struct Rep {
    size_t poly;
    Vec pos;
    bool at_vertex;
    size_t vertex;
};

std::vector<Rep> reps_of(const TranslationSurface& s, const SurfacePoint& sp) {
    std::vector<Rep> out;
    for (const SurfacePoint& r : s.representatives(sp)) {
        Rep rep{r.poly, r.pos, false, 0};
        Location loc = locate(s.polys[r.poly], r.pos);
        if (loc.where == Where::AtVertex) {
            rep.at_vertex = true;
            rep.vertex = loc.index;
        }
        out.push_back(rep);
    }
    return out;
}

int vec_lex(const Vec& u, const Vec& v) {
    int c = (u.x - v.x).sign();
    if (c != 0) return c;
    return (u.y - v.y).sign();
}

}  // namespace

std::vector<Segment> segments_between(const TranslationSurface& s,
                                      const SurfacePoint& p, const SurfacePoint& q,
                                      const Quad& lmax,
                                      const std::vector<SurfacePoint>& probes,
                                      bool allow_cone_endpoints) {
    if (lmax.sign() <= 0) throw Error("InvalidLength", "Lmax must be positive");
    ConeAnalysis ca = cone_analysis(s);
    std::vector<Rep> preps = reps_of(s, p), qreps = reps_of(s, q);
    if (!allow_cone_endpoints) {
        for (const Rep& r : preps)
            if (r.at_vertex && ca.is_singular(r.poly, r.vertex))
                throw Error("ConeEndpoint", "start point is a cone point");
        for (const Rep& r : qreps)
            if (r.at_vertex && ca.is_singular(r.poly, r.vertex))
                throw Error("ConeEndpoint", "end point is a cone point");
    }

    long long budget = node_cap();
    auto spend = [&budget]() {
        if (--budget <= 0) throw Error("BudgetExceeded", "segment search node budget");
    };

    Quad cap2 = lmax * lmax;
    Vec start = preps.front().pos;

    std::vector<Vec> holonomies;
    std::set<std::string> hol_seen;
    auto offer = [&](const Vec& h) {
        if (h.is_zero() || !(h.norm2() <= cap2)) return;
        std::string key = h.x.str() + "," + h.y.str();
        if (hol_seen.insert(key).second) holonomies.push_back(h);
    };

    // a cone of directions out of `start`, spanning < pi: cross(u, v) >= 0,
    // degenerate (u parallel v) meaning a single ray
    struct Cone {
        Vec u, v;
    };
    auto in_cone = [](const Cone& c, const Vec& d) {
        int cu = cross(c.u, d).sign();
        if (cu < 0) return false;
        if (cu == 0) return dot(c.u, d).sign() > 0;
        int cv = cross(d, c.v).sign();
        if (cv < 0) return false;
        if (cv == 0) return dot(d, c.v).sign() > 0;
        return true;
    };
    // squared distance from start to the segment a + t (b - a), t in [t0, t1]
    auto seg_dist2 = [&](const Vec& a, const Vec& b, const Quad& t0, const Quad& t1) {
        Vec d = b - a;
        Quad u = d.norm2().is_zero() ? t0 : dot(start - a, d) / d.norm2();
        if (u < t0) u = t0;
        if (u > t1) u = t1;
        return (start - (a + u * d)).norm2();
    };

    struct Node {
        size_t poly;
        Vec off;
        Cone cone;
        bool whole;  // no direction restriction yet (the start copy itself)
        long entry;  // edge we came in through, never crossed back
    };
    std::vector<Node> stack;
    std::set<std::string> seen;
    auto push = [&](Node nd) {
        std::string key = std::to_string(nd.poly) + "|" + nd.off.x.str() + "," +
                          nd.off.y.str() + "|" + nd.cone.u.x.str() + "," +
                          nd.cone.u.y.str() + "|" + nd.cone.v.x.str() + "," +
                          nd.cone.v.y.str() + "|" + std::to_string(nd.entry);
        if (seen.insert(key).second) stack.push_back(std::move(nd));
    };
    for (const Rep& r : preps) {
        Cone all{Vec(Quad(1), Quad(0)), Vec(Quad(1), Quad(0))};
        push({r.poly, start - r.pos, all, true, -1});
    }
    while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        spend();
        for (const Rep& r : qreps) {
            if (r.poly != nd.poly) continue;
            Vec h = r.pos + nd.off - start;
            if (nd.whole || h.is_zero() || in_cone(nd.cone, h)) offer(h);
        }
        const Polygon& P = s.polys[nd.poly];
        for (size_t e = 0; e < P.size(); ++e) {
            if ((long)e == nd.entry) continue;
            Vec a = P.verts[e] + nd.off;
            Vec d = P.side(e);
            Vec noff = nd.off - s.shift(nd.poly, e);
            const EdgeRef& pr = s.partner(nd.poly, e);
            size_t npoly = pr.poly;
            long nentry = (long)pr.edge;
            if (cross(d, start - a).is_zero()) {
                // start lies on the edge's line: only the two along-edge rays
                // can cross it; each reachable piece is a single-ray corridor
                Quad dn = d.norm2();
                Quad ts = dot(start - a, d) / dn;
                for (int dir : {-1, 1}) {
                    Vec ray = dir > 0 ? d : -d;
                    if (!nd.whole && !in_cone(nd.cone, ray)) continue;
                    Quad lo = dir > 0 ? ts : Quad(0), hi = dir > 0 ? Quad(1) : ts;
                    if (lo.sign() < 0) lo = Quad(0);
                    if (hi > Quad(1)) hi = Quad(1);
                    if (!(lo < hi)) continue;
                    if (!(seg_dist2(a, a + d, lo, hi) <= cap2)) continue;
                    push({npoly, noff, Cone{ray, ray}, false, nentry});
                }
                continue;
            }
            // clip [0,1] to the part of the edge visible inside the cone
            Quad lo(0), hi(1);
            if (!nd.whole) {
                for (int side : {0, 1}) {
                    Vec w = side == 0 ? nd.cone.u : -nd.cone.v;
                    // require cross(w, p(t) - start) >= 0 (<= for the v side)
                    Quad c0 = cross(w, a - start), c1 = cross(w, d);
                    if (c1.is_zero()) {
                        if (c0.sign() < 0) lo = Quad(2);
                    } else {
                        Quad tc = -c0 / c1;
                        if (c1.sign() > 0) {
                            if (tc > lo) lo = tc;
                        } else if (tc < hi) {
                            hi = tc;
                        }
                    }
                }
            }
            if (!(lo < hi)) continue;
            // the clipped piece must point away from start on both ends
            Vec pl = a + lo * d - start, ph = a + hi * d - start;
            if (!nd.whole) {
                if (!in_cone(nd.cone, pl) && !in_cone(nd.cone, ph)) continue;
            }
            if (pl.is_zero() || ph.is_zero()) continue;
            if (!(seg_dist2(a, a + d, lo, hi) <= cap2)) continue;
            Cone nc{pl, ph};
            if (cross(nc.u, nc.v).sign() < 0) std::swap(nc.u, nc.v);
            push({npoly, noff, nc, false, nentry});
        }
    }

    std::sort(holonomies.begin(), holonomies.end(), [](const Vec& a, const Vec& b) {
        int c = (a.norm2() - b.norm2()).sign();
        if (c != 0) return c < 0;
        return vec_lex(a, b) < 0;
    });

    // march the segment with holonomy h out of one start representative
    auto validate_from = [&](const Rep* use, const Vec& h, Segment& out) -> bool {
        size_t poly = use->poly;
        Vec x = use->pos;
        Quad h2 = h.norm2();
        Quad tbase(0);
        std::set<std::pair<std::string, std::string>> cross_seen;
        std::vector<std::pair<std::string, Quad>> crossings;
        Vec rem = h;

        auto scan_subsegment = [&](const Vec& z) -> bool {
            // probe crossings and forbidden interior passes on [x, z]
            auto on_sub = [&](const Vec& y, Quad& t) {
                if (!cross(rem, y - x).is_zero()) return false;
                Quad d = dot(y - x, rem);
                if (d.sign() < 0 || d > dot(z - x, rem)) return false;
                t = tbase + dot(y - x, h) / h2;
                return t.sign() > 0 && (t - Quad(1)).sign() < 0;
            };
            for (const SurfacePoint& pb : probes)
                for (const SurfacePoint& r : s.representatives(pb)) {
                    if (r.poly != poly) continue;
                    Quad t;
                    if (on_sub(r.pos, t) &&
                        cross_seen.insert({pb.label, t.str()}).second)
                        crossings.push_back({pb.label, t});
                }
            for (const std::vector<Rep>* ends : {&preps, &qreps})
                for (const Rep& r : *ends) {
                    if (r.poly != poly) continue;
                    Quad t;
                    if (on_sub(r.pos, t)) return false;  // interior hit of p or q
                }
            return true;
        };

        for (;;) {
            spend();
            const Polygon& P = s.polys[poly];
            size_t k = P.size();
            // first boundary hit of x + t rem, t > 0
            bool found = false;
            Quad tmin(0);
            size_t emin = 0;
            auto consider = [&](const Quad& t, size_t e) {
                if (t.sign() <= 0) return;
                if (found && t >= tmin) return;
                tmin = t;
                emin = e;
                found = true;
            };
            for (size_t e = 0; e < k; ++e) {
                Vec a = P.verts[e];
                Vec d = P.side(e);
                Quad den = cross(rem, d);
                if (den.is_zero()) {
                    if (!cross(rem, a - x).is_zero()) continue;
                    consider(dot(a - x, rem) / rem.norm2(), e);
                    consider(dot(a + d - x, rem) / rem.norm2(), e);
                } else {
                    Quad u = cross(a - x, rem) / den;
                    if (u.sign() < 0 || (u - Quad(1)).sign() > 0) continue;
                    consider(cross(a - x, d) / den, e);
                }
            }
            if (!found || tmin >= Quad(1)) {
                // segment ends inside this polygon (or exactly on its boundary)
                Vec z = x + rem;
                if (locate(P, z).where == Where::Outside) return false;
                if (!scan_subsegment(z)) return false;
                if (!s.same_point({poly, z, ""}, q)) return false;
                out.end = {poly, z, q.label};
                break;
            }
            Vec z = x + tmin * rem;
            if (!scan_subsegment(z)) return false;
            bool at_vertex = false;
            size_t vz = 0;
            for (size_t v = 0; v < k; ++v)
                if (P.verts[v] == z) {
                    at_vertex = true;
                    vz = v;
                    break;
                }
            Quad used = dot(z - x, h) / h2;
            tbase += used;
            rem = rem - (z - x);
            if (at_vertex) {
                if (ca.is_singular(poly, vz)) return false;  // interior cone point
                auto oc = outgoing_corner(s, poly, vz, rem);
                x = s.polys[oc.first].verts[oc.second];
                poly = oc.first;
            } else {
                x = z + s.shift(poly, emin);
                poly = s.partner(poly, emin).poly;
            }
        }

        std::sort(crossings.begin(), crossings.end(),
                  [](const auto& a, const auto& b) {
                      int c = (a.second - b.second).sign();
                      if (c != 0) return c < 0;
                      return a.first < b.first;
                  });
        out.start = {use->poly, use->pos, p.label};
        out.holonomy = h;
        out.crossings = std::move(crossings);
        return true;
    };

    // a cone-point start has several corners admitting the same direction
    // (one per sheet); any validating sheet makes the holonomy a segment
    auto admitting = [&](const Vec& h) {
        std::vector<const Rep*> out;
        for (const Rep& r : preps) {
            const Polygon& P = s.polys[r.poly];
            Location loc = locate(P, r.pos);
            if (loc.where == Where::Interior ||
                (loc.where == Where::AtVertex && corner_admits(P, loc.index, h)) ||
                (loc.where == Where::OnEdge &&
                 cross(P.side(loc.index), h).sign() >= 0))
                out.push_back(&r);
        }
        return out;
    };

    std::vector<Segment> result;
    for (const Vec& h : holonomies) {
        Segment seg;
        for (const Rep* r : admitting(h))
            if (validate_from(r, h, seg)) {
                result.push_back(std::move(seg));
                break;
            }
    }
    return result;
}

}  // namespace fb
