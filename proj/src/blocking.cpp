#include "flatblock/blocking.hpp"

#include <algorithm>

namespace fb {

namespace {

std::string vec_str(const Vec& v) { return "(" + v.x.str() + ", " + v.y.str() + ")"; }

std::string edge_midpoint_desc(const Polygon& p, size_t e) {
    Vec m = Quad(Rat(1, 2)) * (p.verts[e] + p.verts[(e + 1) % p.size()]);
    return "edge " + std::to_string(e) + " midpoint " + vec_str(m);
}

}  // namespace

std::vector<BlockingVerdict> polygon_blocking(const Polygon& table) {
    ClassifyResult cls = classify_genus2(table.angles);
    if (!cls.family)
        throw Error("NotGenusTwo", "table does not unfold to a genus-two surface");
    if (torus_cover_check(table)) {
        BlockingVerdict v;
        v.kind = BlockingVerdict::Kind::AllPairsBlocked;
        v.note = "unfolding is a torus cover: every pair of points is finitely blocked";
        return {v};
    }

    size_t k = table.size();
    HypVerdict hyp = hyperelliptic_criterion(pillowcase_double(table.angles));
    bool special = hyp.kind == HypKind::Special;
    std::vector<size_t> sharp;  // vertices of angle pi/d
    for (size_t i = 0; i < k; ++i)
        if (table.angles[i] == Rat(1, table.d)) sharp.push_back(i);

    std::vector<BlockingVerdict> out;
    if (!special) {
        for (size_t i : sharp) {
            BlockingVerdict v;
            v.kind = BlockingVerdict::Kind::BlockedSelf;
            v.subject_vertices = {i};
            v.blocking_set = {"images of the other weierstrass points"};
            out.push_back(v);
        }
    } else {
        for (size_t a = 0; a < sharp.size(); ++a)
            for (size_t b = a + 1; b < sharp.size(); ++b) {
                size_t i = sharp[a], j = sharp[b];
                BlockingVerdict v;
                v.kind = BlockingVerdict::Kind::BlockedPair;
                v.subject_vertices = {i, j};
                if ((i + 1) % k == j || (j + 1) % k == i) {
                    size_t e = (i + 1) % k == j ? i : j;  // shared edge
                    v.blocking_set = {edge_midpoint_desc(table, e)};
                    if (k == 4) {
                        size_t opp = (e + 2) % k;
                        v.blocking_set.push_back(edge_midpoint_desc(table, opp));
                    }
                } else {
                    Vec m = Quad(Rat(1, 2)) * (table.verts[i] + table.verts[j]);
                    v.blocking_set = {"face midpoint " + vec_str(m)};
                }
                out.push_back(v);
            }
        if (k == 3) {
            // special isosceles triangle: a non-repeated pi/d angle is
            // blocked from itself through the opposite edge midpoint
            for (size_t i : sharp) {
                if (table.angles[(i + 1) % 3] == table.angles[i] ||
                    table.angles[(i + 2) % 3] == table.angles[i])
                    continue;
                BlockingVerdict v;
                v.kind = BlockingVerdict::Kind::BlockedSelf;
                v.subject_vertices = {i};
                v.blocking_set = {edge_midpoint_desc(table, (i + 1) % 3)};
                out.push_back(v);
            }
        }
    }

    std::vector<Rat> sorted = table.angles;
    std::sort(sorted.begin(), sorted.end());
    if (sorted == std::vector<Rat>{Rat(1, 3), Rat(1, 2), Rat(1, 2), Rat(2, 3)}) {
        BlockingVerdict v;
        v.kind = BlockingVerdict::Kind::NotBlocked;
        v.note = "exceptional quadrilateral: no vertex of angle pi/d, "
                 "no pair of points is finitely blocked";
        out.push_back(v);
    }
    return out;
}

std::vector<BlockingVerdict> surface_blocking(const TranslationSurface& s,
                                              const SurfacePoint& p) {
    ConeAnalysis ca = cone_analysis(s);
    SurfacePoint cp = s.canonical(p);
    Location loc = locate(s.polys[cp.poly], cp.pos);
    if (loc.where == Where::AtVertex && ca.is_singular(cp.poly, loc.index))
        return {};  // a zero is finitely blocked from no point

    CentralSymmetry cs;
    try {
        cs = central_symmetry(s);
    } catch (const Error& e) {
        throw Error("InvolutionUnavailable", e.what());
    }
    std::vector<SurfacePoint> w = central_symmetry_weierstrass(s);
    SurfacePoint ip = apply_symmetry(s, cs, cp);

    BlockingVerdict v;
    if (s.same_point(cp, ip)) {
        v.kind = BlockingVerdict::Kind::BlockedSelf;
        v.subjects = {cp};
        for (const SurfacePoint& fp : w)
            if (!s.same_point(fp, cp)) v.blocking_points.push_back(fp);
    } else {
        v.kind = BlockingVerdict::Kind::BlockedPair;
        v.subjects = {cp, ip};
        v.blocking_points = w;
    }
    for (const SurfacePoint& fp : v.blocking_points)
        v.blocking_set.push_back("weierstrass " + vec_str(fp.pos));
    return {v};
}

VerifyResult verify_blocking(const TranslationSurface& s, const SurfacePoint& p,
                             const SurfacePoint& q,
                             const std::vector<SurfacePoint>& blocking_set,
                             const Quad& lmax) {
    std::vector<SurfacePoint> probes;
    for (size_t i = 0; i < blocking_set.size(); ++i) {
        if (s.same_point(blocking_set[i], p) || s.same_point(blocking_set[i], q))
            throw Error("InvalidBlockingSet", "blocking set must avoid the endpoints");
        SurfacePoint b = blocking_set[i];
        if (b.label.empty()) b.label = "b" + std::to_string(i + 1);
        probes.push_back(b);
    }
    std::vector<Segment> segs = segments_between(s, p, q, lmax, probes, true);
    VerifyResult res;
    for (const Segment& sg : segs)
        if (sg.crossings.empty()) {
            res.counterexample = sg;
            return res;
        }
    res.all_blocked = true;
    return res;
}

}  // namespace fb
