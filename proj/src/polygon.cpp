#include "flatblock/polygon.hpp"

namespace fb {

bool Chart::supported(long long d) {
    switch (d) {
        case 1: case 2: case 3: case 4: case 5: case 6: case 8: case 10: case 12:
            return true;
        default:
            return false;
    }
}

Chart::Chart(long long dd) : d(dd) {
    if (!supported(d))
        throw Error("UnsupportedField",
                    "cos(2pi/" + std::to_string(d) + ") is not quadratic");
    switch (d) {
        case 1: c_ = Quad(1); break;
        case 2: c_ = Quad(-1); break;
        case 3: c_ = Quad(Rat(-1, 2)); break;
        case 4: c_ = Quad(0); break;
        case 5: c_ = Quad(Rat(-1, 4), Rat(1, 4), 5); break;
        case 6: c_ = Quad(Rat(1, 2)); break;
        case 8: c_ = Quad(Rat(0), Rat(1, 2), 2); break;
        case 10: c_ = Quad(Rat(1, 4), Rat(1, 4), 5); break;
        case 12: c_ = Quad(Rat(0), Rat(1, 2), 3); break;
    }
    s2_ = Quad(1) - c_ * c_;
    ctab_ = {Quad(1), c_};
    stab_ = {Quad(0), Quad(1)};
}

void Chart::grow(long long j) const {
    while ((long long)ctab_.size() <= j) {
        size_t n = ctab_.size();
        ctab_.push_back(Quad(2) * c_ * ctab_[n - 1] - ctab_[n - 2]);
        stab_.push_back(Quad(2) * c_ * stab_[n - 1] - stab_[n - 2]);
    }
}

Quad Chart::C(long long j) const {
    j = ((j % d) + d) % d;
    grow(j);
    return ctab_[j];
}

Quad Chart::S(long long j) const {
    int s = 1;
    j = ((j % d) + d) % d;
    grow(j);
    Quad v = stab_[j];
    return s < 0 ? -v : v;
}

Vec Chart::direction(long long m) const {
    m = ((m % (2 * d)) + 2 * d) % (2 * d);
    if (m == 0) return Vec(Quad(1), Quad(0));
    if (m == d) return Vec(Quad(-1), Quad(0));
    if (2 * m == d) return Vec(Quad(0), Quad(1));
    if (2 * m == 3 * d) return Vec(Quad(0), Quad(-1));
    // (1 + cos(2m beta), sin(2m beta)/sin(2 beta)) is the chart image of the
    // ray at m*beta scaled by 2cos(m beta); flip when that scale is negative.
    Vec v(Quad(1) + C(m), S(m));
    if (2 * m > d && 2 * m < 3 * d) v = -v;
    return v;
}

Mat2 Chart::rotation(long long t) const {
    if (d <= 2) {
        Mat2 r;
        bool flip = (d == 2) ? (((t % 2) + 2) % 2 == 1) : false;
        if (flip) { r.a = Quad(-1); r.d = Quad(-1); }
        return r;
    }
    Mat2 r;
    r.a = C(t); r.b = -(s2_ * S(t));
    r.c = S(t); r.d = C(t);
    return r;
}

Mat2 Chart::reflection(long long m) const {
    if (d <= 2) {
        bool vert = (d == 2) && (((m % 2) + 2) % 2 == 1);
        Mat2 r;
        if (vert) { r.a = Quad(-1); r.d = Quad(1); }
        else { r.a = Quad(1); r.d = Quad(-1); }
        return r;
    }
    Mat2 r;
    r.a = C(m); r.b = s2_ * S(m);
    r.c = S(m); r.d = -C(m);
    return r;
}

Quad Polygon::area2() const {
    Quad s(0);
    for (size_t i = 0; i < verts.size(); ++i)
        s += cross(verts[i], verts[(i + 1) % verts.size()]);
    return s;
}

long long angle_lcm(const std::vector<Rat>& angles) {
    Int l = 1;
    for (const auto& a : angles) l = boost::multiprecision::lcm(l, a.d);
    if (l > 1000000) throw Error("InvalidPolygon", "angle denominators too large");
    return l.convert_to<long long>();
}

void check_angles(const std::vector<Rat>& angles) {
    if (angles.size() < 3) throw Error("InvalidPolygon", "need at least 3 angles");
    Rat sum(0);
    for (const auto& a : angles) {
        if (a.sign() <= 0 || a >= Rat(2))
            throw Error("InvalidPolygon", "interior angle " + a.str() + "*pi out of range");
        sum += a;
    }
    if (sum != Rat(Int(angles.size()) - 2))
        throw Error("InvalidPolygon", "angle sum is " + sum.str() + "*pi, expected " +
                                          Rat(Int(angles.size()) - 2).str() + "*pi");
}

namespace {

// Does [p1,p2] share any point with [q1,q2]?  Exact.
bool on_segment(const Vec& a, const Vec& b, const Vec& p) {
    if (!cross(b - a, p - a).is_zero()) return false;
    return dot(p - a, b - a).sign() >= 0 && dot(p - b, a - b).sign() >= 0;
}

bool segments_touch(const Vec& p1, const Vec& p2, const Vec& q1, const Vec& q2) {
    int o1 = cross(p2 - p1, q1 - p1).sign();
    int o2 = cross(p2 - p1, q2 - p1).sign();
    int o3 = cross(q2 - q1, p1 - q1).sign();
    int o4 = cross(q2 - q1, p2 - q1).sign();
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;  // proper crossing
    return (o1 == 0 && on_segment(p1, p2, q1)) || (o2 == 0 && on_segment(p1, p2, q2)) ||
           (o3 == 0 && on_segment(q1, q2, p1)) || (o4 == 0 && on_segment(q1, q2, p2));
}

void check_simple(const Polygon& p) {
    size_t k = p.size();
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == k - 1);
            if (adjacent) continue;
            if (segments_touch(p.verts[i], p.verts[(i + 1) % k],
                               p.verts[j], p.verts[(j + 1) % k]))
                throw Error("InvalidPolygon", "boundary self-intersects");
        }
    }
    if (p.area2().sign() <= 0)
        throw Error("InvalidPolygon", "vertices are not counterclockwise");
}

std::vector<long long> turning_sequence(const std::vector<Rat>& angles, long long d,
                                        long long m0) {
    std::vector<long long> m(angles.size());
    m[0] = m0;
    for (size_t i = 1; i < angles.size(); ++i) {
        Rat step = angles[i] * Rat(d);  // integer by construction of d
        m[i] = m[i - 1] + d - step.n.convert_to<long long>();
    }
    return m;
}

}  // namespace

Polygon polygon_from_sides(const std::vector<Rat>& angles,
                           const std::vector<std::optional<Quad>>& scales) {
    check_angles(angles);
    if (scales.size() != angles.size())
        throw Error("InvalidPolygon", "one scale entry per side required");
    Polygon p;
    p.angles = angles;
    p.d = angle_lcm(angles);
    Chart chart(p.d);
    p.side_m = turning_sequence(angles, p.d, 0);

    std::vector<size_t> unknown;
    Vec rhs;  // minus the sum of known side vectors
    std::vector<Vec> dirs(angles.size());
    for (size_t i = 0; i < angles.size(); ++i) {
        dirs[i] = chart.direction(p.side_m[i]);
        if (scales[i]) {
            if (scales[i]->sign() <= 0)
                throw Error("InvalidPolygon", "side scale must be positive");
            rhs -= *scales[i] * dirs[i];
        } else {
            unknown.push_back(i);
        }
    }
    if (unknown.size() != 2)
        throw Error("InvalidPolygon", "exactly two sides must be left free");
    Quad det = cross(dirs[unknown[0]], dirs[unknown[1]]);
    if (det.is_zero())
        throw Error("InvalidPolygon", "free sides are parallel; closure underdetermined");
    Quad l0 = cross(rhs, dirs[unknown[1]]) / det;
    Quad l1 = cross(dirs[unknown[0]], rhs) / det;
    if (l0.sign() <= 0 || l1.sign() <= 0)
        throw Error("InvalidPolygon", "closure forces a non-positive side");

    std::vector<Quad> lam(angles.size());
    for (size_t i = 0; i < angles.size(); ++i) lam[i] = scales[i] ? *scales[i] : Quad(0);
    lam[unknown[0]] = l0;
    lam[unknown[1]] = l1;

    Vec cur(Quad(0), Quad(0));
    for (size_t i = 0; i < angles.size(); ++i) {
        p.verts.push_back(cur);
        cur += lam[i] * dirs[i];
    }
    if (!cur.is_zero()) throw Error("InvalidPolygon", "sides fail to close");
    for (auto& m : p.side_m) m = ((m % (2 * p.d)) + 2 * p.d) % (2 * p.d);
    check_simple(p);
    return p;
}

Polygon polygon_from_vertices(const std::vector<Rat>& angles,
                              const std::vector<Vec>& verts) {
    check_angles(angles);
    if (verts.size() != angles.size())
        throw Error("InvalidPolygon", "vertex/angle count mismatch");
    Polygon p;
    p.angles = angles;
    p.verts = verts;
    p.d = angle_lcm(angles);
    Chart chart(p.d);

    Vec e0 = p.side(0);
    long long m0 = -1;
    for (long long m = 0; m < 2 * p.d; ++m) {
        Vec dir = chart.direction(m);
        if (cross(e0, dir).is_zero() && dot(e0, dir).sign() > 0) { m0 = m; break; }
    }
    if (m0 < 0)
        throw Error("InvalidPolygon", "first side direction is not a multiple of pi/d");
    p.side_m = turning_sequence(angles, p.d, m0);
    for (size_t i = 0; i < p.size(); ++i) {
        Vec e = p.side(i);
        Vec dir = chart.direction(p.side_m[i]);
        if (e.is_zero() || !cross(e, dir).is_zero() || dot(e, dir).sign() <= 0)
            throw Error("InvalidPolygon",
                        "side " + std::to_string(i) + " disagrees with the angle data");
    }
    for (auto& m : p.side_m) m = ((m % (2 * p.d)) + 2 * p.d) % (2 * p.d);
    check_simple(p);
    return p;
}

Polygon triangle(const Rat& a0, const Rat& a1, const Rat& a2, const Quad& base) {
    return polygon_from_sides({a0, a1, a2}, {base, std::nullopt, std::nullopt});
}

Polygon l_hexagon(const Quad& x1, const Quad& x2, const Quad& y1, const Quad& y2) {
    std::vector<Rat> ang = {Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(3, 2), Rat(1, 2), Rat(1, 2)};
    return polygon_from_sides(
        ang, {x1 + x2, y1, x2, y2, std::nullopt, std::nullopt});
}

Location locate(const Polygon& p, const Vec& pt) {
    size_t k = p.size();
    for (size_t i = 0; i < k; ++i)
        if (p.verts[i] == pt) return {Where::AtVertex, i};
    for (size_t i = 0; i < k; ++i) {
        Vec a = p.verts[i], b = p.verts[(i + 1) % k];
        if (cross(b - a, pt - a).is_zero() &&
            dot(pt - a, b - a).sign() > 0 && dot(pt - b, a - b).sign() > 0)
            return {Where::OnEdge, i};
    }
    // horizontal ray cast to +x with exact crossing parity
    int crossings = 0;
    for (size_t i = 0; i < k; ++i) {
        Vec a = p.verts[i], b = p.verts[(i + 1) % k];
        int sa = (a.y - pt.y).sign(), sb = (b.y - pt.y).sign();
        if (sa == sb) continue;
        if (sa == 0 || sb == 0) {
            // count an endpoint on the ray only for the edge leaving upward,
            // so each strict crossing through a vertex is counted once
            if (sa == 0 && sb > 0 && (a.x - pt.x).sign() > 0) ++crossings;
            if (sb == 0 && sa > 0 && (b.x - pt.x).sign() > 0) ++crossings;
            continue;
        }
        // x-coordinate of intersection vs pt.x: sign of cross relative to dy
        Quad num = cross(b - a, pt - a);  // (b-a) x (pt-a)
        int side = num.sign() * (b.y - a.y).sign();
        if (side < 0) ++crossings;
    }
    return {crossings % 2 == 1 ? Where::Interior : Where::Outside, 0};
}

}  // namespace fb
