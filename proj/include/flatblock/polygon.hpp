#pragma once

// Polygons with angles that are rational multiples of pi, drawn in the
// "sheared chart" (x, y) -> (x, y / sin(2pi/d)).  In that chart every element
// of the dihedral group of order 2d has entries in Q(cos(2pi/d)), which is a
// rational or quadratic field whenever phi(d) <= 4.  All geometry downstream
// (gluings, cylinders, blocking segments) happens in this chart.

#include "flatblock/exactnum.hpp"

#include <optional>
#include <vector>

namespace fb {

struct Mat2 {
    Quad a{1}, b{0}, c{0}, d{1};  // row-major [[a, b], [c, d]]

    Vec apply(const Vec& v) const { return Vec(a * v.x + b * v.y, c * v.x + d * v.y); }
    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        Mat2 r;
        r.a = m.a * n.a + m.b * n.c; r.b = m.a * n.b + m.b * n.d;
        r.c = m.c * n.a + m.d * n.c; r.d = m.c * n.b + m.d * n.d;
        return r;
    }
    friend bool operator==(const Mat2& m, const Mat2& n) {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }
    Quad det() const { return a * d - b * c; }
};

// Chart for the dihedral group of order 2d.  Angle unit is beta = pi/d; the
// chart is the identity for d <= 2 (and happens to be for d = 4).
class Chart {
public:
    long long d = 1;

    static bool supported(long long d);
    explicit Chart(long long d);  // throws UnsupportedField

    // cos(2j pi / d) and sin(2j pi / d) / sin(2 pi / d), any integer j
    Quad C(long long j) const;
    Quad S(long long j) const;
    Quad cos2pi() const { return c_; }
    Quad sin2_sq() const { return s2_; }  // sin^2(2 pi / d)

    // canonical chart direction of the true ray at angle m * pi / d;
    // axis-aligned cases are unit vectors, others have positive scale
    Vec direction(long long m) const;

    Mat2 rotation(long long t) const;    // true rotation by 2t pi / d, in chart
    Mat2 reflection(long long m) const;  // reflection across line at m pi / d, in chart

private:
    Quad c_;   // cos(2 pi / d)
    Quad s2_;  // 1 - c^2
    mutable std::vector<Quad> ctab_, stab_;
    void grow(long long j) const;
};

struct Polygon {
    std::vector<Rat> angles;         // interior angles, multiples of pi, CCW order
    std::vector<Vec> verts;          // chart coordinates; verts[i] carries angles[i]
    long long d = 1;                 // lcm of angle denominators
    std::vector<long long> side_m;   // direction index (unit pi/d) of side i -> i+1

    size_t size() const { return verts.size(); }  // angles may be absent on raw pieces
    Vec side(size_t i) const { return verts[(i + 1) % verts.size()] - verts[i]; }
    Quad area2() const;              // twice the signed chart area
};

long long angle_lcm(const std::vector<Rat>& angles);
void check_angles(const std::vector<Rat>& angles);  // range + sum = (k-2) pi

// Build from angles plus side scales; exactly two entries must be nullopt and
// are solved from the closure condition.  A scale lambda means the side vector
// is lambda * direction(m); for horizontal sides lambda is the true length.
Polygon polygon_from_sides(const std::vector<Rat>& angles,
                           const std::vector<std::optional<Quad>>& scales);

// Validate explicit chart vertices against the angles (directions must walk
// the dihedral turning sequence) and simplicity; fills side_m.
Polygon polygon_from_vertices(const std::vector<Rat>& angles,
                              const std::vector<Vec>& verts);

// Convenience builders used throughout.
Polygon triangle(const Rat& a0, const Rat& a1, const Rat& a2, const Quad& base);
Polygon l_hexagon(const Quad& x1, const Quad& x2, const Quad& y1, const Quad& y2);

enum class Where { Outside, Interior, OnEdge, AtVertex };
struct Location {
    Where where;
    size_t index = 0;  // edge or vertex index when applicable
};
Location locate(const Polygon& p, const Vec& pt);

}  // namespace fb
