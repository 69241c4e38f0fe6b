#pragma once

// Translation surfaces as glued planar polygons.  Everything downstream of a
// polygon's construction chart is translation-equivariant, so cone analysis,
// cylinders, symmetry, and segment search all work in whatever linear chart
// the polygons were built in.

#include "flatblock/polygon.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fb {

struct SurfacePoint {
    size_t poly = 0;
    Vec pos;
    std::string label;
};

struct EdgeRef {
    size_t poly = 0;
    size_t edge = 0;
    friend bool operator==(const EdgeRef& a, const EdgeRef& b) {
        return a.poly == b.poly && a.edge == b.edge;
    }
};

struct Gluing {
    EdgeRef a, b;
};

class TranslationSurface {
public:
    std::vector<Polygon> polys;
    std::vector<Gluing> gluings;
    std::vector<SurfacePoint> marked;
    Int disc = 0;

    // Validates: matching is perfect, glued edges are opposite equal vectors,
    // polygons are counterclockwise with positive area.
    static TranslationSurface assemble(std::vector<Polygon> polys,
                                       std::vector<Gluing> gluings,
                                       std::vector<SurfacePoint> marked = {});

    const EdgeRef& partner(size_t p, size_t e) const { return partner_[p][e]; }
    // add this to a point on edge (p,e) to land on the partner edge
    const Vec& shift(size_t p, size_t e) const { return shift_[p][e]; }

    Quad area2() const;

    // all presentation representatives of a surface point (1 interior,
    // 2 on an edge, one per corner at a vertex)
    std::vector<SurfacePoint> representatives(const SurfacePoint& sp) const;
    SurfacePoint canonical(const SurfacePoint& sp) const;
    bool same_point(const SurfacePoint& a, const SurfacePoint& b) const;

private:
    std::vector<std::vector<EdgeRef>> partner_;
    std::vector<std::vector<Vec>> shift_;
};

// ---------------------------------------------------------------------------
// Cone structure, computed by walking corner cycles and counting the exact
// winding of the boundary-ray sequence (integer multiples of 2pi, no angle
// arithmetic and chart-invariant).

struct ConeClass {
    std::vector<std::pair<size_t, size_t>> corners;  // (poly, vertex)
    long long angle_over_2pi = 1;                    // total angle / 2pi
};

struct ConeAnalysis {
    std::vector<ConeClass> classes;
    long long genus = 0;
    std::vector<long long> stratum;  // orders of the zeros, descending

    bool is_singular(size_t poly, size_t vertex) const;
    const ConeClass& class_of(size_t poly, size_t vertex) const;
};

ConeAnalysis cone_analysis(const TranslationSurface& s);

// Rotate one step around a vertex class: from corner (poly, vert) cross the
// adjacent glued edge counterclockwise / clockwise.
std::pair<size_t, size_t> corner_ccw(const TranslationSurface& s, size_t poly, size_t vert);
std::pair<size_t, size_t> corner_cw(const TranslationSurface& s, size_t poly, size_t vert);

// ---------------------------------------------------------------------------

TranslationSurface build_unfolding(const Polygon& base);
TranslationSurface square_torus();

// Apply a linear map to every polygon and marked point.
TranslationSurface transform(const TranslationSurface& s, const Mat2& m);

// Cut every polygon along horizontal lines through all of its vertex levels
// plus the given extra chords, producing an equivalent presentation made of
// trapezoids.  Chords are (poly, y, x1, x2) with x1 < x2; pieces keep the
// parent polygon's coordinates.
struct Chord {
    size_t poly;
    Quad y, x1, x2;
};
struct SlicedSurface {
    TranslationSurface surf;
    std::vector<size_t> parent;  // piece index -> original polygon index
};
SlicedSurface slice_horizontal(const TranslationSurface& s,
                               const std::vector<Chord>& chords = {});

// ---------------------------------------------------------------------------
// The central symmetry z -> s - z, found by matching polygons pairwise and
// propagating across gluings; falls back to the horizontally sliced
// presentation when no polygon-by-polygon matching exists.

struct CentralSymmetry {
    TranslationSurface domain;   // presentation the maps act on (maybe sliced)
    std::vector<size_t> parent;  // domain polygon -> original polygon
    std::vector<size_t> sigma;   // polygon permutation of the involution
    std::vector<Vec> offset;     // iota on domain polygon p: z -> offset[p] - z
    std::vector<SurfacePoint> fixed_points;  // original coordinates, canonical
};

// Throws NotCentrallySymmetric.  For rectilinear presentations that are not
// symmetric polygon-by-polygon, retries on the horizontal slicing.
CentralSymmetry central_symmetry(const TranslationSurface& s);
std::vector<SurfacePoint> central_symmetry_weierstrass(const TranslationSurface& s);
SurfacePoint apply_symmetry(const TranslationSurface& s, const CentralSymmetry& cs,
                            const SurfacePoint& p);

// ---------------------------------------------------------------------------

struct Cylinder {
    Vec direction;
    Quad circumference, height;  // true lengths when representable
    std::vector<Quad> bottom_lengths, top_lengths;
    Quad modulus() const { return height / circumference; }
};

struct CylinderResult {
    bool periodic = false;
    std::vector<Cylinder> cylinders;
    std::string witness;  // open separatrix report when not periodic
};

CylinderResult cylinder_decomposition(const TranslationSurface& s, const Vec& dir);
bool cylinders_similar(const Cylinder& a, const Cylinder& b);

// ---------------------------------------------------------------------------

struct Segment {
    SurfacePoint start, end;
    Vec holonomy;
    std::vector<std::pair<std::string, Quad>> crossings;  // (probe label, t)
};

// All straight segments from p to q of length at most Lmax whose interior
// avoids cone points and the points p, q themselves.  Sorted by length then
// holonomy.  Node budget from FLATBLOCK_NODE_CAP (default 500000).
std::vector<Segment> segments_between(const TranslationSurface& s,
                                      const SurfacePoint& p, const SurfacePoint& q,
                                      const Quad& lmax,
                                      const std::vector<SurfacePoint>& probes = {},
                                      bool allow_cone_endpoints = false);

}  // namespace fb
