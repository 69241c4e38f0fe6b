#pragma once

// Finite-blocking verdicts: the table-level trichotomy for genus-two
// billiards, the surface-level classification through the hyperelliptic
// involution, and a bounded empirical check by exact segment enumeration.

#include "flatblock/surface.hpp"
#include "flatblock/unfolding.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fb {

struct BlockingVerdict {
    enum class Kind { BlockedSelf, BlockedPair, NotBlocked, AllPairsBlocked };
    Kind kind = Kind::NotBlocked;
    std::vector<size_t> subject_vertices;      // table verdicts: vertex indices
    std::vector<SurfacePoint> subjects;        // surface verdicts: the points
    std::vector<std::string> blocking_set;     // feature descriptors
    std::vector<SurfacePoint> blocking_points; // surface verdicts: the blockers
    std::optional<Segment> witness;            // NotBlocked, when found
    std::string note;
};

// The trichotomy for a genus-two billiard table: (1) not special -> every
// vertex of angle pi/d is blocked from itself; (2) special -> the distinct
// pi/d vertices are blocked from each other by the drawn midpoints;
// (3) special isosceles triangle whose non-repeated angle is pi/d -> that
// vertex is blocked from itself.  A table whose unfolding is a torus cover
// gets the single distinguished AllPairsBlocked verdict.  The quadrilateral
// (1/3, 2/3, 1/2, 1/2) has no pi/d vertex and hence no blocked pairs; it is
// flagged with a note.
std::vector<BlockingVerdict> polygon_blocking(const Polygon& table);

// Genus-two surface with central symmetry: a zero is blocked from nothing; a
// Weierstrass point is blocked from itself by the other five; any other point
// is blocked exactly from its involution image by the six Weierstrass points.
std::vector<BlockingVerdict> surface_blocking(const TranslationSurface& s,
                                              const SurfacePoint& p);

struct VerifyResult {
    bool all_blocked = false;              // every segment <= lmax was crossed
    std::optional<Segment> counterexample; // first uncrossed segment otherwise
};

// Bounded certificate: enumerate all segments p -> q of length <= lmax with
// the blocking set as probes; the first (canonical order) segment with no
// crossings falsifies the blocking claim.  blocking_set must avoid p and q.
VerifyResult verify_blocking(const TranslationSurface& s, const SurfacePoint& p,
                             const SurfacePoint& q,
                             const std::vector<SurfacePoint>& blocking_set,
                             const Quad& lmax);

}  // namespace fb
