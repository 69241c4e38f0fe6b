#pragma once

// The golden-tetromino rel-flow family over Q(sqrt 5): exact surfaces at
// parameter t, decagon membership, golden-point tracking, and the M0
// staircase family with its periodic-point elimination.

#include "flatblock/surface.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fb {

Quad golden_ratio();  // (1 + sqrt 5) / 2

// Three stacked rows of widths 1, phi^2, phi (heights 1, phi^2, 2 phi),
// opposite sides identified; genus 2, H(1,1), horizontal moduli (1, 1, 2).
TranslationSurface golden_tetromino();

struct RelFlowState {
    Quad t;
    TranslationSurface surface;
    std::vector<SurfacePoint> tracked;  // z1, z2, w1..w6, golden1, golden2
};

// t rho . (X, omega): heights become (1 - t, phi^2 + t, 2 phi - t) while all
// circumferences and real parts stay fixed.  t in (-phi^2, 1).
RelFlowState rel_flow(const Quad& t);

// The surface lies in the decagon locus iff the top and bottom moduli satisfy
// 2 (1 - t) = 2 - t / phi, i.e. t = 0.
bool decagon_membership(const Quad& t);

// The two golden points: on the vertical line x = 1 inside the bottom
// cylinder, at distance phi (1 - t) from their zeros; they coincide with the
// Weierstrass point w2 at t = 0 and are swapped by the involution.
std::pair<SurfacePoint, SurfacePoint> golden_points(const RelFlowState& state);

// Staircase surface of the M0 family, lambda = phi: widths
// (phi x1, (phi-1) x2, x2, x1), heights (phi y1, phi y2, y2, y1).
TranslationSurface m0_surface(const Quad& x1, const Quad& x2, const Quad& y1,
                              const Quad& y2);

struct M0Candidates {
    std::vector<SurfacePoint> candidates;    // 6; first three the bottom orbit
    std::vector<SurfacePoint> twist_images;  // after one full twist in V2
    std::vector<size_t> eliminated;          // candidates whose image left the set
    std::string verdict;                     // "NoPeriodicPoints"
};

// The candidate periodic points of the staircase (cylinder-interior symmetric
// positions) and their elimination by one complete Dehn twist in the second
// vertical equivalence class.
M0Candidates periodic_point_candidates_m0(const TranslationSurface& s);

}  // namespace fb
