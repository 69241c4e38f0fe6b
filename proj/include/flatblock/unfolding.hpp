#pragma once

// Pillowcase doubles, unfolding genus, the hyperelliptic trichotomy, and the
// genus-two billiard classification.  Angles of billiard tables are rational
// multiples of pi; cone angles of the doubled sphere are multiples of 2pi.
// Both are carried as plain Rat values in their own unit.

#include "flatblock/polygon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fb {

// Dihedral group of order 2d, element encoded s*d + t: rotation by 2t pi/d,
// composed with a reflection when s = 1.
inline long long dihedral_mul(long long e1, long long e2, long long d) {
    long long s1 = e1 / d, t1 = e1 % d;
    long long s2 = e2 / d, t2 = e2 % d;
    long long t = s1 == 0 ? t1 + t2 : t1 - t2;
    t = ((t % d) + d) % d;
    return (s1 ^ s2) * d + t;
}

struct Cone {
    Rat angle;            // cone angle / 2pi, reduced
    long long mult = 1;
};

struct SphereConeData {
    std::vector<Cone> cones;  // aggregated, sorted by angle
    long long d = 1;          // lcm of reduced denominators
    long long points() const;
};

// Aggregates and checks flat-sphere Gauss-Bonnet: sum of angles = (n-2) 2pi.
SphereConeData make_cone_data(std::vector<Rat> values);

SphereConeData pillowcase_double(const std::vector<Rat>& billiard_angles);

// Genus of the degree-d canonical cover of the sphere differential.
long long genus_from_cone(const SphereConeData& cone);

// Genus of the canonical unfolding: closed form 1 + (d/2)(k - 2 - sum 1/b_i).
long long unfolding_genus(const std::vector<Rat>& billiard_angles);

// Independent oracle: assemble the 2d-copy unfolding complex abstractly (group
// multiplication gluing), walk its corner classes, and apply Gauss-Bonnet to
// the summed corner angles.  Works for every d, no coordinates involved.
long long unfolding_genus_oracle(const std::vector<Rat>& billiard_angles);

enum class HypKind { DeckInvolution, Special, NotHyperelliptic };

struct HypVerdict {
    HypKind kind = HypKind::NotHyperelliptic;
    std::string witness;            // matched pattern and parameters
    bool readings_disagree = false; // three-point pattern parity bookkeeping
};

HypVerdict hyperelliptic_criterion(const SphereConeData& cone);

struct Genus2Family {
    int row;                  // 1..7, order of the classification table
    long long n;              // parameter value, 0 when the row has none
    std::string family;       // e.g. "(1/n,(n-1)/n,1/2,1/2), n=3"
    std::string orbit_closure;
};

struct ClassifyResult {
    long long genus;
    std::optional<Genus2Family> family;  // nullopt = NotGenusTwo
};

ClassifyResult classify_genus2(const std::vector<Rat>& angles);

// Arithmeticity: k=6 needs both side ratios rational, k=4 the base split
// ratio, k=3 holds only for the (1/6,1/6,2/3) triangle.
bool torus_cover_check(const Polygon& p);

}  // namespace fb
