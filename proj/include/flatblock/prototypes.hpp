#pragma once

// McMullen H(2) prototypes: triples (b, c, e) with D = e^2 + 4bc, the spin
// invariant, the L-shaped surface lambda x lambda + b x c, and the Dehn-twist
// permutation action on the five nonsingular Weierstrass points.

#include "flatblock/surface.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fb {

struct PrototypeTriple {
    long long D = 0;
    long long b = 0, c = 0, e = 0;

    Quad lambda() const;  // (e + sqrt(D)) / 2, the square's side
    bool valid() const;
};

// All triples with D = e^2 + 4bc, b,c >= 1, c + e < b, gcd(b,c,e) = 1,
// optionally filtered by spin (requires D = 1 mod 8).
std::vector<PrototypeTriple> enumerate_prototypes(
    long long D, std::optional<int> spin_filter = std::nullopt);

// (e - f)/2 + (c + 1) b mod 2, with f the conductor of D; only for D = 1 mod 8.
std::optional<int> spin_invariant(const PrototypeTriple& t);

// Permutation of the Weierstrass labels {1..5}.
struct Perm5 {
    std::array<int, 5> img{1, 2, 3, 4, 5};  // img[i-1] = image of label i

    int operator()(int i) const { return img[i - 1]; }
    friend bool operator==(const Perm5& a, const Perm5& b) { return a.img == b.img; }
    std::string cycles() const;  // "(12)(45)", "id", ...
};

// Horizontal multitwist acts by (12)^{c'} (45)^{b'} with c'/b' = c/b reduced;
// vertical by (23)^{c''} (14)^{b''} with b''/c'' = (b - c - e)/c reduced.
Perm5 horizontal_twist_perm(const PrototypeTriple& t);
Perm5 vertical_twist_perm(const PrototypeTriple& t);

struct GroupAnalysis {
    bool condition_met = false;  // an odd/odd reduced twist ratio exists
    std::vector<std::vector<int>> orbits;  // of <h, v> on {1..5}, sorted
    std::string conclusion;  // NoDistinctPairBlocked | RequiresGeometricArgument
};

GroupAnalysis blocking_group_analysis(const PrototypeTriple& t);

// The L-shaped prototype surface: square [0,lambda]^2 under the strip
// [0,b] x [lambda, lambda+c], opposite sides identified.  Stratum H(2).
TranslationSurface build_prototype_surface(const PrototypeTriple& t);

// Vertical moduli ratio (b - lambda)(lambda + c) / (c lambda), which the
// relation lambda^2 = e lambda + bc collapses to the rational (b - c - e)/c.
Quad vertical_moduli_ratio(const PrototypeTriple& t);

}  // namespace fb
