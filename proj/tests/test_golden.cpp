#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatblock/golden.hpp"

using namespace fb;

static Quad Q(long long n, long long d = 1) { return Quad(Rat(n, d)); }

TEST_CASE("golden tetromino basics") {
    Quad phi = golden_ratio();
    CHECK(phi * phi == phi + Q(1));
    TranslationSurface s = golden_tetromino();
    Quad p2 = phi + Q(1);
    CHECK(s.area2() == Q(2) * (Q(1) + p2 * p2 + Q(2) * phi * phi));
    ConeAnalysis ca = cone_analysis(s);
    CHECK(ca.genus == 2);
    REQUIRE(ca.stratum.size() == 2);
    CHECK(ca.stratum[0] == 1);
    CHECK(ca.stratum[1] == 1);

    CylinderResult hor = cylinder_decomposition(s, Vec(Q(1), Q(0)));
    REQUIRE(hor.periodic);
    REQUIRE(hor.cylinders.size() == 3);
    std::vector<Quad> moduli;
    for (const Cylinder& c : hor.cylinders) moduli.push_back(c.modulus());
    std::sort(moduli.begin(), moduli.end());
    CHECK(moduli[0] == Q(1));
    CHECK(moduli[1] == Q(1));
    CHECK(moduli[2] == Q(2));

    // six Weierstrass points, w2 = (1, -phi^2 - phi) among them
    std::vector<SurfacePoint> w = central_symmetry_weierstrass(s);
    REQUIRE(w.size() == 6);
    bool has_w2 = false;
    for (const SurfacePoint& fp : w)
        if (s.same_point(fp, {0, Vec(Q(1), -(p2 + phi)), ""})) has_w2 = true;
    CHECK(has_w2);
}

TEST_CASE("rel flow deforms heights and preserves area") {
    Quad phi = golden_ratio();
    RelFlowState s0 = rel_flow(Q(0));
    CHECK(s0.surface.area2() == golden_tetromino().area2());
    Quad area = s0.surface.area2();
    for (Quad t : {Q(-1), Q(-1, 2), Q(1, 2), Q(9, 10)})
        CHECK(rel_flow(t).surface.area2() == area);

    // moduli of the top and bottom cylinders at t
    Quad t = Q(1, 3);
    CylinderResult hor = cylinder_decomposition(rel_flow(t).surface, Vec(Q(1), Q(0)));
    REQUIRE(hor.periodic);
    REQUIRE(hor.cylinders.size() == 3);
    bool top = false, bottom = false;
    for (const Cylinder& c : hor.cylinders) {
        if (c.modulus() == Q(1) - t) top = true;
        if (c.modulus() == Q(2) - t / phi) bottom = true;
    }
    CHECK(top);
    CHECK(bottom);

    CHECK_THROWS_AS(rel_flow(Q(1)), Error);
    CHECK_THROWS_AS(rel_flow(Q(-3)), Error);
}

TEST_CASE("decagon membership formula agrees with the cylinder pattern") {
    for (long long k = 0; k < 20; ++k) {
        Quad t = Q(k - 12, 8);
        bool formula = decagon_membership(t);
        CylinderResult hor =
            cylinder_decomposition(rel_flow(t).surface, Vec(Q(1), Q(0)));
        REQUIRE(hor.periodic);
        std::vector<Quad> m;
        for (const Cylinder& c : hor.cylinders) m.push_back(c.modulus());
        std::sort(m.begin(), m.end());
        bool pattern = m.size() == 3 && m[0] == m[1] && m[2] == Q(2) * m[0];
        CHECK(formula == pattern);
        CHECK(formula == (t == Q(0)));
    }
}

TEST_CASE("golden points") {
    Quad phi = golden_ratio();
    // at t = 0 both golden points coincide with w2
    RelFlowState s0 = rel_flow(Q(0));
    auto [g1, g2] = golden_points(s0);
    SurfacePoint w2{0, Vec(Q(1), -(phi + Q(1) + phi)), ""};
    CHECK(s0.surface.same_point(g1, w2));
    CHECK(s0.surface.same_point(g2, w2));

    // displacement phi (1 - t) below z2 / above the bottom edge, -> 0 as t -> 1
    for (long long n = 2; n <= 10; ++n) {
        Quad t = Q(1) - Q(1, n);
        RelFlowState st = rel_flow(t);
        auto [a, b] = golden_points(st);
        Quad h2 = phi + Q(1) + t, h3 = Q(2) * phi - t;
        Quad disp = phi * (Q(1) - t);
        CHECK(st.surface.same_point(a, {0, Vec(Q(1), -h2 - disp), ""}));
        CHECK(st.surface.same_point(b, {0, Vec(Q(1), -h2 - h3 + disp), ""}));
        CHECK((disp - h3 / Q(2)).sign() < 0);  // still inside the bottom cylinder
    }

    // the two golden points are exchanged by the central symmetry
    RelFlowState st = rel_flow(Q(1, 2));
    auto [a, b] = golden_points(st);
    CHECK(!st.surface.same_point(a, b));
    CentralSymmetry cs = central_symmetry(st.surface);
    CHECK(st.surface.same_point(apply_symmetry(st.surface, cs, a), b));
}

TEST_CASE("horizontal geodesic through a golden point is unblocked") {
    RelFlowState st = rel_flow(Q(1, 2));
    auto [g1, g2] = golden_points(st);
    std::vector<SurfacePoint> probes = {g2};
    for (const SurfacePoint& p : st.tracked)
        if (p.label[0] == 'w') probes.push_back(p);
    Quad phi = golden_ratio();
    std::vector<Segment> segs = segments_between(st.surface, g1, g1, phi, probes);
    bool found = false;
    for (const Segment& sg : segs)
        if (sg.holonomy == Vec(phi, Q(0)) || sg.holonomy == Vec(-phi, Q(0))) {
            CHECK(sg.crossings.empty());
            found = true;
        }
    CHECK(found);
}

TEST_CASE("M0 staircase surface") {
    TranslationSurface s = m0_surface(Q(1), Q(1), Q(1), Q(1));
    ConeAnalysis ca = cone_analysis(s);
    CHECK(ca.genus == 4);
    REQUIRE(ca.stratum.size() == 1);
    CHECK(ca.stratum[0] == 6);

    CylinderResult hor = cylinder_decomposition(s, Vec(Q(1), Q(0)));
    REQUIRE(hor.periodic);
    REQUIRE(hor.cylinders.size() == 4);
    // circumferences pair with ratio phi
    Quad phi = golden_ratio();
    std::vector<Quad> circ;
    for (const Cylinder& c : hor.cylinders) circ.push_back(c.circumference);
    std::sort(circ.begin(), circ.end());
    CHECK(circ[1] == phi * circ[0]);
    CHECK(circ[3] == phi * circ[2]);

    CHECK(!cone_analysis(s).stratum.empty());
    CHECK_THROWS_AS(central_symmetry(s), Error);  // M0 is not centrally symmetric
    CHECK_THROWS_AS(m0_surface(Q(0), Q(1), Q(1), Q(1)), Error);
}

TEST_CASE("M0 periodic point candidates are eliminated") {
    TranslationSurface s = m0_surface(Q(1), Q(1), Q(1), Q(1));
    M0Candidates res = periodic_point_candidates_m0(s);
    REQUIRE(res.candidates.size() == 6);
    REQUIRE(res.twist_images.size() == 6);
    CHECK(res.eliminated == std::vector<size_t>{2, 3});
    CHECK(res.verdict == "NoPeriodicPoints");
    // untouched candidates are fixed by the twist
    for (size_t i : {size_t(0), size_t(1), size_t(4), size_t(5)})
        CHECK(s.same_point(res.twist_images[i], res.candidates[i]));
}
