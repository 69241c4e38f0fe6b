#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatblock/prototypes.hpp"

#include <numeric>

using namespace fb;

static bool contains(const std::vector<PrototypeTriple>& v, long long b, long long c,
                     long long e) {
    for (const PrototypeTriple& t : v)
        if (t.b == b && t.c == c && t.e == e) return true;
    return false;
}

TEST_CASE("prototype enumeration") {
    std::vector<PrototypeTriple> p5 = enumerate_prototypes(5);
    REQUIRE(p5.size() == 1);
    CHECK(contains(p5, 1, 1, -1));

    std::vector<PrototypeTriple> p8 = enumerate_prototypes(8);
    REQUIRE(p8.size() == 2);
    CHECK(contains(p8, 2, 1, 0));
    CHECK(contains(p8, 1, 1, -2));

    std::vector<PrototypeTriple> p41 = enumerate_prototypes(41, 0);
    CHECK(contains(p41, 5, 2, -1));
    for (const PrototypeTriple& t : p41) CHECK(*spin_invariant(t) == 0);

    CHECK_THROWS_AS(enumerate_prototypes(16), Error);   // square
    CHECK_THROWS_AS(enumerate_prototypes(12, 0), Error);  // spin needs D = 1 mod 8

    for (const PrototypeTriple& t : enumerate_prototypes(77)) {
        CHECK(t.valid());
        Quad l = t.lambda();
        CHECK(l * l == Quad(Rat(t.e)) * l + Quad(Rat(t.b * t.c)));
    }
}

TEST_CASE("spin invariant") {
    CHECK(*spin_invariant({17, 1, 2, -3}) == 1);
    CHECK(*spin_invariant({17, 2, 1, -3}) == 0);
    CHECK(*spin_invariant({41, 5, 2, -1}) == 0);
    CHECK(!spin_invariant({12, 3, 1, 0}).has_value());
}

TEST_CASE("twist permutations") {
    PrototypeTriple d5{5, 1, 1, -1};
    CHECK(horizontal_twist_perm(d5).cycles() == "(12)(45)");
    CHECK(vertical_twist_perm(d5).cycles() == "(14)(23)");

    PrototypeTriple d41{41, 5, 2, -1};
    CHECK(horizontal_twist_perm(d41).cycles() == "(45)");
    CHECK(vertical_twist_perm(d41).cycles() == "(23)");

    PrototypeTriple d32{32, 4, 1, -4};
    CHECK(horizontal_twist_perm(d32).cycles() == "(12)");
    CHECK(vertical_twist_perm(d32).cycles() == "(14)(23)");
}

TEST_CASE("blocking group analysis") {
    GroupAnalysis a5 = blocking_group_analysis({5, 1, 1, -1});
    CHECK(a5.condition_met);
    REQUIRE(a5.orbits.size() == 1);
    CHECK(a5.orbits[0] == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(a5.conclusion == "NoDistinctPairBlocked");

    GroupAnalysis a12 = blocking_group_analysis({12, 3, 1, 0});
    CHECK(a12.condition_met);  // c/b = 1/3, both odd
    CHECK(a12.conclusion == "NoDistinctPairBlocked");

    GroupAnalysis a41 = blocking_group_analysis({41, 5, 2, -1});
    CHECK(!a41.condition_met);
    using O = std::vector<std::vector<int>>;
    CHECK(a41.orbits == O{{1}, {2, 3}, {4, 5}});
    CHECK(a41.conclusion == "RequiresGeometricArgument");
}

TEST_CASE("the published table rows all satisfy the odd-ratio condition") {
    struct Row {
        long long D, b, c, e;
        std::optional<int> spin;
        long long rc, rb;  // the odd reduced ratio rc/rb
        bool vertical;
    };
    std::vector<Row> rows = {{5, 1, 1, -1, {}, 1, 1, false},
                             {12, 3, 1, 0, {}, 1, 3, false},
                             {17, 1, 2, -3, 1, 1, 1, true},
                             {21, 1, 3, -3, {}, 3, 1, false},
                             {32, 4, 1, -4, {}, 1, 7, true},
                             {45, 1, 5, -5, {}, 5, 1, false},
                             {77, 1, 7, -7, {}, 7, 1, false}};
    for (const Row& r : rows) {
        std::vector<PrototypeTriple> all = enumerate_prototypes(r.D, r.spin);
        CHECK(contains(all, r.b, r.c, r.e));
        PrototypeTriple t{r.D, r.b, r.c, r.e};
        long long rc, rb;
        if (r.vertical) {
            long long num = t.b - t.c - t.e, g = std::gcd(num, t.c);
            rc = t.c / g;
            rb = num / g;
        } else {
            long long g = std::gcd(t.b, t.c);
            rc = t.c / g;
            rb = t.b / g;
        }
        CHECK(rc == r.rc);
        CHECK(rb == r.rb);
        CHECK(rc % 2 == 1);
        CHECK(rb % 2 == 1);
        CHECK(blocking_group_analysis(t).condition_met);
    }
}

TEST_CASE("prototype surface geometry") {
    PrototypeTriple d5{5, 1, 1, -1};
    TranslationSurface s = build_prototype_surface(d5);
    Quad l = d5.lambda();
    CHECK(s.area2() == Quad(2) * (l * l + Quad(1)));
    ConeAnalysis ca = cone_analysis(s);
    CHECK(ca.genus == 2);
    REQUIRE(ca.stratum.size() == 1);
    CHECK(ca.stratum[0] == 2);

    // two horizontal cylinders, moduli 1 and c/b = 1
    CylinderResult hor = cylinder_decomposition(s, Vec(Quad(1), Quad(0)));
    REQUIRE(hor.periodic);
    REQUIRE(hor.cylinders.size() == 2);
    CHECK(hor.cylinders[0].modulus() == Quad(1));
    CHECK(hor.cylinders[1].modulus() == Quad(1));
    Quad area(0);
    for (const Cylinder& c : hor.cylinders) area += c.circumference * c.height;
    CHECK(Quad(2) * area == s.area2());

    // six Weierstrass points at the figure's labelled positions
    std::vector<SurfacePoint> w = central_symmetry_weierstrass(s);
    REQUIRE(w.size() == 6);
    Quad b(1), c(1), two(2);
    std::vector<Vec> expected = {
        Vec(l / two, l + c / two),        // 1: left strip center
        Vec((l + b) / two, l + c / two),  // 2: right strip center
        Vec((l + b) / two, l),            // 3: strip floor midpoint
        Vec(l / two, l / two),            // 4: square center
        Vec(l, l / two),                  // 5: square side midpoint
        Vec(Quad(0), Quad(0)),            // the zero
    };
    for (const Vec& pos : expected) {
        bool found = false;
        for (const SurfacePoint& fp : w)
            if (s.same_point(fp, {0, pos, ""})) found = true;
        CHECK(found);
    }
}

TEST_CASE("vertical moduli ratio collapses to (b-c-e)/c") {
    for (long long D = 5; D <= 200; ++D) {
        if (D % 4 > 1) continue;
        long long r = 2;
        while (r * r < D) ++r;
        if (r * r == D) continue;
        for (const PrototypeTriple& t : enumerate_prototypes(D)) {
            CHECK(vertical_moduli_ratio(t) == Quad(Rat(t.b - t.c - t.e, t.c)));
            CHECK((Quad(Rat(t.b)) - t.lambda()).sign() > 0);
            CHECK((t.lambda() + Quad(Rat(t.c))).sign() > 0);
        }
    }
}
