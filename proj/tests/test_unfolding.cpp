#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatblock/unfolding.hpp"

#include <random>

using namespace fb;

static std::vector<Rat> A(std::initializer_list<std::pair<int, int>> l) {
    std::vector<Rat> v;
    for (auto [a, b] : l) v.push_back(Rat(a, b));
    return v;
}

TEST_CASE("pillowcase double") {
    auto cd = pillowcase_double(A({{1, 10}, {2, 5}, {1, 2}}));
    CHECK(cd.d == 10);
    CHECK(cd.points() == 3);
    auto sq = pillowcase_double(A({{1, 2}, {1, 2}, {1, 2}, {1, 2}}));
    CHECK(sq.d == 2);
    REQUIRE(sq.cones.size() == 1);
    CHECK(sq.cones[0].mult == 4);
    CHECK(sq.cones[0].angle == Rat(1, 2));
    CHECK_THROWS_AS(make_cone_data(A({{1, 2}, {1, 2}})), Error);  // Gauss-Bonnet
}

TEST_CASE("unfolding genus closed form") {
    CHECK(unfolding_genus(A({{1, 2}, {1, 2}, {1, 2}, {1, 2}})) == 1);
    CHECK(unfolding_genus(A({{1, 10}, {2, 5}, {1, 2}})) == 2);
    CHECK(unfolding_genus(A({{1, 4}, {1, 4}, {1, 4}, {5, 4}})) == 3);
    CHECK(unfolding_genus(A({{1, 8}, {3, 8}, {1, 2}})) == 2);
    CHECK(unfolding_genus(A({{1, 5}, {1, 5}, {3, 5}})) == 2);
    CHECK(unfolding_genus(A({{1, 10}, {1, 10}, {4, 5}})) == 4);
}

TEST_CASE("combinatorial oracle agrees, including d = 7 and 9") {
    std::vector<std::vector<Rat>> cases = {
        A({{1, 2}, {1, 2}, {1, 2}, {1, 2}}),
        A({{1, 7}, {2, 7}, {4, 7}}),
        A({{1, 9}, {1, 9}, {7, 9}}),
        A({{1, 8}, {3, 8}, {1, 2}}),
        A({{3, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}}),
        A({{1, 4}, {1, 4}, {1, 4}, {5, 4}}),
    };
    for (const auto& c : cases)
        CHECK(unfolding_genus(c) == unfolding_genus_oracle(c));

    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 60) {
        int k = 3 + (int)(rng() % 3);
        std::vector<Rat> ang;
        Rat sum(0);
        for (int i = 0; i + 1 < k; ++i) {
            Rat a((long long)(rng() % 17 + 1), (long long)(rng() % 9 + 1));
            ang.push_back(a);
            sum += a;
        }
        Rat last = Rat(k - 2) - sum;
        if (last.sign() <= 0 || last >= Rat(2) || last.d > 9) continue;
        ang.push_back(last);
        bool ok = true;
        for (const auto& a : ang)
            if (a.sign() <= 0 || a >= Rat(2) || a.d > 9) ok = false;
        if (!ok) continue;
        CHECK(unfolding_genus(ang) == unfolding_genus_oracle(ang));
        ++done;
    }
}

TEST_CASE("hyperelliptic trichotomy on the corollary lists") {
    std::vector<std::vector<Rat>> deck = {
        A({{1, 4}, {3, 4}, {1, 2}, {1, 2}}),
        A({{1, 8}, {3, 8}, {1, 2}}),
        A({{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {3, 2}}),
        A({{1, 10}, {4, 10}, {1, 2}}),
        A({{2, 10}, {3, 10}, {1, 2}}),
        A({{2, 6}, {4, 6}, {1, 2}, {1, 2}}),
    };
    for (const auto& v : deck)
        CHECK(hyperelliptic_criterion(make_cone_data(v)).kind == HypKind::DeckInvolution);

    std::vector<std::vector<Rat>> special = {
        A({{1, 3}, {1, 3}, {2, 3}, {2, 3}}),
        A({{1, 5}, {1, 5}, {3, 5}}),
        A({{2, 5}, {2, 5}, {1, 5}}),
        A({{1, 6}, {1, 6}, {4, 6}}),
    };
    for (const auto& v : special)
        CHECK(hyperelliptic_criterion(make_cone_data(v)).kind == HypKind::Special);

    CHECK(hyperelliptic_criterion(make_cone_data(A({{1, 4}, {1, 4}, {1, 4}, {5, 4}}))).kind ==
          HypKind::NotHyperelliptic);
    // the excluded doubles
    CHECK(hyperelliptic_criterion(make_cone_data(A({{1, 4}, {1, 4}, {1, 2}}))).kind !=
          HypKind::Special);
    // permutation invariance
    auto a = hyperelliptic_criterion(make_cone_data(A({{1, 2}, {1, 4}, {3, 4}, {1, 2}})));
    auto b = hyperelliptic_criterion(make_cone_data(A({{3, 4}, {1, 2}, {1, 2}, {1, 4}})));
    CHECK(a.kind == b.kind);
    CHECK(a.witness == b.witness);
}

TEST_CASE("genus-two classification table") {
    auto r = classify_genus2(A({{1, 3}, {2, 3}, {1, 2}, {1, 2}}));
    REQUIRE(r.family.has_value());
    CHECK(r.family->family == "(1/n,(n-1)/n,1/2,1/2), n=3");
    CHECK(r.family->orbit_closure == "H(1,1), H(2)");

    auto miss = classify_genus2(A({{1, 10}, {1, 10}, {4, 5}}));
    CHECK(!miss.family.has_value());
    CHECK(miss.genus == 4);

    auto dec = classify_genus2(A({{2, 5}, {2, 5}, {1, 5}}));
    REQUIRE(dec.family.has_value());
    CHECK(dec.family->orbit_closure == "Decagon locus");

    // all ten instances land in their rows, in any angle order
    std::vector<std::pair<std::vector<Rat>, int>> inst = {
        {A({{3, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}}), 1},
        {A({{1, 3}, {2, 3}, {1, 2}, {1, 2}}), 2},
        {A({{1, 2}, {1, 4}, {3, 4}, {1, 2}}), 2},
        {A({{1, 3}, {1, 3}, {2, 3}, {2, 3}}), 3},
        {A({{1, 8}, {3, 8}, {1, 2}}), 4},
        {A({{1, 2}, {1, 10}, {2, 5}}), 4},
        {A({{1, 5}, {3, 10}, {1, 2}}), 5},
        {A({{1, 5}, {1, 5}, {3, 5}}), 6},
        {A({{2, 3}, {1, 6}, {1, 6}}), 6},
        {A({{2, 5}, {2, 5}, {1, 5}}), 7},
    };
    for (const auto& [ang, row] : inst) {
        auto c = classify_genus2(ang);
        REQUIRE(c.family.has_value());
        CHECK(c.family->row == row);
    }
}

TEST_CASE("torus cover predicate") {
    CHECK(torus_cover_check(l_hexagon(Quad(1), Quad(2), Quad(1), Quad(3))));
    Quad r5(Rat(0), Rat(1), 5);
    CHECK(!torus_cover_check(l_hexagon(r5, Quad(2), Quad(1), Quad(3))));
    CHECK(!torus_cover_check(l_hexagon(Quad(1), Quad(2), r5, Quad(3))));

    // quadrilateral family: parallel side ratio decides
    std::vector<Rat> tr = {Rat(1, 2), Rat(1, 2), Rat(1, 3), Rat(2, 3)};
    Polygon rational_tr =
        polygon_from_sides(tr, {Quad(3), Quad(3), std::nullopt, std::nullopt});
    CHECK(torus_cover_check(rational_tr));
    Polygon irr_tr = polygon_from_sides(tr, {Quad(3), r5, std::nullopt, std::nullopt});
    CHECK(!torus_cover_check(irr_tr));

    CHECK(torus_cover_check(triangle(Rat(1, 6), Rat(1, 6), Rat(2, 3), Quad(1))));
    CHECK(!torus_cover_check(triangle(Rat(1, 8), Rat(3, 8), Rat(1, 2), Quad(1))));
    CHECK_THROWS_AS(torus_cover_check(triangle(Rat(1, 3), Rat(1, 3), Rat(1, 3), Quad(1))),
                    Error);
}
