#include "flatblock/golden.hpp"

namespace fb {

namespace {

Quad phi2() { return golden_ratio() + Quad(1); }

// the tetromino with deformed row heights (top, middle, bottom)
TranslationSurface tetromino_rows(const Quad& h1, const Quad& h2, const Quad& h3) {
    Quad z(0), one(1), p2 = phi2();
    Quad ym = -h2, yb = -h2 - h3;
    std::vector<Vec> vs = {Vec(z, h1),  Vec(z, z),   Vec(z, ym),  Vec(one, ym),
                           Vec(one, yb), Vec(p2, yb), Vec(p2, ym), Vec(p2, z),
                           Vec(one, z),  Vec(one, h1)};
    std::vector<Rat> ang = {Rat(1, 2), Rat(1),    Rat(1, 2), Rat(3, 2), Rat(1, 2),
                            Rat(1, 2), Rat(1),    Rat(1, 2), Rat(3, 2), Rat(1, 2)};
    Polygon p = polygon_from_vertices(ang, vs);
    std::vector<Gluing> gl = {{{0, 2}, {0, 9}},   // top of row 1 <-> floor of row 2
                              {{0, 4}, {0, 7}},   // floor of row 3 <-> ceiling strip
                              {{0, 0}, {0, 8}},   // row 1 sides
                              {{0, 1}, {0, 6}},   // row 2 sides
                              {{0, 3}, {0, 5}}};  // row 3 sides
    return TranslationSurface::assemble({p}, gl);
}

}  // namespace

Quad golden_ratio() { return (Quad(1) + rat_sqrt(Rat(5))) / Quad(2); }

TranslationSurface golden_tetromino() {
    Quad phi = golden_ratio();
    return tetromino_rows(Quad(1), phi2(), Quad(2) * phi);
}

RelFlowState rel_flow(const Quad& t) {
    Quad phi = golden_ratio();
    if (!((t + phi2()).sign() > 0 && (Quad(1) - t).sign() > 0))
        throw Error("OutOfRange", "t must lie in (-phi^2, 1)");
    RelFlowState st;
    st.t = t;
    Quad h1 = Quad(1) - t, h2 = phi2() + t, h3 = Quad(2) * phi - t;
    st.surface = tetromino_rows(h1, h2, h3);
    st.tracked.push_back(st.surface.canonical({0, Vec(Quad(1), Quad(0)), "z1"}));
    st.tracked.push_back(st.surface.canonical({0, Vec(Quad(1), -h2), "z2"}));
    std::vector<SurfacePoint> w = central_symmetry_weierstrass(st.surface);
    for (size_t i = 0; i < w.size(); ++i) {
        w[i].label = "w" + std::to_string(i + 1);
        st.tracked.push_back(w[i]);
    }
    Quad disp = phi * h1;  // phi (1 - t), the golden relation gamma = phi zeta
    st.tracked.push_back(
        st.surface.canonical({0, Vec(Quad(1), -h2 - disp), "golden1"}));
    st.tracked.push_back(
        st.surface.canonical({0, Vec(Quad(1), -h2 - h3 + disp), "golden2"}));
    return st;
}

bool decagon_membership(const Quad& t) {
    Quad phi = golden_ratio();
    if (!((t + phi2()).sign() > 0 && (Quad(1) - t).sign() > 0))
        throw Error("OutOfRange", "t must lie in (-phi^2, 1)");
    return Quad(2) * (Quad(1) - t) == Quad(2) - t / phi;
}

std::pair<SurfacePoint, SurfacePoint> golden_points(const RelFlowState& state) {
    SurfacePoint a, b;
    for (const SurfacePoint& p : state.tracked) {
        if (p.label == "golden1") a = p;
        if (p.label == "golden2") b = p;
    }
    return {a, b};
}

TranslationSurface m0_surface(const Quad& x1, const Quad& x2, const Quad& y1,
                              const Quad& y2) {
    for (const Quad* q : {&x1, &x2, &y1, &y2})
        if (q->sign() <= 0) throw Error("DegenerateLengths", "lengths must be positive");
    Quad phi = golden_ratio();
    Quad X1 = phi * x1, X2 = X1 + (phi - Quad(1)) * x2, X3 = X2 + x2, X4 = X3 + x1;
    Quad Y1 = phi * y1, Y2 = Y1 + phi * y2, Y3 = Y2 + y2, Y4 = Y3 + y1;
    Quad z(0);
    std::vector<Vec> vs = {Vec(z, z),   Vec(X1, z),  Vec(X1, Y1), Vec(X2, Y1),
                           Vec(X3, Y1), Vec(X3, Y2), Vec(X4, Y2), Vec(X4, Y3),
                           Vec(X4, Y4), Vec(X3, Y4), Vec(X3, Y3), Vec(X2, Y3),
                           Vec(X2, Y2), Vec(X1, Y2), Vec(z, Y2),  Vec(z, Y1)};
    std::vector<Rat> ang = {Rat(1, 2), Rat(1, 2), Rat(3, 2), Rat(1),    Rat(1, 2),
                            Rat(3, 2), Rat(1, 2), Rat(1),    Rat(1, 2), Rat(1, 2),
                            Rat(3, 2), Rat(1, 2), Rat(3, 2), Rat(1),    Rat(1, 2),
                            Rat(1)};
    Polygon p = polygon_from_vertices(ang, vs);
    std::vector<Gluing> gl = {{{0, 0}, {0, 13}},  // bottom row top <-> floor
                              {{0, 2}, {0, 12}},  // second step
                              {{0, 3}, {0, 10}},  // third step
                              {{0, 5}, {0, 8}},   // top step
                              {{0, 1}, {0, 15}},  // column 1 sides
                              {{0, 4}, {0, 14}},  // column 1+2+3 tall sides
                              {{0, 6}, {0, 11}},  // column 3 <-> right wall lower
                              {{0, 7}, {0, 9}}};  // column 4 sides
    return TranslationSurface::assemble({p}, gl);
}

M0Candidates periodic_point_candidates_m0(const TranslationSurface& s) {
    if (s.polys.size() != 1 || s.polys[0].size() != 16)
        throw Error("WrongSurface", "expected an M0 staircase presentation");
    const std::vector<Vec>& v = s.polys[0].verts;
    Quad X[5] = {v[0].x, v[1].x, v[3].x, v[4].x, v[6].x};
    Quad Y[5] = {v[0].y, v[2].y, v[5].y, v[7].y, v[8].y};
    auto cell = [&](const Quad& cx, int i, const Quad& cy, int j) {
        return Vec(X[i] + cx * (X[i + 1] - X[i]), Y[j] + cy * (Y[j + 1] - Y[j]));
    };
    Quad h = Quad(Rat(1, 2)), q = Quad(Rat(1, 4));
    M0Candidates out;
    // first three the bottom Dehn-twist orbit, last three the top one
    std::vector<Vec> pos = {cell(h, 0, h, 0), cell(h, 0, h, 1), cell(q, 2, h, 1),
                            cell(h, 2, h, 2), cell(h, 3, h, 2), cell(h, 3, h, 3)};
    for (size_t i = 0; i < pos.size(); ++i)
        out.candidates.push_back(
            s.canonical({0, pos[i], "c" + std::to_string(i + 1)}));

    // one complete Dehn twist in V2; its larger cylinder is the third column,
    // x in [X2, X3], wrapping vertically over [Y1, Y3]
    Quad H = Y[3] - Y[1];
    auto twist = [&](Vec p) {
        if (!(X[2] <= p.x && p.x <= X[3] && Y[1] <= p.y && p.y <= Y[3])) return p;
        p.y += H * (p.x - X[2]) / (X[3] - X[2]);
        while ((p.y - Y[3]).sign() > 0) p.y -= H;
        return p;
    };
    for (size_t i = 0; i < out.candidates.size(); ++i) {
        Vec img = twist(pos[i]);
        out.twist_images.push_back(s.canonical({0, img, ""}));
        bool still = false;
        for (const SurfacePoint& c : out.candidates)
            if (s.same_point(out.twist_images.back(), c)) still = true;
        if (!still) out.eliminated.push_back(i);
    }
    // the twist kills one candidate in each of the two Dehn-twist orbits
    bool bottom = false, top = false;
    for (size_t i : out.eliminated) (i < 3 ? bottom : top) = true;
    out.verdict = bottom && top ? "NoPeriodicPoints" : "Inconclusive";
    return out;
}

}  // namespace fb
