#include "flatblock/prototypes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace fb {

namespace {

bool is_square(long long n) {
    if (n < 0) return false;
    long long r = (long long)std::sqrt((double)n);
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

long long conductor(long long D) {
    long long f = 1;
    for (long long g = 1; g * g <= D; ++g)
        if (D % (g * g) == 0) {
            long long E = D / (g * g);
            long long m = E % 4;
            if (m == 0 || m == 1) f = g;
        }
    return f;
}

Perm5 transposition_power(int i, int j, long long n) {
    Perm5 p;
    if (n % 2 != 0) std::swap(p.img[i - 1], p.img[j - 1]);
    return p;
}

Perm5 compose(const Perm5& f, const Perm5& g) {  // f after g
    Perm5 r;
    for (int i = 1; i <= 5; ++i) r.img[i - 1] = f(g(i));
    return r;
}

}  // namespace

Quad PrototypeTriple::lambda() const {
    return (Quad(Rat(e)) + rat_sqrt(Rat(D))) / Quad(2);
}

bool PrototypeTriple::valid() const {
    return D > 0 && !is_square(D) && b >= 1 && c >= 1 && D == e * e + 4 * b * c &&
           c + e < b && std::gcd(std::gcd(b, c), std::abs(e)) == 1;
}

std::vector<PrototypeTriple> enumerate_prototypes(long long D,
                                                  std::optional<int> spin_filter) {
    if (D <= 0 || is_square(D)) throw Error("SquareDiscriminant", "D must be a positive non-square");
    if (spin_filter && D % 8 != 1)
        throw Error("SpinUndefined", "spin components exist only for D = 1 mod 8");
    std::vector<PrototypeTriple> out;
    if (D < 5) return out;  // bc >= 1 forces e^2 <= D - 4
    long long emax = (long long)std::sqrt((double)(D - 4));
    while (emax * emax > D - 4) --emax;
    while ((emax + 1) * (emax + 1) <= D - 4) ++emax;
    for (long long e = -emax; e <= emax; ++e) {
        if (((e % 2) + 2) % 2 != ((D % 2) + 2) % 2) continue;
        if ((D - e * e) % 4 != 0) continue;
        long long bc = (D - e * e) / 4;
        for (long long c = 1; c * c <= bc; ++c) {
            if (bc % c != 0) continue;
            for (long long b : {bc / c, c}) {
                long long cc = bc / b;
                PrototypeTriple t{D, b, cc, e};
                if (!t.valid()) continue;
                if (spin_filter && *spin_invariant(t) != *spin_filter) continue;
                if (std::find_if(out.begin(), out.end(), [&](const PrototypeTriple& u) {
                        return u.b == t.b && u.c == t.c && u.e == t.e;
                    }) != out.end())
                    continue;
                out.push_back(t);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const PrototypeTriple& x, const PrototypeTriple& y) {
        if (x.e != y.e) return x.e < y.e;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    });
    return out;
}

std::optional<int> spin_invariant(const PrototypeTriple& t) {
    if (t.D % 8 != 1) return std::nullopt;
    long long f = conductor(t.D);
    long long v = (t.e - f) / 2 + (t.c + 1) * t.b;
    return (int)(((v % 2) + 2) % 2);
}

std::string Perm5::cycles() const {
    std::string s;
    std::array<bool, 5> seen{};
    for (int i = 1; i <= 5; ++i) {
        if (seen[i - 1] || img[i - 1] == i) continue;
        s += "(";
        int j = i;
        do {
            seen[j - 1] = true;
            s += std::to_string(j);
            j = img[j - 1];
        } while (j != i);
        s += ")";
    }
    return s.empty() ? "id" : s;
}

Perm5 horizontal_twist_perm(const PrototypeTriple& t) {
    long long g = std::gcd(t.b, t.c);
    return compose(transposition_power(1, 2, t.c / g), transposition_power(4, 5, t.b / g));
}

Perm5 vertical_twist_perm(const PrototypeTriple& t) {
    long long num = t.b - t.c - t.e;  // positive by c + e < b
    long long g = std::gcd(num, t.c);
    return compose(transposition_power(2, 3, t.c / g), transposition_power(1, 4, num / g));
}

Quad vertical_moduli_ratio(const PrototypeTriple& t) {
    Quad l = t.lambda();
    return (Quad(Rat(t.b)) - l) * (l + Quad(Rat(t.c))) / (Quad(Rat(t.c)) * l);
}

GroupAnalysis blocking_group_analysis(const PrototypeTriple& t) {
    GroupAnalysis res;
    long long g = std::gcd(t.b, t.c);
    long long cp = t.c / g, bp = t.b / g;
    long long num = t.b - t.c - t.e;
    long long g2 = std::gcd(num, t.c);
    long long cpp = t.c / g2, bpp = num / g2;
    res.condition_met = (cp % 2 != 0 && bp % 2 != 0) || (cpp % 2 != 0 && bpp % 2 != 0);

    Perm5 h = horizontal_twist_perm(t), v = vertical_twist_perm(t);
    std::array<bool, 5> seen{};
    for (int i = 1; i <= 5; ++i) {
        if (seen[i - 1]) continue;
        std::vector<int> orbit = {i};
        seen[i - 1] = true;
        for (size_t k = 0; k < orbit.size(); ++k)
            for (int j : {h(orbit[k]), v(orbit[k])})
                if (!seen[j - 1]) {
                    seen[j - 1] = true;
                    orbit.push_back(j);
                }
        std::sort(orbit.begin(), orbit.end());
        res.orbits.push_back(orbit);
    }
    std::sort(res.orbits.begin(), res.orbits.end());

    // the lemma's case analysis: transitive, or the orbits {1,2,3}/{4,5} or
    // {1,2,4,5}/{3}, all rule out blocked pairs of distinct Weierstrass points
    using O = std::vector<std::vector<int>>;
    bool lemma_case = res.orbits == O{{1, 2, 3, 4, 5}} ||
                      res.orbits == O{{1, 2, 3}, {4, 5}} ||
                      res.orbits == O{{1, 2, 4, 5}, {3}};
    res.conclusion = (res.condition_met && lemma_case) ? "NoDistinctPairBlocked"
                                                       : "RequiresGeometricArgument";
    return res;
}

TranslationSurface build_prototype_surface(const PrototypeTriple& t) {
    Quad l = t.lambda();
    Quad b(Rat(t.b)), c(Rat(t.c));
    if (l.sign() <= 0 || (b - l).sign() <= 0)
        throw Error("GeometryInfeasible", "need 0 < lambda < b");
    Quad z(0), lc = l + c;
    std::vector<Vec> vs = {Vec(z, z),  Vec(l, z),  Vec(l, l),  Vec(b, l),
                           Vec(b, lc), Vec(l, lc), Vec(z, lc), Vec(z, l)};
    std::vector<Rat> ang = {Rat(1, 2), Rat(1, 2), Rat(3, 2), Rat(1, 2),
                            Rat(1, 2), Rat(1),    Rat(1, 2), Rat(1)};
    Polygon p = polygon_from_vertices(ang, vs);
    std::vector<Gluing> gl = {{{0, 0}, {0, 5}},   // square bottom <-> strip top left
                              {{0, 2}, {0, 4}},   // strip floor <-> strip top right
                              {{0, 1}, {0, 7}},   // square sides
                              {{0, 3}, {0, 6}}};  // strip sides
    return TranslationSurface::assemble({p}, gl);
}

}  // namespace fb
