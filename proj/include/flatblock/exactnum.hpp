#pragma once

// Exact scalars: rationals and elements of a real quadratic field Q(sqrt(D)),
// plus planar vectors over them.  Every comparison in the repo bottoms out in
// quad_sign(); nothing here touches floating point.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fb {

using Int = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline int sgn(const Int& v) { return v == 0 ? 0 : (v < 0 ? -1 : 1); }

// ---------------------------------------------------------------------------
// Rational numbers, always reduced, denominator > 0.

struct Rat {
    Int n{0};
    Int d{1};

    Rat() = default;
    Rat(long long v) : n(v) {}
    Rat(Int v) : n(std::move(v)) {}
    Rat(Int num, Int den) : n(std::move(num)), d(std::move(den)) { normalize(); }

    void normalize() {
        if (d == 0) throw Error("DivisionByZero", "rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        Int g = boost::multiprecision::gcd(n < 0 ? Int(-n) : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n == 0) d = 1;
    }

    int sign() const { return sgn(n); }
    bool is_zero() const { return n == 0; }
    bool is_integer() const { return d == 1; }

    Rat operator-() const { Rat r; r.n = -n; r.d = d; return r; }
    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.n * b.d + b.n * a.d, a.d * b.d); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.n * b.d - b.n * a.d, a.d * b.d); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.n * b.n, a.d * b.d); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.n == 0) throw Error("DivisionByZero", "rational division by zero");
        return Rat(a.n * b.d, a.d * b.n);
    }
    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.n == b.n && a.d == b.d; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.n * b.d < b.n * a.d; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.n * b.d <= b.n * a.d; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

    std::string str() const { return n.str() + "/" + d.str(); }
};

inline Rat rat_abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

// Largest f with f^2 | v, alongside the squarefree kernel v / f^2.
inline void squarefree_split(Int v, Int& kernel, Int& root) {
    if (v < 0) throw Error("InvalidDisc", "negative radicand");
    kernel = 1; root = 1;
    for (Int p = 2; p * p <= v; ++p) {
        int e = 0;
        while (v % p == 0) { v /= p; ++e; }
        for (int i = 0; i + 1 < e; i += 2) root *= p;
        if (e % 2 == 1) kernel *= p;
    }
    kernel *= v;
}

// ---------------------------------------------------------------------------
// a + b*sqrt(D): D squarefree, D = 0 encodes a plain rational (b = 0).

struct Quad {
    Rat a;
    Rat b;
    Int D{0};

    Quad() = default;
    Quad(long long v) : a(v) {}
    Quad(Rat r) : a(std::move(r)) {}
    Quad(Rat ra, Rat rb, Int disc) : a(std::move(ra)), b(std::move(rb)) {
        if (disc < 0) throw Error("InvalidDisc", "disc must be non-negative");
        if (b.is_zero() || disc == 0) { D = b.is_zero() ? 0 : throw Error("InvalidDisc", "sqrt(0) term"); return; }
        Int kernel, root;
        squarefree_split(disc, kernel, root);
        b *= Rat(root);
        if (kernel == 1) { a += b; b = Rat(0); D = 0; }
        else D = kernel;
    }

    bool is_rational() const { return D == 0; }

    static Int join(const Int& d1, const Int& d2) {
        if (d1 == 0) return d2;
        if (d2 == 0) return d1;
        if (d1 != d2) throw Error("MismatchedField", "disc " + d1.str() + " vs " + d2.str());
        return d1;
    }

    int sign() const {
        int sa = a.sign(), sb = b.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // a and b*sqrt(D) pull in opposite directions: compare a^2 with b^2 D.
        Rat lhs = a * a, rhs = b * b * Rat(D);
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
    }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    Quad conj() const { Quad q; q.a = a; q.b = -b; q.D = b.is_zero() ? Int(0) : D; return q; }
    Rat norm() const { return a * a - b * b * Rat(D); }  // x * conj(x)

    Quad operator-() const { Quad q; q.a = -a; q.b = -b; q.D = D; return q; }
    friend Quad operator+(const Quad& x, const Quad& y) {
        Quad q; q.a = x.a + y.a; q.b = x.b + y.b; q.D = q.b.is_zero() ? Int(0) : join(x.D, y.D); return q;
    }
    friend Quad operator-(const Quad& x, const Quad& y) { return x + (-y); }
    friend Quad operator*(const Quad& x, const Quad& y) {
        Int d = join(x.D, y.D);
        Quad q;
        q.a = x.a * y.a + x.b * y.b * Rat(d);
        q.b = x.a * y.b + x.b * y.a;
        q.D = q.b.is_zero() ? Int(0) : d;
        return q;
    }
    Quad inverse() const {
        if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
        Rat nm = norm();
        if (nm.is_zero()) throw Error("InvalidDisc", "non-squarefree disc slipped through");
        Quad q = conj();
        q.a /= nm; q.b /= nm;
        if (q.b.is_zero()) q.D = 0;
        return q;
    }
    friend Quad operator/(const Quad& x, const Quad& y) { return x * y.inverse(); }
    Quad& operator+=(const Quad& o) { *this = *this + o; return *this; }
    Quad& operator-=(const Quad& o) { *this = *this - o; return *this; }
    Quad& operator*=(const Quad& o) { *this = *this * o; return *this; }
    Quad& operator/=(const Quad& o) { *this = *this / o; return *this; }

    friend bool operator==(const Quad& x, const Quad& y) {
        return x.a == y.a && x.b == y.b && (x.b.is_zero() || x.D == y.D);
    }
    friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }
    friend bool operator<(const Quad& x, const Quad& y) { return (x - y).sign() < 0; }
    friend bool operator<=(const Quad& x, const Quad& y) { return (x - y).sign() <= 0; }
    friend bool operator>(const Quad& x, const Quad& y) { return y < x; }
    friend bool operator>=(const Quad& x, const Quad& y) { return y <= x; }

    std::string str() const {
        if (is_rational()) return a.str();
        std::string s = a.str();
        s += (b.sign() < 0) ? "-" : "+";
        s += rat_abs(b).str() + "*sqrt(" + D.str() + ")";
        return s;
    }

    BigFloat approx() const {
        BigFloat v = BigFloat(a.n.str()) / BigFloat(a.d.str());
        if (!b.is_zero())
            v += BigFloat(b.n.str()) / BigFloat(b.d.str()) * sqrt(BigFloat(D.str()));
        return v;
    }
};

inline int quad_sign(const Quad& q) { return q.sign(); }

// sqrt of a non-negative rational as a Quad, e.g. sqrt(8) = 2*sqrt(2).
inline Quad rat_sqrt(const Rat& r) {
    if (r.sign() < 0) throw Error("InvalidDisc", "sqrt of negative rational");
    if (r.is_zero()) return Quad(0);
    Int kernel, root;
    squarefree_split(r.n * r.d, kernel, root);
    return Quad(Rat(0), Rat(root, r.d), kernel);
}

// ---------------------------------------------------------------------------
// Parsing: "p/q" or "p/q+r/s*sqrt(D)" (also accepts "-" separators and bare
// integers for any coefficient).  Round-trips str() bit-exactly.

inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw Error("ParseError", "empty rational");
    auto slash = s.find('/');
    auto check = [&](const std::string& t) {
        if (t.empty()) throw Error("ParseError", "bad rational '" + s + "'");
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw Error("ParseError", "bad rational '" + s + "'");
        for (; i < t.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(t[i])))
                throw Error("ParseError", "bad rational '" + s + "'");
    };
    auto strip = [](std::string t) { return t[0] == '+' ? t.substr(1) : t; };
    if (slash == std::string::npos) { check(s); return Rat(Int(strip(s))); }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check(num); check(den);
    return Rat(Int(strip(num)), Int(strip(den)));
}

inline Quad parse_quad(const std::string& s) {
    auto star = s.find("*sqrt(");
    if (star == std::string::npos) return Quad(parse_rat(s));
    if (s.back() != ')') throw Error("ParseError", "bad quad '" + s + "'");
    std::string disc = s.substr(star + 6, s.size() - star - 7);
    // The separator is the last sign before '*' that is not a leading sign.
    size_t sep = std::string::npos;
    for (size_t i = 1; i < star; ++i)
        if (s[i] == '+' || s[i] == '-') sep = i;
    Rat a(0), b;
    if (sep == std::string::npos) {
        b = parse_rat(s.substr(0, star));
    } else {
        a = parse_rat(s.substr(0, sep));
        std::string bs = s.substr(sep, star - sep);
        if (bs.size() > 1 && bs[1] == '+') throw Error("ParseError", "bad quad '" + s + "'");
        b = parse_rat(bs);
    }
    return Quad(a, b, Int(disc));
}

// ---------------------------------------------------------------------------

struct Vec {
    Quad x, y;
    Vec() = default;
    Vec(Quad vx, Quad vy) : x(std::move(vx)), y(std::move(vy)) {}

    Vec operator-() const { return Vec(-x, -y); }
    friend Vec operator+(const Vec& u, const Vec& v) { return Vec(u.x + v.x, u.y + v.y); }
    friend Vec operator-(const Vec& u, const Vec& v) { return Vec(u.x - v.x, u.y - v.y); }
    friend Vec operator*(const Quad& s, const Vec& v) { return Vec(s * v.x, s * v.y); }
    Vec& operator+=(const Vec& v) { x += v.x; y += v.y; return *this; }
    Vec& operator-=(const Vec& v) { x -= v.x; y -= v.y; return *this; }
    friend bool operator==(const Vec& u, const Vec& v) { return u.x == v.x && u.y == v.y; }
    friend bool operator!=(const Vec& u, const Vec& v) { return !(u == v); }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }

    friend Quad dot(const Vec& u, const Vec& v) { return u.x * v.x + u.y * v.y; }
    friend Quad cross(const Vec& u, const Vec& v) { return u.x * v.y - u.y * v.x; }
    Quad norm2() const { return x * x + y * y; }
};

// Lexicographic order, used for canonical representatives and determinism.
inline int vec_cmp(const Vec& u, const Vec& v) {
    int c = (u.x - v.x).sign();
    if (c != 0) return c;
    return (u.y - v.y).sign();
}

}  // namespace fb
