#include "flatblock/json_io.hpp"

#include <algorithm>
#include <sstream>

using nlohmann::json;

namespace fb {

namespace {

json quad_json(const Quad& q) { return q.str(); }

json vec_json(const Vec& v) { return json::array({quad_json(v.x), quad_json(v.y)}); }

Vec vec_from(const json& j) {
    return Vec(parse_quad(j.at(0).get<std::string>()),
               parse_quad(j.at(1).get<std::string>()));
}

double approx(const Quad& q) { return static_cast<double>(q.approx()); }

}  // namespace

json point_to_json(const SurfacePoint& p) {
    return json{{"poly", p.poly}, {"pos", vec_json(p.pos)}, {"label", p.label}};
}

SurfacePoint point_from_json(const json& j) {
    SurfacePoint p;
    p.poly = j.at("poly").get<size_t>();
    p.pos = vec_from(j.at("pos"));
    if (j.contains("label")) p.label = j.at("label").get<std::string>();
    return p;
}

json surface_to_json(const TranslationSurface& s) {
    json j;
    j["disc"] = s.disc.str();
    json polys = json::array();
    for (const Polygon& p : s.polys) {
        json verts = json::array();
        for (const Vec& v : p.verts) verts.push_back(vec_json(v));
        polys.push_back(verts);
    }
    j["polygons"] = polys;
    json gl = json::array();
    for (const Gluing& g : s.gluings)
        gl.push_back(json::array({json::array({g.a.poly, g.a.edge}),
                                  json::array({g.b.poly, g.b.edge})}));
    j["gluings"] = gl;
    json mk = json::array();
    for (const SurfacePoint& m : s.marked) mk.push_back(point_to_json(m));
    j["marked_points"] = mk;
    return j;
}

TranslationSurface surface_from_json(const json& j) {
    std::vector<Polygon> polys;
    for (const json& pj : j.at("polygons")) {
        Polygon p;
        for (const json& vj : pj) p.verts.push_back(vec_from(vj));
        polys.push_back(std::move(p));
    }
    std::vector<Gluing> gluings;
    for (const json& gj : j.at("gluings")) {
        Gluing g;
        g.a = {gj.at(0).at(0).get<size_t>(), gj.at(0).at(1).get<size_t>()};
        g.b = {gj.at(1).at(0).get<size_t>(), gj.at(1).at(1).get<size_t>()};
        gluings.push_back(g);
    }
    std::vector<SurfacePoint> marked;
    if (j.contains("marked_points"))
        for (const json& mj : j.at("marked_points")) marked.push_back(point_from_json(mj));
    return TranslationSurface::assemble(std::move(polys), std::move(gluings),
                                        std::move(marked));
}

std::string surface_to_svg(const TranslationSurface& s,
                           const std::vector<SurfacePoint>& solid,
                           const std::vector<SurfacePoint>& hollow,
                           const std::vector<Segment>& segments) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Polygon& p : s.polys)
        for (const Vec& v : p.verts) {
            double x = approx(v.x), y = approx(v.y);
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    double span = std::max(xmax - xmin, ymax - ymin);
    if (span <= 0) span = 1;
    double margin = 0.05 * span;
    double scale = 560.0 / (span + 2 * margin);
    auto X = [&](double x) { return (x - xmin + margin) * scale + 20; };
    auto Y = [&](double y) { return 600 - ((y - ymin + margin) * scale + 20); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
           "viewBox=\"0 0 600 600\">\n";
    for (const Polygon& p : s.polys) {
        out << "<polygon fill=\"none\" stroke=\"black\" points=\"";
        for (const Vec& v : p.verts)
            out << X(approx(v.x)) << "," << Y(approx(v.y)) << " ";
        out << "\"/>\n";
    }
    for (size_t gi = 0; gi < s.gluings.size(); ++gi) {
        for (const EdgeRef& er : {s.gluings[gi].a, s.gluings[gi].b}) {
            const Polygon& p = s.polys[er.poly];
            Vec m = Quad(Rat(1, 2)) *
                    (p.verts[er.edge] + p.verts[(er.edge + 1) % p.size()]);
            out << "<text x=\"" << X(approx(m.x)) << "\" y=\"" << Y(approx(m.y))
                << "\" font-size=\"12\">" << char('a' + gi % 26)
                << (gi / 26 ? std::to_string(gi / 26) : "") << "</text>\n";
        }
    }
    for (const Segment& sg : segments) {
        Vec a = sg.start.pos, b = sg.start.pos + sg.holonomy;
        out << "<line stroke=\"blue\" stroke-dasharray=\"4 2\" x1=\""
            << X(approx(a.x)) << "\" y1=\"" << Y(approx(a.y)) << "\" x2=\""
            << X(approx(b.x)) << "\" y2=\"" << Y(approx(b.y)) << "\"/>\n";
    }
    for (const SurfacePoint& p : solid)
        out << "<circle fill=\"black\" r=\"4\" cx=\"" << X(approx(p.pos.x))
            << "\" cy=\"" << Y(approx(p.pos.y)) << "\"/>\n";
    for (const SurfacePoint& p : hollow)
        out << "<circle fill=\"white\" stroke=\"black\" r=\"4\" cx=\""
            << X(approx(p.pos.x)) << "\" cy=\"" << Y(approx(p.pos.y)) << "\"/>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace fb
