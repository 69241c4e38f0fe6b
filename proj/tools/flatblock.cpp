// flatblock: exact flat-surface toolkit command line.
// All numeric output is exact field-element strings; runs are deterministic.

#include <CLI11.hpp>
#include <json.hpp>

#include "flatblock/blocking.hpp"
#include "flatblock/golden.hpp"
#include "flatblock/json_io.hpp"
#include "flatblock/prototypes.hpp"
#include "flatblock/surface.hpp"
#include "flatblock/unfolding.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace fb;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<Rat> parse_angles(const std::string& s) {
    std::vector<Rat> out;
    for (const std::string& t : split(s, ',')) out.push_back(parse_rat(t));
    if (out.empty()) throw Error("ParseError", "empty angle list");
    return out;
}

std::vector<std::optional<Quad>> parse_lengths(const std::string& s) {
    std::vector<std::optional<Quad>> out;
    for (const std::string& t : split(s, ','))
        out.push_back(t == "-" ? std::optional<Quad>{} : std::optional<Quad>{parse_quad(t)});
    return out;
}

// "poly:x:y[:label]"
SurfacePoint parse_point(const std::string& s) {
    std::vector<std::string> parts = split(s, ':');
    if (parts.size() < 3) throw Error("ParseError", "point must be poly:x:y, got '" + s + "'");
    SurfacePoint p;
    p.poly = std::stoul(parts[0]);
    p.pos = Vec(parse_quad(parts[1]), parse_quad(parts[2]));
    if (parts.size() > 3) p.label = parts[3];
    return p;
}

TranslationSurface load_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileNotFound", "cannot open '" + path + "'");
    json j;
    in >> j;
    return surface_from_json(j);
}

json quad_vec(const Vec& v) { return json::array({v.x.str(), v.y.str()}); }

json segment_json(const Segment& sg) {
    json crossings = json::array();
    for (const auto& [label, t] : sg.crossings)
        crossings.push_back(json{{"label", label}, {"t", t.str()}});
    return json{{"start", point_to_json(sg.start)},
                {"end", point_to_json(sg.end)},
                {"holonomy", quad_vec(sg.holonomy)},
                {"norm2", sg.holonomy.norm2().str()},
                {"crossings", crossings}};
}

json cylinder_json(const Cylinder& c) {
    json bot = json::array(), top = json::array();
    for (const Quad& q : c.bottom_lengths) bot.push_back(q.str());
    for (const Quad& q : c.top_lengths) top.push_back(q.str());
    return json{{"circumference", c.circumference.str()},
                {"height", c.height.str()},
                {"modulus", c.modulus().str()},
                {"bottom_lengths", bot},
                {"top_lengths", top}};
}

const char* kind_name(BlockingVerdict::Kind k) {
    switch (k) {
        case BlockingVerdict::Kind::BlockedSelf: return "BlockedSelf";
        case BlockingVerdict::Kind::BlockedPair: return "BlockedPair";
        case BlockingVerdict::Kind::NotBlocked: return "NotBlocked";
        default: return "AllPairsBlocked";
    }
}

json verdict_json(const BlockingVerdict& v) {
    json j;
    j["kind"] = kind_name(v.kind);
    j["subject_vertices"] = v.subject_vertices;
    json subs = json::array();
    for (const SurfacePoint& p : v.subjects) subs.push_back(point_to_json(p));
    j["subjects"] = subs;
    j["blocking_set"] = v.blocking_set;
    json bp = json::array();
    for (const SurfacePoint& p : v.blocking_points) bp.push_back(point_to_json(p));
    j["blocking_points"] = bp;
    if (v.witness) j["witness"] = segment_json(*v.witness);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

json verify_json(const VerifyResult& r, const Quad& lmax) {
    json j;
    j["all_blocked_up_to"] = r.all_blocked ? json(lmax.str()) : json(nullptr);
    j["counterexample"] =
        r.counterexample ? segment_json(*r.counterexample) : json(nullptr);
    return j;
}

void write_svg(const std::string& path, const TranslationSurface& s,
               const std::vector<SurfacePoint>& solid = {},
               const std::vector<SurfacePoint>& hollow = {},
               const std::vector<Segment>& segs = {}) {
    std::ofstream out(path);
    if (!out) throw Error("FileError", "cannot write '" + path + "'");
    out << surface_to_svg(s, solid, hollow, segs);
}

Polygon table_from(const std::string& angles_csv, const std::string& lengths_csv,
                   std::vector<std::string>& warnings) {
    std::vector<Rat> ang = parse_angles(angles_csv);
    if (!lengths_csv.empty()) return polygon_from_sides(ang, parse_lengths(lengths_csv));
    if (ang.size() == 3) return triangle(ang[0], ang[1], ang[2], Quad(1));
    // without lengths a k>3 table is built with generic unit scales
    std::vector<std::optional<Quad>> scales(ang.size());
    for (size_t i = 0; i + 2 < ang.size(); ++i) scales[i] = Quad(1);
    warnings.push_back("no --lengths given: using generic unit side scales");
    return polygon_from_sides(ang, scales);
}

int emit(const std::string& command, const json& payload,
         const std::vector<std::string>& warnings) {
    json out;
    out["status"] = "ok";
    out["command"] = command;
    out["payload"] = payload;
    out["warnings"] = warnings;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tools for flat surfaces, billiard unfoldings, and finite blocking"};
    app.require_subcommand(1);

    std::string angles, lengths, surface_path, from_s, to_s, set_s, probes_s;
    std::string direction_s, t_s = "0/1", svg_path, kind, verify_s, maxlen_s;
    long long disc = 0;
    int spin = -1;
    long long tb = 0, tc = 0, te = 0;
    bool want_surface = false, allow_cone = false;

    CLI::App* classify = app.add_subcommand("classify", "classify a billiard table's unfolding");
    classify->add_option("--angles", angles, "angles as multiples of pi, e.g. 1/8,3/8,1/2")->required();
    classify->add_option("--lengths", lengths, "side scales ('-' for the two solved ones)");

    CLI::App* protos = app.add_subcommand("prototypes", "enumerate eigenform prototype triples");
    protos->add_option("--disc", disc, "discriminant D")->required();
    protos->add_option("--spin", spin, "spin component filter (0 or 1)");
    protos->add_flag("--surface", want_surface, "include the L-shaped surface of the first triple");
    protos->add_option("--b", tb, "pick the triple with this b");
    protos->add_option("--c", tc, "pick the triple with this c");
    protos->add_option("--e", te, "pick the triple with this e");

    CLI::App* surf = app.add_subcommand("surface", "construct a surface and print its JSON");
    surf->add_option("kind", kind, "unfold | tetromino | prototype | m0")->required();
    surf->add_option("--angles", angles, "table angles (unfold)");
    surf->add_option("--lengths", lengths, "side scales (unfold) or x1,x2,y1,y2 (m0)");
    surf->add_option("--t", t_s, "rel-flow parameter (tetromino)");
    surf->add_option("--disc", disc, "discriminant (prototype)");
    surf->add_option("--b", tb, "prototype b");
    surf->add_option("--c", tc, "prototype c");
    surf->add_option("--e", te, "prototype e");
    surf->add_option("--svg", svg_path, "also write an SVG figure");

    CLI::App* cyl = app.add_subcommand("cylinders", "cylinder decomposition in a direction");
    cyl->add_option("--surface", surface_path, "surface JSON file")->required();
    cyl->add_option("--direction", direction_s, "direction dx,dy")->required();

    CLI::App* segs = app.add_subcommand("segments", "straight segments between two points");
    segs->add_option("--surface", surface_path, "surface JSON file")->required();
    segs->add_option("--from", from_s, "start point poly:x:y")->required();
    segs->add_option("--to", to_s, "end point poly:x:y")->required();
    segs->add_option("--max-len", maxlen_s, "length bound")->required();
    segs->add_option("--probes", probes_s, "probe points, ';'-separated");
    segs->add_flag("--allow-cone", allow_cone, "allow cone-point endpoints");

    CLI::App* block = app.add_subcommand("block", "finite-blocking verdicts");
    block->add_option("--angles", angles, "table angles");
    block->add_option("--lengths", lengths, "table side scales");
    block->add_option("--verify", verify_s, "verify table verdicts on the unfolding up to this length");
    block->add_option("--surface", surface_path, "surface JSON file (verification mode)");
    block->add_option("--from", from_s, "start point poly:x:y");
    block->add_option("--to", to_s, "end point poly:x:y");
    block->add_option("--set", set_s, "blocking points, ';'-separated");
    block->add_option("--max-len", maxlen_s, "length bound");

    CLI::App* relf = app.add_subcommand("relflow", "golden tetromino rel-flow state");
    relf->add_option("--t", t_s, "flow time, exact (e.g. 1/2 or 0/1+1/10*sqrt(5))");
    relf->add_option("--svg", svg_path, "also write an SVG figure");

    CLI::App* render = app.add_subcommand("render", "render a surface JSON file to SVG");
    render->add_option("--surface", surface_path, "surface JSON file")->required();
    render->add_option("--svg", svg_path, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    std::vector<std::string> warnings;
    try {
        if (classify->parsed()) {
            std::vector<Rat> ang = parse_angles(angles);
            SphereConeData cone = pillowcase_double(ang);
            HypVerdict hyp = hyperelliptic_criterion(cone);
            ClassifyResult cls = classify_genus2(ang);
            json payload;
            payload["d"] = cone.d;
            payload["genus"] = unfolding_genus(ang);
            json pc = json::array();
            for (const Cone& c : cone.cones)
                pc.push_back(json{{"angle", c.angle.str()}, {"mult", c.mult}});
            payload["pillowcase"] = pc;
            payload["hyperelliptic"] =
                json{{"kind", hyp.kind == HypKind::DeckInvolution ? "DeckInvolution"
                              : hyp.kind == HypKind::Special      ? "Special"
                                                                  : "NotHyperelliptic"},
                     {"witness", hyp.witness}};
            if (hyp.readings_disagree)
                warnings.push_back("hyperelliptic pattern readings disagree; adopted the stricter one");
            if (cls.family) {
                std::string label = cls.family->orbit_closure;
                if (cls.family->n > 0) label += " (n=" + std::to_string(cls.family->n) + ")";
                payload["genus2_family"] = label;
                payload["family"] = cls.family->family;
                payload["orbit_closure"] = cls.family->orbit_closure;
                payload["row"] = cls.family->row;
            } else {
                payload["genus2_family"] = nullptr;
            }
            if (cls.family && (ang.size() == 3 || !lengths.empty())) {
                Polygon t = table_from(angles, lengths, warnings);
                payload["torus_cover"] = torus_cover_check(t);
            } else {
                payload["torus_cover"] = nullptr;
                if (cls.family)
                    warnings.push_back("torus cover test needs --lengths for k > 3 tables");
            }
            return emit("classify", payload, warnings);
        }

        if (protos->parsed()) {
            std::optional<int> spin_filter;
            if (spin >= 0) spin_filter = spin;
            std::vector<PrototypeTriple> triples = enumerate_prototypes(disc, spin_filter);
            json rows = json::array();
            for (const PrototypeTriple& t : triples) {
                GroupAnalysis ga = blocking_group_analysis(t);
                std::optional<int> sp = spin_invariant(t);
                rows.push_back(json{{"b", t.b},
                                    {"c", t.c},
                                    {"e", t.e},
                                    {"lambda", t.lambda().str()},
                                    {"spin", sp ? json(*sp) : json(nullptr)},
                                    {"h_perm", horizontal_twist_perm(t).cycles()},
                                    {"v_perm", vertical_twist_perm(t).cycles()},
                                    {"orbits", ga.orbits},
                                    {"condition_met", ga.condition_met},
                                    {"conclusion", ga.conclusion}});
            }
            json payload;
            payload["disc"] = disc;
            payload["rows"] = rows;
            if (want_surface) {
                const PrototypeTriple* pick = nullptr;
                for (const PrototypeTriple& t : triples)
                    if (tb == 0 || (t.b == tb && t.c == tc && t.e == te)) {
                        pick = &t;
                        break;
                    }
                if (!pick) throw Error("NoSuchTriple", "requested (b,c,e) not in the enumeration");
                payload["surface"] = surface_to_json(build_prototype_surface(*pick));
            }
            return emit("prototypes", payload, warnings);
        }

        if (surf->parsed()) {
            TranslationSurface s;
            std::vector<SurfacePoint> solid, hollow;
            if (kind == "unfold") {
                Polygon t = table_from(angles, lengths, warnings);
                s = build_unfolding(t);
            } else if (kind == "tetromino") {
                RelFlowState st = rel_flow(parse_quad(t_s));
                s = st.surface;
                s.marked = st.tracked;
                for (const SurfacePoint& p : st.tracked)
                    (p.label[0] == 'w' ? solid : hollow).push_back(p);
            } else if (kind == "prototype") {
                PrototypeTriple t{disc, tb, tc, te};
                if (!t.valid()) throw Error("InvalidTriple", "need valid --disc --b --c --e");
                s = build_prototype_surface(t);
                solid = central_symmetry_weierstrass(s);
            } else if (kind == "m0") {
                std::vector<std::optional<Quad>> ls = parse_lengths(lengths.empty() ? "1,1,1,1" : lengths);
                if (ls.size() != 4 || !ls[0] || !ls[1] || !ls[2] || !ls[3])
                    throw Error("ParseError", "m0 needs --lengths x1,x2,y1,y2");
                s = m0_surface(*ls[0], *ls[1], *ls[2], *ls[3]);
                M0Candidates mc = periodic_point_candidates_m0(s);
                hollow = mc.candidates;
            } else {
                throw Error("UsageError", "kind must be unfold|tetromino|prototype|m0");
            }
            if (!svg_path.empty()) write_svg(svg_path, s, solid, hollow);
            return emit("surface", surface_to_json(s), warnings);
        }

        if (cyl->parsed()) {
            TranslationSurface s = load_surface(surface_path);
            std::vector<std::string> parts = split(direction_s, ',');
            if (parts.size() != 2) throw Error("ParseError", "direction must be dx,dy");
            Vec dir(parse_quad(parts[0]), parse_quad(parts[1]));
            CylinderResult r = cylinder_decomposition(s, dir);
            json payload;
            payload["direction"] = quad_vec(dir);
            payload["periodic"] = r.periodic;
            json cs = json::array();
            for (const Cylinder& c : r.cylinders) cs.push_back(cylinder_json(c));
            payload["cylinders"] = cs;
            if (!r.periodic) payload["witness"] = r.witness;
            return emit("cylinders", payload, warnings);
        }

        if (segs->parsed()) {
            TranslationSurface s = load_surface(surface_path);
            std::vector<SurfacePoint> probes;
            for (const std::string& p : split(probes_s, ';')) probes.push_back(parse_point(p));
            for (size_t i = 0; i < probes.size(); ++i)
                if (probes[i].label.empty()) probes[i].label = "p" + std::to_string(i + 1);
            std::vector<Segment> found = segments_between(
                s, parse_point(from_s), parse_point(to_s), parse_quad(maxlen_s), probes, allow_cone);
            json payload;
            payload["count"] = found.size();
            json arr = json::array();
            for (const Segment& sg : found) arr.push_back(segment_json(sg));
            payload["segments"] = arr;
            return emit("segments", payload, warnings);
        }

        if (block->parsed()) {
            json payload;
            if (!surface_path.empty()) {
                TranslationSurface s = load_surface(surface_path);
                if (from_s.empty() || to_s.empty() || maxlen_s.empty())
                    throw Error("UsageError", "surface mode needs --from, --to, --max-len");
                std::vector<SurfacePoint> set;
                for (const std::string& p : split(set_s, ';')) set.push_back(parse_point(p));
                Quad lmax = parse_quad(maxlen_s);
                VerifyResult r = verify_blocking(s, parse_point(from_s), parse_point(to_s), set, lmax);
                payload = verify_json(r, lmax);
                payload["certificate_note"] =
                    "bounded certificate up to the given length, not a blocking proof";
            } else {
                if (angles.empty()) throw Error("UsageError", "need --angles or --surface");
                Polygon t = table_from(angles, lengths, warnings);
                std::vector<BlockingVerdict> vs = polygon_blocking(t);
                json arr = json::array();
                for (const BlockingVerdict& v : vs) arr.push_back(verdict_json(v));
                payload["verdicts"] = arr;
                if (!verify_s.empty()) {
                    Quad lmax = parse_quad(verify_s);
                    TranslationSurface s = build_unfolding(t);
                    std::vector<SurfacePoint> w = central_symmetry_weierstrass(s);
                    json checks = json::array();
                    for (const BlockingVerdict& v : vs) {
                        if (v.kind != BlockingVerdict::Kind::BlockedSelf &&
                            v.kind != BlockingVerdict::Kind::BlockedPair)
                            continue;
                        SurfacePoint p{0, t.verts[v.subject_vertices.front()], "p"};
                        SurfacePoint q{0, t.verts[v.subject_vertices.back()], "q"};
                        std::vector<SurfacePoint> set;
                        for (const SurfacePoint& fp : w)
                            if (!s.same_point(fp, p) && !s.same_point(fp, q)) set.push_back(fp);
                        VerifyResult r = verify_blocking(s, p, q, set, lmax);
                        checks.push_back(verify_json(r, lmax));
                    }
                    payload["verification"] = checks;
                    payload["certificate_note"] =
                        "bounded certificate up to the given length, not a blocking proof";
                }
            }
            return emit("block", payload, warnings);
        }

        if (relf->parsed()) {
            Quad t = parse_quad(t_s);
            RelFlowState st = rel_flow(t);
            Quad phi = golden_ratio();
            json payload;
            payload["t"] = t.str();
            Quad h1 = Quad(1) - t, h2 = phi * phi + t, h3 = Quad(2) * phi - t;
            payload["heights"] = json::array({h1.str(), h2.str(), h3.str()});
            payload["moduli"] = json::array(
                {h1.str(), (h2 / (phi * phi)).str(), (h3 / phi).str()});
            payload["decagon_member"] = decagon_membership(t);
            json gp = json::array(), wp = json::array(), zs = json::array();
            std::vector<SurfacePoint> solid, hollow;
            for (const SurfacePoint& p : st.tracked) {
                if (p.label[0] == 'g') { gp.push_back(point_to_json(p)); hollow.push_back(p); }
                if (p.label[0] == 'w') { wp.push_back(point_to_json(p)); solid.push_back(p); }
                if (p.label[0] == 'z') zs.push_back(point_to_json(p));
            }
            payload["golden_points"] = gp;
            payload["weierstrass_points"] = wp;
            payload["zeros"] = zs;
            if (!svg_path.empty()) write_svg(svg_path, st.surface, solid, hollow);
            return emit("relflow", payload, warnings);
        }

        if (render->parsed()) {
            TranslationSurface s = load_surface(surface_path);
            write_svg(svg_path, s, s.marked, {});
            json payload;
            payload["svg"] = svg_path;
            return emit("render", payload, warnings);
        }
    } catch (const Error& e) {
        json out;
        out["status"] = "error";
        out["command"] = app.get_subcommands().empty() ? "" : app.get_subcommands()[0]->get_name();
        out["payload"] = json{{"code", e.code}, {"message", e.what()}};
        out["warnings"] = warnings;
        std::cout << out.dump(2) << "\n";
        return 1;
    }
    return 2;
}
