#include "scenic/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "scenic/errors.hpp"

namespace scenic::io {

namespace {

using routing::Direction;
using routing::Requirement;
using routing::Route;
using routing::RouteStep;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw DataError(where.empty() ? what : where + ": " + what);
}

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& member(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(child(where, key), "missing");
    return *it;
}

double number(const Json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(where, "expected a finite number");
    return x;
}

int integer(const Json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<int>();
}

bool boolean(const Json& v, const std::string& where) {
    if (!v.is_boolean()) fail(where, "expected true or false");
    return v.get<bool>();
}

std::string text(const Json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
}

const Json& array(const Json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array");
    return v;
}

Point2 point(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) fail(where, "expected [x, y]");
    return {number(v[0], child(where, 0)), number(v[1], child(where, 1))};
}

Json point_json(Point2 p) { return Json::array({p.x, p.y}); }

std::vector<int> int_list(const Json& v, const std::string& where) {
    std::vector<int> out;
    for (std::size_t i = 0; i < array(v, where).size(); ++i) out.push_back(integer(v[i], child(where, i)));
    return out;
}

Json pairs_json(const std::vector<PairId>& pairs) {
    Json out = Json::array();
    for (const auto& p : pairs) out.push_back(Json::array({p.first, p.second}));
    return out;
}

std::vector<PairId> pairs_from(const Json& v, const std::string& where) {
    std::vector<PairId> out;
    for (std::size_t i = 0; i < array(v, where).size(); ++i) {
        const std::vector<int> ab = int_list(v[i], child(where, i));
        if (ab.size() != 2) fail(child(where, i), "expected [first, second]");
        out.push_back({ab[0], ab[1]});
    }
    return out;
}

const char* color_name(Color c) {
    switch (c) {
        case Color::Red: return "red";
        case Color::Blue: return "blue";
        case Color::Landmark: return "landmark";
    }
    return "red";
}

Color color_from(const Json& v, const std::string& where) {
    const std::string s = text(v, where);
    if (s == "red") return Color::Red;
    if (s == "blue") return Color::Blue;
    if (s == "landmark") return Color::Landmark;
    fail(where, "color must be red, blue or landmark");
}

const char* mode_name(PairMode m) { return m == PairMode::Bipartite ? "bipartite" : "all-pairs"; }

PairMode mode_from(const Json& v, const std::string& where) {
    const std::string s = text(v, where);
    if (s == "bipartite") return PairMode::Bipartite;
    if (s == "all-pairs") return PairMode::AllPairs;
    fail(where, "mode must be bipartite or all-pairs");
}

const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Intersection: return "intersection";
        case NodeKind::BoundaryLeaf: return "boundary-leaf";
        case NodeKind::CircleAnchor: return "circle-anchor";
    }
    return "intersection";
}

NodeKind kind_from(const Json& v, const std::string& where) {
    const std::string s = text(v, where);
    if (s == "intersection") return NodeKind::Intersection;
    if (s == "boundary-leaf") return NodeKind::BoundaryLeaf;
    if (s == "circle-anchor") return NodeKind::CircleAnchor;
    fail(where, "unknown node kind");
}

const char* requirement_name(Requirement r) {
    switch (r) {
        case Requirement::OnlyScenic: return "only-scenic";
        case Requirement::Completeness: return "completeness";
        case Requirement::RouteLength: return "route-length";
        case Requirement::RepeatedEdges: return "repeated-edges";
        case Requirement::EdgeCount: return "edge-count";
    }
    return "";
}

Json box_json(const Box& b) {
    return {{"xmin", b.xmin}, {"ymin", b.ymin}, {"xmax", b.xmax}, {"ymax", b.ymax}};
}

Box box_from(const Json& v, const std::string& where) {
    Box b{number(member(v, "xmin", where), child(where, "xmin")),
          number(member(v, "ymin", where), child(where, "ymin")),
          number(member(v, "xmax", where), child(where, "xmax")),
          number(member(v, "ymax", where), child(where, "ymax"))};
    if (!(b.xmin < b.xmax) || !(b.ymin < b.ymax)) fail(where, "bounding box is empty");
    return b;
}

Json vector_json(const lattice::VectorD& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

lattice::VectorD vector_from(const Json& v, const std::string& where) {
    array(v, where);
    lattice::VectorD out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = number(v[i], child(where, i));
    return out;
}

Json summary_json(const ScenicGraph& g) {
    int red = 0, blue = 0, landmarks = 0, leaves = 0, anchors = 0;
    for (const auto& s : g.sites) {
        red += s.color == Color::Red;
        blue += s.color == Color::Blue;
        landmarks += s.color == Color::Landmark;
    }
    for (const auto& n : g.nodes) {
        leaves += n.kind == NodeKind::BoundaryLeaf;
        anchors += n.kind == NodeKind::CircleAnchor;
    }
    return {{"red", red},
            {"blue", blue},
            {"landmarks", landmarks},
            {"intersections", g.intersection_count()},
            {"edges", g.edges.size()},
            {"boundary_leaves", leaves},
            {"circle_anchors", anchors},
            {"curves", g.curves.size()},
            {"pairs", g.all_pairs.size()},
            {"disconnected_coverage", g.disconnected_coverage}};
}

}  // namespace

InputDocument parse_input(const Json& doc) {
    InputDocument out;
    if (!doc.is_object()) fail("", "input document must be a JSON object");
    if (doc.contains("mode")) out.config.mode = mode_from(doc["mode"], "/mode");

    const Json& points = array(member(doc, "points", ""), "/points");
    if (points.empty()) fail("/points", "no points given");
    std::set<int> ids;
    int dimension = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string where = child("/points", i);
        const Json& p = points[i];
        if (!p.is_object()) fail(where, "expected an object");
        lattice::ColoredPointD pd;
        pd.id = p.contains("id") ? integer(p["id"], child(where, "id")) : static_cast<int>(i);
        if (!ids.insert(pd.id).second) fail(child(where, "id"), "duplicate point id " + std::to_string(pd.id));
        if (p.contains("coords")) {
            pd.coords = vector_from(p["coords"], child(where, "coords"));
        } else {
            const double x = number(member(p, "x", where), child(where, "x"));
            const double y = number(member(p, "y", where), child(where, "y"));
            pd.coords = lattice::VectorD(2);
            pd.coords << x, y;
        }
        if (pd.coords.size() < 2) fail(where, "points need at least two coordinates");
        if (dimension < 0) dimension = static_cast<int>(pd.coords.size());
        if (pd.coords.size() != dimension)
            fail(where, "expected " + std::to_string(dimension) + " coordinates");
        pd.color = p.contains("color") ? color_from(p["color"], child(where, "color")) : Color::Landmark;
        if (!p.contains("color") && out.config.mode == PairMode::Bipartite)
            fail(child(where, "color"), "missing");
        double weight = 1.0;
        if (p.contains("weight")) {
            weight = number(p["weight"], child(where, "weight"));
            if (!(weight > 0.0)) fail(child(where, "weight"), "weight must be positive");
        }
        if (pd.color == Color::Landmark && out.config.mode == PairMode::Bipartite)
            fail(child(where, "color"), "landmark points require all-pairs mode");
        if (dimension == 2)
            out.config.points.push_back({pd.id, {pd.coords[0], pd.coords[1]}, pd.color, weight});
        out.points_d.push_back(std::move(pd));
    }
    out.dimension = dimension;
    if (out.config.mode == PairMode::Bipartite) {
        const bool red = std::any_of(points.begin(), points.end(),
                                     [](const Json& p) { return p.value("color", "") == "red"; });
        const bool blue = std::any_of(points.begin(), points.end(),
                                      [](const Json& p) { return p.value("color", "") == "blue"; });
        if (!red || !blue) fail("/points", "bipartite mode needs at least one red and one blue point");
    }

    if (doc.contains("box")) {
        const Json& box = doc["box"];
        if (!box.is_object()) fail("/box", "expected an object");
        if (box.contains("expand")) {
            const double f = number(box["expand"], "/box/expand");
            if (!(f >= 1.0)) fail("/box/expand", "box expand factor must be at least 1");
            out.config.box = AutoBox{f};
        } else if (box.contains("lo")) {
            lattice::BoxD b{vector_from(box["lo"], "/box/lo"), vector_from(member(box, "hi", "/box"), "/box/hi")};
            if (b.lo.size() != dimension || b.hi.size() != dimension)
                fail("/box", "box dimension does not match the points");
            if (!(b.lo.array() < b.hi.array()).all()) fail("/box", "bounding box is empty");
            if (dimension == 2) out.config.box = Box{b.lo[0], b.lo[1], b.hi[0], b.hi[1]};
            out.box_d = b;
        } else {
            const Box b = box_from(box, "/box");
            if (dimension != 2) fail("/box", "use lo/hi arrays for points with more than two coordinates");
            out.config.box = b;
            lattice::BoxD bd{lattice::VectorD(2), lattice::VectorD(2)};
            bd.lo << b.xmin, b.ymin;
            bd.hi << b.xmax, b.ymax;
            out.box_d = bd;
        }
    }
    if (doc.contains("tolerance")) {
        out.config.eps_abs = number(doc["tolerance"], "/tolerance");
        if (!(out.config.eps_abs > 0.0)) fail("/tolerance", "tolerance must be positive");
    }
    if (doc.contains("max_curves")) {
        const int cap = integer(doc["max_curves"], "/max_curves");
        if (cap < 1) fail("/max_curves", "must be at least 1");
        out.config.max_curves = static_cast<std::size_t>(cap);
    }
    if (doc.contains("routing")) {
        const Json& r = doc["routing"];
        if (!r.is_object()) fail("/routing", "expected an object");
        if (r.contains("top_k")) out.routing.top_k = integer(r["top_k"], "/routing/top_k");
        if (r.contains("alpha")) out.routing.alpha = number(r["alpha"], "/routing/alpha");
        if (r.contains("distance_bound"))
            out.routing.distance_bound = number(r["distance_bound"], "/routing/distance_bound");
        if (r.contains("order")) {
            out.order = text(r["order"], "/routing/order");
            if (out.order != "sec2" && out.order != "sec3") fail("/routing/order", "order must be sec2 or sec3");
        }
    }
    if (doc.contains("lattice")) {
        const Json& l = doc["lattice"];
        if (!l.is_object()) fail("/lattice", "expected an object");
        if (l.contains("depth_limit")) out.depth_limit = integer(l["depth_limit"], "/lattice/depth_limit");
        if (l.contains("max_flats")) {
            const int cap = integer(l["max_flats"], "/lattice/max_flats");
            if (cap < 1) fail("/lattice/max_flats", "must be at least 1");
            out.max_flats = static_cast<std::size_t>(cap);
        }
    }
    if (dimension == 2) validate(out.config);
    return out;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DataError(path.string() + ": invalid JSON: " + e.what());
    }
}

InputDocument parse_config(const std::filesystem::path& path) {
    try {
        return parse_input(read_json(path));
    } catch (const CapExceeded&) {
        throw;
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + path.string());
        out << text;
        out.flush();
        if (!out) throw DataError("cannot write " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw DataError("cannot write " + path.string());
    }
}

routing::RequirementOrder order_preset(const std::string& name) {
    if (name == "sec2") return routing::RequirementOrder::only_scenic_first();
    if (name == "sec3") return routing::RequirementOrder::completeness_first();
    throw DataError("unknown requirement order '" + name + "' (expected sec2 or sec3)");
}

Json graph_to_json(const ScenicGraph& g) {
    Json doc;
    doc["format"] = "scenic-graph/1";
    doc["mode"] = mode_name(g.mode);
    doc["box"] = box_json(g.box);
    doc["tolerance"] = {{"eps_abs", g.tolerance.eps_abs}, {"scale", g.tolerance.scale}};
    doc["summary"] = summary_json(g);

    Json sites = Json::array();
    for (const auto& s : g.sites)
        sites.push_back({{"id", s.id}, {"x", s.coords.x}, {"y", s.coords.y},
                         {"color", color_name(s.color)}, {"weight", s.weight}});
    doc["sites"] = std::move(sites);
    doc["pairs"] = pairs_json(g.all_pairs);

    Json curves = Json::array();
    for (const auto& c : g.curves) {
        Json cj = {{"id", c.id}};
        if (const auto* l = std::get_if<geo::LineCurve>(&c.geometry)) {
            cj["type"] = "line";
            cj["anchor"] = point_json(l->anchor);
            cj["direction"] = point_json(l->direction);
        } else {
            const auto& circle = std::get<geo::CircleCurve>(c.geometry);
            cj["type"] = "circle";
            cj["center"] = point_json(circle.center);
            cj["radius"] = circle.radius;
        }
        cj["pairs"] = pairs_json(c.pairs);
        curves.push_back(std::move(cj));
    }
    doc["curves"] = std::move(curves);

    Json nodes = Json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        nodes.push_back({{"id", i}, {"kind", kind_name(n.kind)}, {"x", n.coords.x},
                         {"y", n.coords.y}, {"curves", n.curves}});
    }
    doc["nodes"] = std::move(nodes);

    Json edges = Json::array();
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        Json geom;
        if (const auto* s = std::get_if<Segment>(&e.geometry)) {
            geom = {{"type", "segment"}, {"from", point_json(s->from)}, {"to", point_json(s->to)}};
        } else {
            const auto& a = std::get<geo::Arc>(e.geometry);
            geom = {{"type", "arc"},
                    {"center", point_json(a.circle.center)},
                    {"radius", a.circle.radius},
                    {"start_angle", a.start_angle},
                    {"sweep", a.sweep}};
        }
        edges.push_back({{"id", i}, {"u", e.u}, {"v", e.v}, {"curve", e.curve},
                         {"length", e.length}, {"pairs", pairs_json(e.pairs)},
                         {"geometry", std::move(geom)}});
    }
    doc["edges"] = std::move(edges);
    return doc;
}

ScenicGraph graph_from_json(const Json& doc) {
    ScenicGraph g;
    if (!doc.is_object()) fail("", "graph document must be a JSON object");
    if (text(member(doc, "format", ""), "/format") != "scenic-graph/1")
        fail("/format", "not a scenic graph document");
    g.mode = mode_from(member(doc, "mode", ""), "/mode");
    g.box = box_from(member(doc, "box", ""), "/box");
    const Json& tol = member(doc, "tolerance", "");
    g.tolerance = {number(member(tol, "eps_abs", "/tolerance"), "/tolerance/eps_abs"),
                   number(member(tol, "scale", "/tolerance"), "/tolerance/scale")};

    const Json& sites = array(member(doc, "sites", ""), "/sites");
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const std::string w = child("/sites", i);
        ColoredPoint s;
        s.id = integer(member(sites[i], "id", w), child(w, "id"));
        s.coords = {number(member(sites[i], "x", w), child(w, "x")),
                    number(member(sites[i], "y", w), child(w, "y"))};
        s.color = color_from(member(sites[i], "color", w), child(w, "color"));
        s.weight = number(member(sites[i], "weight", w), child(w, "weight"));
        if (!(s.weight > 0.0)) fail(child(w, "weight"), "weight must be positive");
        g.sites.push_back(s);
    }
    g.all_pairs = pairs_from(member(doc, "pairs", ""), "/pairs");

    const Json& curves = array(member(doc, "curves", ""), "/curves");
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string w = child("/curves", i);
        const Json& c = curves[i];
        ScenicCurve curve;
        curve.id = integer(member(c, "id", w), child(w, "id"));
        if (curve.id != static_cast<int>(i)) fail(child(w, "id"), "curve ids must equal their index");
        const std::string type = text(member(c, "type", w), child(w, "type"));
        if (type == "line") {
            curve.geometry = geo::LineCurve{point(member(c, "anchor", w), child(w, "anchor")),
                                            point(member(c, "direction", w), child(w, "direction"))};
        } else if (type == "circle") {
            const double r = number(member(c, "radius", w), child(w, "radius"));
            if (!(r > 0.0)) fail(child(w, "radius"), "radius must be positive");
            curve.geometry = geo::CircleCurve{point(member(c, "center", w), child(w, "center")), r};
        } else {
            fail(child(w, "type"), "curve type must be line or circle");
        }
        curve.pairs = pairs_from(member(c, "pairs", w), child(w, "pairs"));
        g.curves.push_back(std::move(curve));
    }
    const int curve_count = static_cast<int>(g.curves.size());

    const Json& nodes = array(member(doc, "nodes", ""), "/nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string w = child("/nodes", i);
        const Json& n = nodes[i];
        if (integer(member(n, "id", w), child(w, "id")) != static_cast<int>(i))
            fail(child(w, "id"), "node ids must equal their index");
        GraphNode node;
        node.kind = kind_from(member(n, "kind", w), child(w, "kind"));
        node.coords = {number(member(n, "x", w), child(w, "x")), number(member(n, "y", w), child(w, "y"))};
        node.curves = int_list(member(n, "curves", w), child(w, "curves"));
        for (int c : node.curves)
            if (c < 0 || c >= curve_count) fail(child(w, "curves"), "unknown curve " + std::to_string(c));
        g.nodes.push_back(std::move(node));
    }
    const int node_count = static_cast<int>(g.nodes.size());

    const Json& edges = array(member(doc, "edges", ""), "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string w = child("/edges", i);
        const Json& e = edges[i];
        if (integer(member(e, "id", w), child(w, "id")) != static_cast<int>(i))
            fail(child(w, "id"), "edge ids must equal their index");
        GraphEdge edge;
        edge.u = integer(member(e, "u", w), child(w, "u"));
        edge.v = integer(member(e, "v", w), child(w, "v"));
        if (edge.u < 0 || edge.u >= node_count) fail(child(w, "u"), "unknown node");
        if (edge.v < 0 || edge.v >= node_count) fail(child(w, "v"), "unknown node");
        edge.curve = integer(member(e, "curve", w), child(w, "curve"));
        if (edge.curve < 0 || edge.curve >= curve_count) fail(child(w, "curve"), "unknown curve");
        edge.length = number(member(e, "length", w), child(w, "length"));
        if (edge.length < 0.0) fail(child(w, "length"), "length must be non-negative");
        edge.pairs = pairs_from(member(e, "pairs", w), child(w, "pairs"));
        const std::string gw = child(w, "geometry");
        const Json& geom = member(e, "geometry", w);
        const std::string type = text(member(geom, "type", gw), child(gw, "type"));
        if (type == "segment") {
            edge.geometry = Segment{point(member(geom, "from", gw), child(gw, "from")),
                                    point(member(geom, "to", gw), child(gw, "to"))};
        } else if (type == "arc") {
            geo::Arc arc;
            arc.circle = {point(member(geom, "center", gw), child(gw, "center")),
                          number(member(geom, "radius", gw), child(gw, "radius"))};
            arc.start_angle = number(member(geom, "start_angle", gw), child(gw, "start_angle"));
            arc.sweep = number(member(geom, "sweep", gw), child(gw, "sweep"));
            edge.geometry = arc;
        } else {
            fail(child(gw, "type"), "geometry type must be segment or arc");
        }
        g.edges.push_back(std::move(edge));
    }
    g.disconnected_coverage = boolean(member(member(doc, "summary", ""), "disconnected_coverage", "/summary"),
                                      "/summary/disconnected_coverage");
    return g;
}

Json route_to_json(const Route& route) {
    Json steps = Json::array();
    for (const auto& s : route.steps) {
        Json sj = {{"edge", s.edge}, {"from", s.from}, {"to", s.to},
                   {"direction", s.direction == Direction::Forward ? "forward" : "backward"},
                   {"scenic", s.scenic}, {"length", s.length}};
        steps.push_back(std::move(sj));
    }
    return {{"algorithm", route.algorithm},
            {"start", route.start},
            {"closed", route.closed},
            {"degenerate", route.degenerate},
            {"fallback", route.fallback},
            {"waypoints", route.waypoints},
            {"skipped_waypoints", route.skipped_waypoints},
            {"nodes", route.node_sequence()},
            {"steps", std::move(steps)}};
}

Route route_from_json(const Json& doc) {
    const std::string w = "";
    Route r;
    r.algorithm = text(member(doc, "algorithm", w), "/algorithm");
    r.start = integer(member(doc, "start", w), "/start");
    r.closed = boolean(member(doc, "closed", w), "/closed");
    if (doc.contains("degenerate")) r.degenerate = boolean(doc["degenerate"], "/degenerate");
    if (doc.contains("fallback")) r.fallback = boolean(doc["fallback"], "/fallback");
    if (doc.contains("waypoints")) r.waypoints = int_list(doc["waypoints"], "/waypoints");
    if (doc.contains("skipped_waypoints"))
        r.skipped_waypoints = int_list(doc["skipped_waypoints"], "/skipped_waypoints");
    const Json& steps = array(member(doc, "steps", w), "/steps");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string sw = child("/steps", i);
        const Json& s = steps[i];
        RouteStep step;
        step.edge = integer(member(s, "edge", sw), child(sw, "edge"));
        step.from = integer(member(s, "from", sw), child(sw, "from"));
        step.to = integer(member(s, "to", sw), child(sw, "to"));
        const std::string dir = text(member(s, "direction", sw), child(sw, "direction"));
        if (dir != "forward" && dir != "backward") fail(child(sw, "direction"), "expected forward or backward");
        step.direction = dir == "forward" ? Direction::Forward : Direction::Backward;
        step.scenic = boolean(member(s, "scenic", sw), child(sw, "scenic"));
        step.length = number(member(s, "length", sw), child(sw, "length"));
        r.steps.push_back(step);
    }
    return r;
}

Json report_to_json(const ScenicGraph& g, const std::vector<Route>& routes, const std::string& order) {
    const routing::RequirementOrder preset = order_preset(order);
    Json doc;
    doc["format"] = "scenic-report/1";
    doc["order"] = order;
    Json priority = Json::array();
    for (Requirement r : preset.priority) priority.push_back(requirement_name(r));
    doc["priority"] = std::move(priority);
    doc["graph"] = summary_json(g);

    std::vector<routing::RouteMetrics> metrics;
    Json rows = Json::array();
    for (const auto& route : routes) {
        const routing::RouteMetrics m = routing::route_metrics(g, route);
        metrics.push_back(m);
        Json rj = route_to_json(route);
        rj["metrics"] = {{"completeness", m.completeness},
                         {"scenic_length", m.scenic_length},
                         {"nonscenic_length", m.nonscenic_length},
                         {"total_length", m.total_length()},
                         {"repeated_length", m.repeated_length},
                         {"edge_count", m.edge_count},
                         {"direction_changes", m.direction_changes}};
        rows.push_back(std::move(rj));
    }
    doc["routes"] = std::move(rows);

    std::vector<std::size_t> rank(routes.size());
    for (std::size_t i = 0; i < rank.size(); ++i) rank[i] = i;
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
        return routing::compare_routes(metrics[a], metrics[b], preset) < 0;
    });
    Json ranking = Json::array();
    for (std::size_t i : rank) ranking.push_back(routes[i].algorithm);
    doc["ranking"] = std::move(ranking);

    Json verdicts = Json::array();
    for (std::size_t a = 0; a < routes.size(); ++a)
        for (std::size_t b = a + 1; b < routes.size(); ++b) {
            const auto c = routing::compare_routes(metrics[a], metrics[b], preset);
            verdicts.push_back({{"a", routes[a].algorithm},
                                {"b", routes[b].algorithm},
                                {"result", c < 0 ? "a-better" : (c > 0 ? "b-better" : "tie")}});
        }
    doc["verdicts"] = std::move(verdicts);
    return doc;
}

Json lattice_to_json(const lattice::FlatLattice& lat, const lattice::FlatRoute& route) {
    Json doc;
    doc["format"] = "scenic-lattice/1";
    doc["dimension"] = lat.ambient;
    doc["box"] = {{"lo", vector_json(lat.box.lo)}, {"hi", vector_json(lat.box.hi)}};
    doc["tolerance"] = lat.tolerance;

    std::vector<int> per_level;
    for (int lv : lat.level) {
        if (lv >= static_cast<int>(per_level.size())) per_level.resize(lv + 1, 0);
        ++per_level[lv];
    }
    doc["levels"] = per_level;

    Json flats = Json::array();
    for (std::size_t i = 0; i < lat.flats.size(); ++i) {
        const auto& f = lat.flats[i];
        Json basis = Json::array();
        for (Eigen::Index c = 0; c < f.basis.cols(); ++c) basis.push_back(vector_json(f.basis.col(c)));
        flats.push_back({{"id", i},
                         {"level", lat.level[i]},
                         {"dim", f.dim()},
                         {"base", vector_json(f.base)},
                         {"basis", std::move(basis)},
                         {"generators", pairs_json({f.generators.begin(), f.generators.end()})},
                         {"incidence", lat.incidence[i]},
                         {"representative", vector_json(lat.representative[i])}});
    }
    doc["flats"] = std::move(flats);
    Json edges = Json::array();
    for (const auto& [i, j] : lat.edges) edges.push_back(Json::array({i, j}));
    doc["edges"] = std::move(edges);

    Json visits = Json::array();
    for (const auto& v : route.visits) {
        const char* hop = "start";
        if (v.hop == lattice::Hop::Adjacent) hop = "adjacent";
        if (v.hop == lattice::Hop::Jump) hop = "jump";
        if (v.hop == lattice::Hop::NonScenic) hop = "non-scenic";
        visits.push_back({{"flat", v.flat}, {"hop", hop}, {"cost", v.cost}});
    }
    doc["route"] = {{"partial_routes", route.partial_routes()}, {"visits", std::move(visits)}};
    return doc;
}

}  // namespace scenic::io
