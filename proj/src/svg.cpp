#include <cmath>
#include <cstdio>
#include <sstream>

#include "scenic/io.hpp"

namespace scenic::io {

namespace {

constexpr const char* kRed = "#d62728";
constexpr const char* kBlue = "#1f77b4";
constexpr const char* kLandmark = "#7f7f7f";
constexpr const char* kCurve = "#2ca02c";
constexpr const char* kRoute = "#e377c2";
constexpr const char* kConnector = "#7f7f7f";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

class Canvas {
public:
    explicit Canvas(const Box& box) : box_(box) {}

    std::string xy(Point2 p) const { return num(p.x) + " " + num(flip(p.y)); }
    double flip(double y) const { return box_.ymin + box_.ymax - y; }

private:
    Box box_;
};

// Appends the path commands for walking `e` from node `from`; assumes the
// pen already sits at that node.
void trace_edge(std::ostringstream& d, const Canvas& cv, const GraphEdge& e, bool forward) {
    if (const auto* s = std::get_if<Segment>(&e.geometry)) {
        d << " L " << cv.xy(forward ? s->to : s->from);
        return;
    }
    const auto& arc = std::get<geo::Arc>(e.geometry);
    // Split into pieces of at most half a turn so every piece is unambiguous.
    const int pieces = std::max(1, static_cast<int>(std::ceil(arc.sweep / std::numbers::pi - 1e-12)));
    const std::string r = num(arc.circle.radius);
    // Counterclockwise in the input frame is clockwise on screen (sweep flag 1).
    const int sweep_flag = forward ? 1 : 0;
    for (int i = 1; i <= pieces; ++i) {
        const double f = static_cast<double>(i) / pieces;
        const Point2 p = arc.point_at_fraction(forward ? f : 1.0 - f);
        d << " A " << r << " " << r << " 0 0 " << sweep_flag << " " << cv.xy(p);
    }
}

Point2 edge_start(const GraphEdge& e, bool forward) {
    if (const auto* s = std::get_if<Segment>(&e.geometry)) return forward ? s->from : s->to;
    const auto& arc = std::get<geo::Arc>(e.geometry);
    return forward ? arc.start() : arc.end();
}

}  // namespace

std::string render_svg(const ScenicGraph& g, const std::vector<routing::Route>& routes) {
    const Canvas cv(g.box);
    const double mx = 0.05 * g.box.width();
    const double my = 0.05 * g.box.height();
    const double span = std::max(g.box.width(), g.box.height());
    const double stroke = span / 400.0;
    const double dot = span / 120.0;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(g.box.xmin - mx)
        << " " << num(g.box.ymin - my) << " " << num(g.box.width() + 2 * mx) << " "
        << num(g.box.height() + 2 * my) << "\">\n";
    out << "  <rect class=\"box\" x=\"" << num(g.box.xmin) << "\" y=\"" << num(g.box.ymin)
        << "\" width=\"" << num(g.box.width()) << "\" height=\"" << num(g.box.height())
        << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"" << num(stroke) << "\"/>\n";

    out << "  <g class=\"curves\" fill=\"none\" stroke=\"" << kCurve << "\" stroke-width=\"" << num(stroke)
        << "\">\n";
    for (const auto& c : g.curves) {
        std::ostringstream d;
        for (const auto& e : g.edges) {
            if (e.curve != c.id) continue;
            d << (d.tellp() > 0 ? " " : "") << "M " << cv.xy(edge_start(e, true));
            trace_edge(d, cv, e, true);
        }
        if (d.tellp() > 0) out << "    <path class=\"curve\" data-curve=\"" << c.id << "\" d=\"" << d.str() << "\"/>\n";
    }
    out << "  </g>\n";

    for (const auto& route : routes) {
        std::ostringstream d;
        std::ostringstream dashed;
        bool pen_down = false;
        for (const auto& s : route.steps) {
            if (s.is_connector()) {
                dashed << "    <path class=\"connector\" d=\"M " << cv.xy(g.nodes[s.from].coords) << " L "
                       << cv.xy(g.nodes[s.to].coords) << "\" fill=\"none\" stroke=\"" << kConnector
                       << "\" stroke-width=\"" << num(2 * stroke) << "\" stroke-dasharray=\""
                       << num(6 * stroke) << " " << num(4 * stroke) << "\"/>\n";
                pen_down = false;
                continue;
            }
            const GraphEdge& e = g.edges[s.edge];
            const bool forward = s.direction == routing::Direction::Forward;
            if (!pen_down) {
                d << (d.tellp() > 0 ? " " : "") << "M " << cv.xy(edge_start(e, forward));
                pen_down = true;
            }
            trace_edge(d, cv, e, forward);
        }
        if (d.tellp() > 0)
            out << "  <path class=\"route\" data-algorithm=\"" << route.algorithm << "\" d=\"" << d.str()
                << "\" fill=\"none\" stroke=\"" << kRoute << "\" stroke-width=\"" << num(3 * stroke)
                << "\" stroke-linejoin=\"round\" stroke-opacity=\"0.8\"/>\n";
        out << dashed.str();
    }

    out << "  <g class=\"nodes\" fill=\"#000000\">\n";
    for (const auto& n : g.nodes)
        if (n.kind == NodeKind::Intersection)
            out << "    <circle class=\"node\" cx=\"" << num(n.coords.x) << "\" cy=\"" << num(cv.flip(n.coords.y))
                << "\" r=\"" << num(0.6 * dot) << "\"/>\n";
    out << "  </g>\n";

    out << "  <g class=\"sites\">\n";
    for (const auto& s : g.sites) {
        const char* fill = s.color == Color::Red ? kRed : (s.color == Color::Blue ? kBlue : kLandmark);
        out << "    <circle class=\"site\" data-id=\"" << s.id << "\" cx=\"" << num(s.coords.x) << "\" cy=\""
            << num(cv.flip(s.coords.y)) << "\" r=\"" << num(dot) << "\" fill=\"" << fill << "\"/>\n";
    }
    out << "  </g>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace scenic::io
