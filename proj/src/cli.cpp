#include "scenic/cli.hpp"

#include <CLI11.hpp>

#include <optional>

#include "scenic/errors.hpp"
#include "scenic/flat_lattice.hpp"
#include "scenic/io.hpp"
#include "scenic/routing.hpp"

namespace scenic::cli {

namespace {

struct Options {
    std::string input;
    std::string graph;
    std::string report;
    std::string out;
    std::vector<double> box;
    std::optional<double> expand;
    std::optional<double> tolerance;
    std::string algorithm = "all";
    std::optional<std::string> order;
    std::optional<double> alpha;
    std::optional<int> top_k;
    std::optional<double> distance_bound;
    std::optional<int> dim;
    std::optional<int> depth_limit;
    std::optional<int> max_flats;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out.empty())
        out << text;
    else
        io::write_atomic(o.out, text);
}

io::InputDocument load_input(const Options& o) {
    io::InputDocument doc = io::parse_config(o.input);
    if (!o.box.empty()) {
        if (doc.dimension != 2) throw DataError("--box takes xmin,ymin,xmax,ymax and needs 2D points");
        doc.config.box = Box{o.box[0], o.box[1], o.box[2], o.box[3]};
    } else if (o.expand) {
        doc.config.box = AutoBox{*o.expand};
        doc.box_d.reset();
    }
    if (o.tolerance) doc.config.eps_abs = *o.tolerance;
    if (o.alpha) doc.routing.alpha = o.alpha;
    if (o.top_k) doc.routing.top_k = o.top_k;
    if (o.distance_bound) doc.routing.distance_bound = o.distance_bound;
    if (o.order) doc.order = *o.order;
    return doc;
}

ScenicGraph graph_from_input(const Options& o, io::InputDocument* doc_out = nullptr) {
    io::InputDocument doc = load_input(o);
    if (doc.dimension != 2)
        throw DataError(o.input + ": points have " + std::to_string(doc.dimension) +
                        " coordinates; use the flats command for R^d configurations");
    ScenicGraph g = build_graph(doc.config);
    if (doc_out) *doc_out = std::move(doc);
    return g;
}

ScenicGraph load_graph(const std::string& path) {
    try {
        return io::graph_from_json(io::read_json(path));
    } catch (const DataError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        throw DataError(path + ": " + what);
    }
}

std::vector<routing::Route> load_routes(const std::string& path) {
    const io::Json doc = io::read_json(path);
    if (!doc.is_object() || !doc.contains("routes") || !doc["routes"].is_array())
        throw DataError(path + ": /routes: missing");
    std::vector<routing::Route> routes;
    for (std::size_t i = 0; i < doc["routes"].size(); ++i) {
        try {
            routes.push_back(io::route_from_json(doc["routes"][i]));
        } catch (const DataError& e) {
            throw DataError(path + ": /routes/" + std::to_string(i) + e.what());
        }
    }
    return routes;
}

int cmd_build_graph(const Options& o, std::ostream& out) {
    emit(o, out, io::dump(io::graph_to_json(graph_from_input(o))));
    return kOk;
}

int cmd_route(const Options& o, std::ostream& out) {
    ScenicGraph g;
    routing::RoutingOptions ropts;
    std::string order = o.order.value_or("sec2");
    if (!o.graph.empty()) {
        g = load_graph(o.graph);
        ropts.alpha = o.alpha;
        ropts.top_k = o.top_k;
        ropts.distance_bound = o.distance_bound;
    } else {
        io::InputDocument doc;
        g = graph_from_input(o, &doc);
        ropts = doc.routing;
        order = doc.order;
    }
    const routing::ApspTable table = routing::apsp(g);
    std::vector<routing::Route> routes;
    if (o.algorithm == "all") {
        for (const char* name : routing::kAlgorithms) {
            // Weighted configurations have no straight curves to run along.
            const bool has_line = std::any_of(g.curves.begin(), g.curves.end(),
                                              [](const ScenicCurve& c) { return c.is_line(); });
            if (std::string(name) == "densest-line" && !has_line) continue;
            routes.push_back(routing::run_algorithm(name, g, table, ropts));
        }
    } else {
        routes.push_back(routing::run_algorithm(o.algorithm, g, table, ropts));
    }
    for (const auto& r : routes) routing::check_well_formed(g, r);
    emit(o, out, io::dump(io::report_to_json(g, routes, order)));
    return kOk;
}

int cmd_metrics(const Options& o, std::ostream& out) {
    const ScenicGraph g = load_graph(o.graph);
    const std::vector<routing::Route> routes = load_routes(o.report);
    for (const auto& r : routes) routing::check_well_formed(g, r);
    emit(o, out, io::dump(io::report_to_json(g, routes, o.order.value_or("sec2"))));
    return kOk;
}

int cmd_render(const Options& o, std::ostream& out) {
    const ScenicGraph g = load_graph(o.graph);
    std::vector<routing::Route> routes;
    if (!o.report.empty()) routes = load_routes(o.report);
    for (const auto& r : routes) routing::check_well_formed(g, r);
    emit(o, out, io::render_svg(g, routes));
    return kOk;
}

int cmd_flats(const Options& o, std::ostream& out) {
    const io::InputDocument doc = load_input(o);
    if (o.dim && *o.dim != doc.dimension)
        throw DataError(o.input + ": points have " + std::to_string(doc.dimension) +
                        " coordinates but --dim is " + std::to_string(*o.dim));
    lattice::LatticeOptions lopts;
    if (doc.box_d)
        lopts.box = *doc.box_d;
    else
        lopts.box = lattice::AutoBoxD{o.expand.value_or(
            std::holds_alternative<AutoBox>(doc.config.box) ? std::get<AutoBox>(doc.config.box).expand_factor
                                                            : 1.5)};
    lopts.eps_abs = doc.config.eps_abs;
    lopts.depth_limit = o.depth_limit ? o.depth_limit : doc.depth_limit;
    lopts.max_flats = o.max_flats ? static_cast<std::size_t>(*o.max_flats) : doc.max_flats;
    const lattice::FlatLattice lat = lattice::build_lattice(doc.points_d, lopts);
    emit(o, out, io::dump(io::lattice_to_json(lat, lattice::densest_flat_route(lat))));
    return kOk;
}

}  // namespace

int run_pipeline(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scenic graphs and scenic routes between red and blue sites"};
    app.name(args.empty() ? "scenic" : args.front());
    app.require_subcommand(1);
    Options o;

    std::vector<std::string> algorithms{"all"};
    for (const char* a : routing::kAlgorithms) algorithms.emplace_back(a);

    auto input_opts = [&](CLI::App* sub, bool required) {
        auto* in = sub->add_option("--input", o.input, "Input configuration (JSON)");
        if (required) in->required();
        in->check(CLI::ExistingFile);
        sub->add_option("--box", o.box, "Bounding box xmin,ymin,xmax,ymax")->delimiter(',')->expected(4);
        sub->add_option("--expand", o.expand, "Auto box expansion factor")->check(CLI::Range(1.0, 1e6));
        sub->add_option("--tolerance", o.tolerance, "Absolute tolerance eps_abs")
            ->check(CLI::PositiveNumber);
        return in;
    };
    auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output file (default: stdout)"); };
    auto order_opt = [&](CLI::App* sub) {
        sub->add_option("--order", o.order, "Requirement order preset")->check(CLI::IsMember({"sec2", "sec3"}));
    };

    auto* build = app.add_subcommand("build-graph", "Build the scenic graph of a configuration");
    input_opts(build, true);
    out_opt(build);

    auto* route = app.add_subcommand("route", "Run routing algorithms and write a report");
    auto* route_in = input_opts(route, false);
    auto* route_graph = route->add_option("--graph", o.graph, "Graph JSON from build-graph")
                            ->check(CLI::ExistingFile);
    route_in->excludes(route_graph);
    route->add_option("--algorithm", o.algorithm, "Algorithm name or 'all'")
        ->check(CLI::IsMember(algorithms));
    order_opt(route);
    route->add_option("--alpha", o.alpha, "Alpha-shape parameter (densest-line)")->check(CLI::PositiveNumber);
    route->add_option("--top-k", o.top_k, "Number of lines (densest-line)")->check(CLI::PositiveNumber);
    route->add_option("--distance-bound", o.distance_bound, "Distance bound D (minmax-hull)")
        ->check(CLI::NonNegativeNumber);
    out_opt(route);

    auto* metrics = app.add_subcommand("metrics", "Recompute route metrics against a graph");
    metrics->add_option("--graph", o.graph, "Graph JSON")->required()->check(CLI::ExistingFile);
    metrics->add_option("--report", o.report, "Report JSON with routes")->required()->check(CLI::ExistingFile);
    order_opt(metrics);
    out_opt(metrics);

    auto* render = app.add_subcommand("render", "Draw a graph and its routes as SVG");
    render->add_option("--graph", o.graph, "Graph JSON from build-graph")->check(CLI::ExistingFile);
    render->add_option("--report", o.report, "Report JSON with routes to draw")->check(CLI::ExistingFile);
    out_opt(render);

    auto* flats = app.add_subcommand("flats", "Build the flat lattice of an R^d configuration");
    input_opts(flats, true);
    flats->add_option("--dim", o.dim, "Expected point dimension")->check(CLI::Range(2, 64));
    flats->add_option("--depth-limit", o.depth_limit, "Maximum intersection depth")
        ->check(CLI::NonNegativeNumber);
    flats->add_option("--max-flats", o.max_flats, "Cap on the number of flats")->check(CLI::PositiveNumber);
    out_opt(flats);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("scenic");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (route->parsed() && o.input.empty() && o.graph.empty()) {
            err << "route: pass --input (a configuration) or --graph (from build-graph)\n";
            return kUsage;
        }
        if (render->parsed() && o.graph.empty()) {
            err << "render: no graph given; run build-graph first and pass its output with --graph\n";
            return kUsage;
        }
        if (build->parsed()) return cmd_build_graph(o, out);
        if (route->parsed()) return cmd_route(o, out);
        if (metrics->parsed()) return cmd_metrics(o, out);
        if (render->parsed()) return cmd_render(o, out);
        if (flats->parsed()) return cmd_flats(o, out);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kCap;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}

}  // namespace scenic::cli
