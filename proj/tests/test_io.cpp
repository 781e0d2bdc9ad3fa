#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "fixtures.hpp"
#include "scenic/errors.hpp"
#include "scenic/io.hpp"

using namespace scenic;
using namespace scenic::io;
using namespace scenic::routing;

namespace {

const std::filesystem::path kSamples = SCENIC_SAMPLES_DIR;

int occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

Json minimal_doc() {
    return Json::parse(R"({"points": [
        {"id": 0, "x": 0, "y": 0, "color": "red"},
        {"id": 1, "x": 4, "y": 0, "color": "blue"},
        {"id": 2, "x": 0, "y": 2, "color": "blue"}]})");
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("parse the landmark samples") {
    const InputDocument pyr = parse_config(kSamples / "pyramids.json");
    CHECK(pyr.config.mode == PairMode::AllPairs);
    REQUIRE(pyr.config.points.size() == 4);
    CHECK(pyr.config.points[0].weight == 138.5);
    CHECK(pyr.config.points[3].weight == 20.0);
    CHECK(std::holds_alternative<AutoBox>(pyr.config.box));

    const InputDocument eif = parse_config(kSamples / "eiffel.json");
    CHECK(eif.config.mode == PairMode::AllPairs);
    CHECK(eif.config.points.size() >= 3);
}

TEST_CASE("parse_input defaults and options") {
    Json doc = minimal_doc();
    doc["routing"] = {{"top_k", 3}, {"order", "sec3"}};
    doc["box"] = {{"xmin", -1}, {"ymin", -1}, {"xmax", 6}, {"ymax", 5}};
    const InputDocument in = parse_input(doc);
    CHECK(in.config.mode == PairMode::Bipartite);
    CHECK(in.config.points[1].weight == 1.0);
    CHECK(in.routing.top_k == 3);
    CHECK(in.order == "sec3");
    REQUIRE(std::holds_alternative<Box>(in.config.box));
    CHECK(std::get<Box>(in.config.box).xmax == 6.0);
    CHECK(in.dimension == 2);
    CHECK(in.points_d.size() == 3);
}

TEST_CASE("parse errors carry a JSON pointer") {
    SUBCASE("zero weight") {
        Json doc = minimal_doc();
        doc["points"][2]["weight"] = 0;
        CHECK_THROWS_WITH_AS(parse_input(doc), doctest::Contains("/points/2/weight"), DataError);
    }
    SUBCASE("bad colour") {
        Json doc = minimal_doc();
        doc["points"][1]["color"] = "green";
        CHECK_THROWS_WITH_AS(parse_input(doc), doctest::Contains("/points/1/color"), DataError);
    }
    SUBCASE("missing coordinates") {
        Json doc = minimal_doc();
        doc["points"][0].erase("y");
        CHECK_THROWS_WITH_AS(parse_input(doc), doctest::Contains("/points/0"), DataError);
    }
    SUBCASE("landmarks need all-pairs mode") {
        Json doc = minimal_doc();
        doc["points"][0]["color"] = "landmark";
        CHECK_THROWS_AS(parse_input(doc), DataError);
    }
    SUBCASE("unknown order") {
        Json doc = minimal_doc();
        doc["routing"] = {{"order", "fastest"}};
        CHECK_THROWS_AS(parse_input(doc), DataError);
    }
    SUBCASE("file that is not JSON") {
        const auto path = std::filesystem::temp_directory_path() / "scenic_io_bad.json";
        std::ofstream(path) << "{ not json";
        CHECK_THROWS_AS(parse_config(path), DataError);
        std::filesystem::remove(path);
    }
}

TEST_CASE("graph JSON round-trips byte for byte") {
    for (const Config& cfg : {fixture::triangle(), fixture::weighted_star(), fixture::grid2x2()}) {
        const ScenicGraph g = build_graph(cfg);
        const std::string first = dump(graph_to_json(g));
        const ScenicGraph back = graph_from_json(Json::parse(first));
        CHECK(dump(graph_to_json(back)) == first);
        CHECK(back.nodes.size() == g.nodes.size());
        CHECK(back.edges.size() == g.edges.size());
        CHECK(back.all_pairs == g.all_pairs);
    }
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"format": "other"})")), DataError);
}

TEST_CASE("route JSON round-trips") {
    const ScenicGraph g = build_graph(fixture::triangle());
    const ApspTable t = apsp(g);
    for (const char* name : kAlgorithms) {
        const Route r = run_algorithm(name, g, t);
        const Route back = route_from_json(route_to_json(r));
        CHECK(dump(route_to_json(back)) == dump(route_to_json(r)));
        CHECK(route_metrics(g, back) == route_metrics(g, r));
    }
}

TEST_CASE("report metrics equal route_metrics") {
    const ScenicGraph g = build_graph(fixture::triangle());
    const ApspTable t = apsp(g);
    std::vector<Route> routes;
    for (const char* name : kAlgorithms) routes.push_back(run_algorithm(name, g, t));
    const Json rep = report_to_json(g, routes, "sec3");
    CHECK(rep["format"] == "scenic-report/1");
    REQUIRE(rep["routes"].size() == routes.size());
    for (std::size_t i = 0; i < routes.size(); ++i) {
        const RouteMetrics m = route_metrics(g, routes[i]);
        const Json& jm = rep["routes"][i]["metrics"];
        CHECK(jm["completeness"].get<double>() == m.completeness);
        CHECK(jm["scenic_length"].get<double>() == m.scenic_length);
        CHECK(jm["repeated_length"].get<double>() == m.repeated_length);
        CHECK(jm["edge_count"].get<int>() == m.edge_count);
    }
    CHECK(rep["ranking"].size() == routes.size());
    CHECK(rep["verdicts"].size() == routes.size() * (routes.size() - 1) / 2);
    CHECK(rep["priority"][0] == "completeness");
}

TEST_CASE("write_atomic replaces the file") {
    const auto path = std::filesystem::temp_directory_path() / "scenic_io_atomic.json";
    write_atomic(path, "one\n");
    write_atomic(path, "two\n");
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == "two\n");
    std::filesystem::remove(path);
}

TEST_CASE("svg element counts") {
    const ScenicGraph g = build_graph(fixture::triangle());
    const Route r = route_minmax_hull(g, apsp(g));
    const std::string svg = render_svg(g, {r});
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(occurrences(svg, "class=\"curve\"") == 3);
    CHECK(occurrences(svg, "class=\"node\"") == 3);
    CHECK(occurrences(svg, "class=\"site\"") == 4);
    CHECK(occurrences(svg, "class=\"route\"") == 1);
    CHECK(occurrences(svg, "class=\"connector\"") == 0);
    CHECK(occurrences(svg, "</svg>") == 1);
}

TEST_CASE("svg draws one dashed connector per non-scenic hop") {
    Config cfg;
    cfg.points = {fixture::red(0, 0, 0), fixture::blue(1, 2, 0), fixture::blue(2, 4, 0)};
    const ScenicGraph g = build_graph(cfg);
    const Route r = route_dpe(g, apsp(g));
    REQUIRE(r.connectors().size() == 1);
    const std::string svg = render_svg(g, {r});
    CHECK(occurrences(svg, "class=\"connector\"") == 1);
    CHECK(occurrences(svg, "stroke-dasharray") == 1);
}

TEST_CASE("svg without routes") {
    const ScenicGraph g = build_graph(fixture::weighted_star());
    const std::string svg = render_svg(g, {});
    CHECK(occurrences(svg, "class=\"route\"") == 0);
    CHECK(occurrences(svg, "class=\"connector\"") == 0);
    CHECK(occurrences(svg, "class=\"curve\"") == 3);
    CHECK(occurrences(svg, "</svg>") == 1);
}

TEST_CASE("lattice JSON") {
    const InputDocument in = parse_config(kSamples / "flats3d.json");
    CHECK(in.dimension == 3);
    lattice::LatticeOptions opts;
    const lattice::FlatLattice lat = lattice::build_lattice(in.points_d, opts);
    const Json doc = lattice_to_json(lat, lattice::densest_flat_route(lat));
    CHECK(doc["format"] == "scenic-lattice/1");
    CHECK(doc["dimension"] == 3);
    CHECK(doc["flats"].size() == lat.flats.size());
    CHECK(doc["levels"][0] == 9);
}

}  // TEST_SUITE
