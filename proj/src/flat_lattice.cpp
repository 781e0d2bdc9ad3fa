#include "scenic/flat_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <string>

#include "scenic/errors.hpp"

namespace scenic::lattice {

namespace {

constexpr double kRankThreshold = 1e-10;

MatrixD complement(const MatrixD& basis, int d) {
    if (basis.cols() == 0) return MatrixD::Identity(d, d);
    Eigen::JacobiSVD<MatrixD> svd(basis, Eigen::ComputeFullU);
    return svd.matrixU().rightCols(d - basis.cols());
}

VectorD clamp_to(const VectorD& x, const BoxD& box) {
    return x.cwiseMax(box.lo).cwiseMin(box.hi);
}

}  // namespace

MatrixD AffineFlat::normals() const { return complement(basis, ambient()); }

double AffineFlat::distance_to(const VectorD& x) const {
    const VectorD rel = x - base;
    return (rel - basis * (basis.transpose() * rel)).norm();
}

bool BoxD::contains(const VectorD& x, double eps) const {
    for (Eigen::Index a = 0; a < x.size(); ++a)
        if (x[a] < lo[a] - eps || x[a] > hi[a] + eps) return false;
    return true;
}

AffineFlat bisecting_hyperplane(const VectorD& r, const VectorD& b, PairId pair) {
    if (r.size() != b.size()) throw DataError("points of different dimension");
    if (r.size() < 2) throw DataError("points need at least two coordinates");
    const VectorD diff = b - r;
    const double len = diff.norm();
    if (!(len > 0.0)) throw DataError("degenerate pair: coincident red and blue points");
    const VectorD normal = diff / len;
    const double offset = (b.squaredNorm() - r.squaredNorm()) / (2.0 * len);

    AffineFlat f;
    f.base = offset * normal;
    f.basis = complement(normal, static_cast<int>(r.size()));
    f.generators.insert(pair);
    return f;
}

std::optional<AffineFlat> intersect_flats(const AffineFlat& f, const AffineFlat& h, double tol) {
    if (f.ambient() != h.ambient()) throw DataError("flats live in different dimensions");
    const MatrixD n = h.normals();
    const VectorD rhs = n.transpose() * (h.base - f.base);

    AffineFlat out;
    out.generators = f.generators;
    out.generators.insert(h.generators.begin(), h.generators.end());
    if (f.dim() == 0 || n.cols() == 0) {
        if (rhs.norm() > tol) return std::nullopt;
        out.base = f.base;
        out.basis = f.basis;
        return out;
    }

    const MatrixD m = n.transpose() * f.basis;
    Eigen::JacobiSVD<MatrixD> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(kRankThreshold);
    const Eigen::Index rank = svd.singularValues().size() > 0 &&
                                      svd.singularValues()[0] > 0.0
                                  ? svd.rank()
                                  : 0;
    const VectorD t = rank > 0 ? VectorD(svd.solve(rhs)) : VectorD::Zero(f.dim());
    if ((m * t - rhs).norm() > tol) return std::nullopt;

    out.basis = f.basis * svd.matrixV().rightCols(f.dim() - rank);
    const VectorD x0 = f.base + f.basis * t;
    out.base = x0 - out.basis * (out.basis.transpose() * x0);
    return out;
}

bool flat_meets_box(const AffineFlat& f, const BoxD& box, double eps) {
    if (box.contains(f.base, eps)) return true;
    const int k = f.dim();
    const int d = f.ambient();
    if (k == 0) return false;

    // The flat meets the box iff the polytope {t : lo <= base + B t <= hi} has a vertex.
    const int constraints = 2 * d;
    auto bound = [&](int c) {
        const int axis = c / 2;
        return (c % 2 == 0 ? box.lo[axis] - eps : box.hi[axis] + eps) - f.base[axis];
    };
    auto feasible = [&](const VectorD& t) {
        const VectorD x = f.base + f.basis * t;
        for (int a = 0; a < d; ++a) {
            const double slack = 1e-12 * (1.0 + std::abs(x[a]));
            if (x[a] < box.lo[a] - eps - slack || x[a] > box.hi[a] + eps + slack) return false;
        }
        return true;
    };

    std::vector<int> pick(static_cast<std::size_t>(k));
    std::function<bool(int, int)> choose = [&](int slot, int from) -> bool {
        if (slot == k) {
            MatrixD a(k, k);
            VectorD rhs(k);
            for (int i = 0; i < k; ++i) {
                a.row(i) = f.basis.row(pick[i] / 2);
                rhs[i] = bound(pick[i]);
            }
            Eigen::FullPivLU<MatrixD> lu(a);
            lu.setThreshold(kRankThreshold);
            if (!lu.isInvertible()) return false;
            return feasible(lu.solve(rhs));
        }
        for (int c = from; c < constraints; ++c) {
            pick[slot] = c;
            if (choose(slot + 1, c + 1)) return true;
        }
        return false;
    };
    return choose(0, 0);
}

VectorD least_norm_in_box(const AffineFlat& f, const BoxD& box, double eps) {
    if (box.contains(f.base, eps)) return f.base;
    // Dykstra's algorithm projects the origin onto flat ∩ box.
    const int d = f.ambient();
    VectorD x = VectorD::Zero(d);
    VectorD p = VectorD::Zero(d);
    VectorD q = VectorD::Zero(d);
    const double stop = 1e-13 * std::max(1.0, box.diagonal());
    for (int iter = 0; iter < 5000; ++iter) {
        const VectorD rel = x + p - f.base;
        const VectorD y = f.base + f.basis * (f.basis.transpose() * rel);
        p = x + p - y;
        const VectorD next = clamp_to(y + q, box);
        q = y + q - next;
        const double change = (next - x).norm();
        x = next;
        if (change <= stop && f.distance_to(x) <= eps) break;
    }
    return x;
}

std::vector<std::vector<int>> FlatLattice::adjacency() const {
    std::vector<std::vector<int>> adj(flats.size());
    for (const auto& [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
}

std::vector<int> FlatLattice::components(int* count) const {
    const auto adj = adjacency();
    std::vector<int> comp(flats.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < flats.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::queue<int> frontier;
        frontier.push(static_cast<int>(s));
        comp[s] = next;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = next;
                    frontier.push(w);
                }
        }
        ++next;
    }
    if (count) *count = next;
    return comp;
}

BoxD working_box(const std::vector<ColoredPointD>& points, const LatticeOptions& options) {
    if (const auto* box = std::get_if<BoxD>(&options.box)) return *box;
    const double expand = std::get<AutoBoxD>(options.box).expand_factor;
    VectorD lo = points.front().coords;
    VectorD hi = points.front().coords;
    for (const auto& p : points) {
        lo = lo.cwiseMin(p.coords);
        hi = hi.cwiseMax(p.coords);
    }
    const VectorD extent = hi - lo;
    const double span = extent.maxCoeff();
    const double floor = span > 0.0 ? 0.25 * span : 1.0;
    const VectorD center = 0.5 * (lo + hi);
    BoxD out{center, center};
    for (Eigen::Index a = 0; a < extent.size(); ++a) {
        const double half = expand * std::max(0.5 * extent[a], floor);
        out.lo[a] -= half;
        out.hi[a] += half;
    }
    return out;
}

FlatLattice build_lattice(const std::vector<ColoredPointD>& points, const LatticeOptions& options) {
    if (points.empty()) throw DataError("configuration has no points");
    const Eigen::Index d = points.front().coords.size();
    if (d < 2) throw DataError("points need at least two coordinates");
    std::set<int> ids;
    for (const auto& p : points) {
        const std::string who = "point " + std::to_string(p.id);
        if (!ids.insert(p.id).second) throw DataError("duplicate point id " + std::to_string(p.id));
        if (p.coords.size() != d) throw DataError(who + " has the wrong number of coordinates");
        if (!p.coords.allFinite()) throw DataError(who + " has non-finite coordinates");
        if (p.color == Color::Landmark) throw DataError(who + ": landmarks are not supported in R^d");
    }
    const bool has_red = std::any_of(points.begin(), points.end(),
                                     [](const auto& p) { return p.color == Color::Red; });
    const bool has_blue = std::any_of(points.begin(), points.end(),
                                      [](const auto& p) { return p.color == Color::Blue; });
    if (!has_red || !has_blue) throw DataError("need at least one red and one blue point");
    if (!(options.eps_abs > 0.0)) throw DataError("tolerance must be positive");

    const BoxD box = working_box(points, options);
    if (box.lo.size() != d || box.hi.size() != d) throw DataError("box dimension does not match the points");
    if (!(box.lo.array() < box.hi.array()).all()) throw DataError("bounding box is empty");
    if (std::holds_alternative<AutoBoxD>(options.box) &&
        !(std::get<AutoBoxD>(options.box).expand_factor >= 1.0))
        throw DataError("box expand factor must be at least 1");
    for (const auto& p : points)
        if (!box.contains(p.coords))
            throw DataError("point " + std::to_string(p.id) + " lies outside the bounding box");

    std::vector<const ColoredPointD*> reds;
    std::vector<const ColoredPointD*> blues;
    for (const auto& p : points) (p.color == Color::Red ? reds : blues).push_back(&p);
    auto by_id = [](const ColoredPointD* a, const ColoredPointD* b) { return a->id < b->id; };
    std::sort(reds.begin(), reds.end(), by_id);
    std::sort(blues.begin(), blues.end(), by_id);

    std::vector<AffineFlat> hyperplanes;
    for (const auto* r : reds)
        for (const auto* b : blues) {
            if ((r->coords - b->coords).norm() <= options.eps_abs * std::max(1.0, box.diagonal()))
                throw DataError("degenerate pair: sites " + std::to_string(r->id) + " and " +
                                std::to_string(b->id) + " coincide");
            hyperplanes.push_back(bisecting_hyperplane(r->coords, b->coords, {r->id, b->id}));
        }
    return build_lattice_from_hyperplanes(std::move(hyperplanes), box, options);
}

FlatLattice build_lattice_from_hyperplanes(std::vector<AffineFlat> hyperplanes, const BoxD& box,
                                           const LatticeOptions& options) {
    FlatLattice lat;
    if (hyperplanes.empty()) return lat;
    lat.ambient = hyperplanes.front().ambient();
    lat.box = box;
    const double scale = std::max(1.0, box.diagonal());
    lat.tolerance = options.eps_abs * scale;
    const double tol = lat.tolerance;
    const int depth_limit = options.depth_limit.value_or(lat.ambient);

    auto check_cap = [&] {
        if (lat.flats.size() >= options.max_flats)
            throw CapExceeded("flat lattice exceeds " + std::to_string(options.max_flats) +
                              " flats; intersections of bisecting hyperplanes grow "
                              "combinatorially with the number of sites, so lower the depth "
                              "limit or use fewer sites");
    };

    // Level 0, with coincident hyperplanes merged.
    std::vector<int> planes;
    std::vector<VectorD> normal;
    std::vector<double> offset;
    auto contains = [&](std::size_t p, const AffineFlat& f) {
        if (std::abs(normal[p].dot(f.base) - offset[p]) > tol) return false;
        return f.dim() == 0 || (f.basis.transpose() * normal[p]).norm() * scale <= tol;
    };
    for (auto& h : hyperplanes) {
        if (h.ambient() != lat.ambient) throw DataError("hyperplanes of different dimensions");
        if (!flat_meets_box(h, box, tol)) continue;
        bool merged = false;
        for (std::size_t p = 0; p < planes.size() && !merged; ++p) {
            if (contains(p, h)) {
                auto& gens = lat.flats[planes[p]].generators;
                gens.insert(h.generators.begin(), h.generators.end());
                merged = true;
            }
        }
        if (merged) continue;
        check_cap();
        const MatrixD n = h.normals();
        normal.push_back(n.col(0));
        offset.push_back(n.col(0).dot(h.base));
        planes.push_back(static_cast<int>(lat.flats.size()));
        lat.flats.push_back(std::move(h));
        lat.level.push_back(0);
    }

    std::map<std::vector<int>, int> by_key;
    std::vector<std::vector<int>> key_of;
    for (std::size_t p = 0; p < planes.size(); ++p) {
        by_key[{static_cast<int>(p)}] = planes[p];
        key_of.push_back({static_cast<int>(p)});
    }

    std::set<std::pair<int, int>> edges;
    std::vector<int> frontier = planes;
    for (int level = 1; level <= depth_limit && !frontier.empty(); ++level) {
        std::vector<int> next;
        for (int f : frontier) {
            if (lat.flats[f].dim() == 0) continue;
            for (std::size_t p = 0; p < planes.size(); ++p) {
                if (std::binary_search(key_of[f].begin(), key_of[f].end(), static_cast<int>(p)))
                    continue;
                auto cut = intersect_flats(lat.flats[f], lat.flats[planes[p]], tol);
                if (!cut || cut->dim() >= lat.flats[f].dim()) continue;
                if (!flat_meets_box(*cut, box, tol)) continue;

                std::vector<int> key;
                for (std::size_t q = 0; q < planes.size(); ++q)
                    if (contains(q, *cut)) key.push_back(static_cast<int>(q));
                auto [it, fresh] = by_key.try_emplace(key, static_cast<int>(lat.flats.size()));
                if (fresh) {
                    check_cap();
                    cut->generators.clear();
                    for (int q : key) {
                        const auto& gens = lat.flats[planes[q]].generators;
                        cut->generators.insert(gens.begin(), gens.end());
                    }
                    lat.flats.push_back(std::move(*cut));
                    lat.level.push_back(level);
                    key_of.push_back(std::move(key));
                    next.push_back(it->second);
                }
                edges.insert({f, it->second});
            }
        }
        frontier = std::move(next);
    }

    lat.edges.assign(edges.begin(), edges.end());
    lat.incidence.assign(lat.flats.size(), 0);
    for (const auto& [i, j] : lat.edges) {
        ++lat.incidence[i];
        ++lat.incidence[j];
    }
    for (const auto& f : lat.flats) lat.representative.push_back(least_norm_in_box(f, box, tol));
    return lat;
}

std::vector<int> FlatRoute::order() const {
    std::vector<int> out;
    for (const auto& v : visits) out.push_back(v.flat);
    return out;
}

int FlatRoute::partial_routes() const {
    if (visits.empty()) return 0;
    return 1 + static_cast<int>(std::count_if(visits.begin(), visits.end(),
                                               [](const FlatVisit& v) { return v.hop == Hop::NonScenic; }));
}

FlatRoute densest_flat_route(const FlatLattice& lat) {
    FlatRoute route;
    const int n = static_cast<int>(lat.flats.size());
    if (n == 0) return route;
    const auto adj = lat.adjacency();
    const std::vector<int> comp = lat.components();
    std::vector<bool> visited(static_cast<std::size_t>(n), false);

    // Highest incidence first, lowest id on ties.
    auto denser = [&](int a, int b) {
        return lat.incidence[a] != lat.incidence[b] ? lat.incidence[a] > lat.incidence[b] : a < b;
    };
    auto best_of = [&](auto&& allowed) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!visited[v] && allowed(v) && (best < 0 || denser(v, best))) best = v;
        return best;
    };

    int cur = best_of([](int) { return true; });
    route.visits.push_back({cur, Hop::Start, 0.0});
    visited[cur] = true;
    for (int step = 1; step < n; ++step) {
        Hop hop = Hop::Adjacent;
        int next = -1;
        for (int w : adj[cur])
            if (!visited[w] && (next < 0 || denser(w, next))) next = w;
        if (next < 0) {
            hop = Hop::Jump;
            next = best_of([&](int v) { return comp[v] == comp[cur]; });
        }
        if (next < 0) {
            hop = Hop::NonScenic;
            next = best_of([](int) { return true; });
        }
        const double cost = (lat.representative[cur] - lat.representative[next]).norm();
        route.visits.push_back({next, hop, cost});
        visited[next] = true;
        cur = next;
    }
    return route;
}

}  // namespace scenic::lattice
