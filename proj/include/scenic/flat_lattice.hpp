#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "scenic/scenic_graph.hpp"

namespace scenic::lattice {

using VectorD = Eigen::VectorXd;
using MatrixD = Eigen::MatrixXd;

struct ColoredPointD {
    int id = 0;
    VectorD coords;
    Color color = Color::Red;
};

// Affine subspace {base + basis * t}. `base` is the least-norm point and the
// columns of `basis` are orthonormal.
struct AffineFlat {
    VectorD base;
    MatrixD basis;
    std::set<PairId> generators;

    int ambient() const { return static_cast<int>(base.size()); }
    int dim() const { return static_cast<int>(basis.cols()); }
    VectorD point_at(const VectorD& t) const { return base + basis * t; }
    // Orthonormal basis of the orthogonal complement of the direction space.
    MatrixD normals() const;
    double distance_to(const VectorD& x) const;
};

struct BoxD {
    VectorD lo;
    VectorD hi;

    double diagonal() const { return (hi - lo).norm(); }
    bool contains(const VectorD& x, double eps = 0.0) const;
};

/// The flat {x : |x - r| = |x - b|}. Throws DataError when r == b.
AffineFlat bisecting_hyperplane(const VectorD& r, const VectorD& b, PairId pair = {});

/// Intersection of two flats, or nothing when it is empty. The rank of the
/// combined system uses the singular-value threshold 1e-10 * sigma_max; the
/// consistency residual is compared against `tol`.
std::optional<AffineFlat> intersect_flats(const AffineFlat& f, const AffineFlat& h,
                                          double tol = 1e-9);

// Does the flat meet the box (inflated by eps)?
bool flat_meets_box(const AffineFlat& f, const BoxD& box, double eps);

// Least-norm point of flat ∩ box, found by Dykstra's alternating projections.
VectorD least_norm_in_box(const AffineFlat& f, const BoxD& box, double eps);

struct AutoBoxD {
    double expand_factor = 1.5;
};

struct LatticeOptions {
    std::variant<AutoBoxD, BoxD> box = AutoBoxD{};
    std::optional<int> depth_limit;  // default: ambient dimension
    std::size_t max_flats = 10000;
    double eps_abs = 1e-9;
};

struct FlatLattice {
    int ambient = 0;
    BoxD box;
    double tolerance = 0.0;  // eps_abs * max(1, box diagonal)
    std::vector<AffineFlat> flats;
    std::vector<int> level;                   // construction level of each flat
    std::vector<std::pair<int, int>> edges;   // (i, j): j = flat i ∩ hyperplane, j ⊂ i
    std::vector<int> incidence;               // edges touching each flat
    std::vector<VectorD> representative;      // least-norm in-box point

    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> components(int* count = nullptr) const;
};

BoxD working_box(const std::vector<ColoredPointD>& points, const LatticeOptions& options);

/// Level 0 holds the |R|·|B| bisecting hyperplanes; level k+1 intersects each
/// level-k flat with every level-0 hyperplane not containing it. Flats that
/// miss the box are dropped. Throws CapExceeded past max_flats and DataError
/// on invalid points.
FlatLattice build_lattice(const std::vector<ColoredPointD>& points,
                          const LatticeOptions& options = {});

FlatLattice build_lattice_from_hyperplanes(std::vector<AffineFlat> hyperplanes, const BoxD& box,
                                           const LatticeOptions& options = {});

enum class Hop { Start, Adjacent, Jump, NonScenic };

struct FlatVisit {
    int flat = -1;
    Hop hop = Hop::Start;
    double cost = 0.0;  // distance between representatives of consecutive flats
};

struct FlatRoute {
    std::vector<FlatVisit> visits;

    std::vector<int> order() const;
    int partial_routes() const;
};

/// Greedy walk from the highest-incidence flat towards adjacent flats of
/// decreasing incidence; jumps inside a component when stuck, non-scenic hops
/// between components.
FlatRoute densest_flat_route(const FlatLattice& lattice);

}  // namespace scenic::lattice
