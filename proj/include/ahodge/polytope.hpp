#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahodge/lattice.hpp"

namespace ahodge {

/// Sorted list of vertex indices describing a face.
using FaceSet = std::vector<std::size_t>;

/**
 * Lattice polytope stored by its extreme points (sorted lexicographically)
 * together with facet inequalities and the full face lattice, all computed
 * at construction. Lower-dimensional polytopes are handled in coordinates
 * of the saturated lattice of their affine hull.
 */
class LatticePolytope {
public:
    struct Facet {
        IntVector normal;        // primitive, local coordinates
        Int offset;              // <normal, y> >= offset in local coordinates
        FaceSet vertices;
        IntVector ambient_normal;  // only when full-dimensional
        Int ambient_offset;
    };

    LatticePolytope() = default;
    /// Convex hull of the given points; non-extreme and repeated points are dropped.
    explicit LatticePolytope(std::vector<IntVector> points);

    std::size_t ambient_dim() const { return ambient_; }
    int dim() const { return dim_; }
    bool full_dimensional() const { return dim_ == int(ambient_); }
    const std::vector<IntVector>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    /// Saturated lattice basis (HNF rows) of the linear span of P - P.
    const IntMatrix& lattice_basis() const { return basis_; }
    const IntVector& origin() const { return vertices_.front(); }
    /// Coordinates of x - origin in lattice_basis(), or nothing when x is off the affine lattice.
    std::optional<IntVector> local_coordinates(const IntVector& x) const;

    bool contains(const IntVector& x) const;
    /// Point lies in P but on no facet (relative interior).
    bool in_relative_interior(const IntVector& x) const;

    /// All faces of dimension d as vertex index sets (sorted, deterministic order).
    const std::vector<FaceSet>& face_sets(int d) const;
    std::vector<LatticePolytope> faces(int d) const;
    LatticePolytope face(const FaceSet& f) const;
    int face_dim(const FaceSet& f) const;
    /// Face of minimal <n, x> (all vertices attaining the minimum).
    FaceSet minimizing_face(const IntVector& n) const;

    std::vector<IntVector> lattice_points() const;

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b)
    {
        return a.vertices_ == b.vertices_;
    }

private:
    std::size_t ambient_ = 0;
    int dim_ = -1;
    std::vector<IntVector> vertices_;
    IntMatrix basis_;
    std::vector<Facet> facets_;
    std::vector<std::vector<FaceSet>> faces_by_dim_;
};

bool is_elementary_simplex(const LatticePolytope& p);
bool is_standard_simplex(const LatticePolytope& p);

/// Cayley polytope Conv(U_i P_i x {e_i}) in Z^{n+q}.
LatticePolytope cayley_polytope(const std::vector<LatticePolytope>& summands);

/** Rational polyhedral cone given by generators. */
class Cone {
public:
    Cone() = default;
    Cone(std::size_t ambient, std::vector<IntVector> generators);

    std::size_t ambient_dim() const { return ambient_; }
    const std::vector<IntVector>& generators() const { return gens_; }
    /// Generators of the dual cone; these are the inner facet normals.
    const std::vector<IntVector>& facet_normals() const { return normals_; }
    bool contains(const IntVector& x) const;
    bool strictly_convex() const;
    int dim() const;

private:
    std::size_t ambient_ = 0;
    std::vector<IntVector> gens_;
    std::vector<IntVector> normals_;
};

/// {n : <n, g> >= 0 for all generators g}, with primitive generators (lineality as +-pairs).
Cone dual_cone(const Cone& c);
/// Primitive extreme rays and lineality generators of {x : <a, x> >= 0 for all rows a}.
std::vector<IntVector> cone_from_inequalities(std::size_t ambient, const std::vector<IntVector>& rows);

struct Fan {
    std::size_t ambient = 0;
    std::vector<Cone> maximal_cones;
    std::vector<IntVector> rays;
    bool complete = false;

    /// Index of a maximal cone containing x (lowest index), or nothing.
    std::optional<std::size_t> locate(const IntVector& x) const;
};

/// Inner normal fan; maximal cones are listed in vertex order of p.
Fan normal_fan(const LatticePolytope& p);

/** Piecewise linear function: one functional per maximal cone. */
struct PLFunction {
    Fan fan;
    std::vector<IntVector> functionals;

    Int operator()(const IntVector& x) const;
    /// Difference functional of adjacent cones is nonnegative on the neighbour.
    bool is_convex() const;
};

/// psi(n) = -min { <n, m> : m in delta } on a fan refining the normal fan of delta.
PLFunction newton_pl_function(const LatticePolytope& delta, const Fan& fan);

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);
LatticePolytope minkowski_sum(const std::vector<LatticePolytope>& summands);
/**
 * Decompose a face f of the Minkowski sum as f = f_1 + ... + f_q. Requires the
 * Cayley polytope of the summands to be an elementary simplex; throws
 * NonUniqueSplit otherwise or when dimensions fail to add up.
 */
std::vector<LatticePolytope> minkowski_face_split(const std::vector<LatticePolytope>& summands,
                                                  const LatticePolytope& f);

/**
 * Lower faces of the lifted point configuration {(y_i, h_i)} in Z^d x Z for
 * full-dimensional y. Each maximal cell is returned as the set of all point
 * indices on it.
 */
std::vector<std::vector<std::size_t>> regular_subdivision(const std::vector<IntVector>& points,
                                                          const std::vector<Int>& heights);

nlohmann::json polytope_to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const nlohmann::json& j);

}  // namespace ahodge
