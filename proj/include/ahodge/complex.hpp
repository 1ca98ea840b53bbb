#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ahodge/lattice.hpp"
#include "ahodge/polytope.hpp"

namespace ahodge {

struct Cell {
    int id = 0;
    int dim = 0;
    std::vector<int> vertices;  // vertex cell ids, sorted
    std::vector<int> faces;     // immediate faces (codimension one), sorted
};

/**
 * Multi-valued PL function: per vertex v and maximal cell sigma containing v,
 * the functional of phi_v on the cone of sigma in the chart at v.
 */
struct MPLFunction {
    std::map<int, std::map<int, IntVector>> functionals;  // vertex -> cell -> functional
    bool empty() const { return functionals.empty(); }
};

struct Violation {
    std::string kind;  // "structure", "manifold", "boundary", "geometry", "chart", "compatibility", "fan", "phi"
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
    /// Only boundary-type findings (open complexes used as monodromy fixtures).
    bool valid_up_to_boundary() const;
    nlohmann::json to_json() const;
};

/**
 * Integral affine manifold with singularities (B, P) presented by its face
 * poset, intrinsic coordinates of the maximal cells and one chart per
 * (vertex, maximal cell). psi_{v,sigma}(x) = A_{v,sigma} (x - coord_sigma(v)).
 */
class IntegralAffineComplex {
public:
    IntegralAffineComplex() = default;

    int n = 0;
    std::vector<Cell> cells;                                     // sorted by id
    std::map<int, std::map<int, IntVector>> vertex_coords;       // maximal cell -> vertex -> coordinates
    std::map<std::pair<int, int>, IntMatrix> charts;             // (vertex, maximal cell) -> A
    MPLFunction phi;

    /// Rebuild the derived incidence tables; call after editing the public fields.
    void index();

    const Cell& cell(int id) const;
    bool has_cell(int id) const { return pos_.count(id) != 0; }
    /// tau is a face of sigma (or equal).
    bool is_face(int tau, int sigma) const;
    /// All faces of a cell including itself, sorted by id.
    const std::vector<int>& closure(int id) const;
    /// Maximal cells containing the cell, sorted by id.
    const std::vector<int>& maximal_over(int id) const;
    /// All cells containing the cell (including itself), sorted by id.
    const std::vector<int>& star(int id) const;
    std::vector<int> cells_of_dim(int d) const;
    std::vector<int> maximal_cells() const { return cells_of_dim(n); }
    std::vector<int> vertex_ids() const { return cells_of_dim(0); }
    /// Base vertex v(tau): minimal vertex id.
    int base_vertex(int id) const { return cell(id).vertices.front(); }
    /// Lowest-id maximal cell containing the cell.
    int reference_maximal(int id) const { return maximal_over(id).front(); }

    const IntVector& coord(int sigma, int v) const;
    const IntMatrix& chart(int v, int sigma) const;
    const IntMatrix& chart_inverse(int v, int sigma) const;
    /// psi_{v,sigma}(w) for a vertex w of sigma.
    IntVector psi(int v, int sigma, int w) const;
    /// psi_{v,sigma} applied to an intrinsic point of sigma.
    IntVector psi_point(int v, int sigma, const IntVector& x) const;
    /// Linear part of psi_{v',sigma} o psi_{v,sigma}^{-1}: Lambda_v -> Lambda_{v'}.
    IntMatrix parallel_transport(int v, int v2, int sigma) const;

    /// Polytope of a maximal cell in intrinsic coordinates.
    LatticePolytope cell_polytope(int sigma) const;
    /// Images psi_{v,sigma}(w) of the vertices w != v of a cell tau containing v, computed through sigma.
    std::vector<IntVector> tangent_generators(int v, int tau, int sigma) const;

    bool all_charts_in_sl() const;
    /**
     * Holonomy of Lambda lies in SL_n(Z): the chart determinant signs factor as
     * a(v) b(sigma), i.e. every cycle of the vertex/maximal-cell incidence graph
     * carries sign product +1.
     */
    bool holonomy_in_sl() const;

private:
    std::map<int, std::size_t> pos_;
    std::vector<std::vector<int>> closure_, maximal_over_, star_;
    std::map<std::pair<int, int>, IntMatrix> chart_inv_;
};

ValidationReport validate(const IntegralAffineComplex& c);
/// Checks of phi alone (continuity, compatibility across vertices, convexity).
std::vector<Violation> validate_phi(const IntegralAffineComplex& c, bool strict);
bool phi_strictly_convex(const IntegralAffineComplex& c);

IntegralAffineComplex complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(const IntegralAffineComplex& c);
IntegralAffineComplex load_complex(const std::string& path);

/// Euler characteristic of the cell poset.
long euler_characteristic(const IntegralAffineComplex& c);

// ---- builders used for fixtures and tests -------------------------------

/// Cubical torus (Z/size)^n with unit cubes, identity charts and phi = sum max(0, x_i).
IntegralAffineComplex cubical_torus(int n, int size);
/**
 * Two triangles glued along an edge with charts chosen so that the loop
 * around the edge has transport [[1,1],[0,1]]. An open complex (has boundary).
 */
IntegralAffineComplex shear_fixture();

}  // namespace ahodge
