#include "ahodge/reflexive.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ahodge {

bool is_reflexive(const LatticePolytope& p)
{
    if (!p.full_dimensional() || p.dim() < 1) return false;
    if (!p.in_relative_interior(IntVector(p.ambient_dim()))) return false;
    for (const auto& f : p.facets())
        if (f.ambient_offset != -1) return false;
    return true;
}

LatticePolytope polar_dual(const LatticePolytope& p)
{
    require(is_reflexive(p), "NotReflexive", "polar dual needs a reflexive polytope");
    std::vector<IntVector> pts;
    for (const auto& f : p.facets()) pts.push_back(f.ambient_normal);
    return LatticePolytope(pts);
}

namespace {

/**
 * Height function on the boundary lattice points. For a simplex whose lattice
 * points have integral barycentric numerators k_0..k_{n+1}, the quadratic
 * sum over i<j of (Y_j - Y_i)^2 in the partial sums Y of k cuts out the
 * alcove triangulation, which is unimodular and restricts to every face.
 * Other polytopes use |x|^2, which is strictly convex on any lattice.
 */
std::vector<Int> boundary_heights(const LatticePolytope& xi, const std::vector<IntVector>& pts)
{
    const std::size_t dim = xi.ambient_dim();
    std::vector<Int> h;
    if (xi.vertices().size() == dim + 1) {
        RatMatrix a(dim + 1, dim + 1);
        for (std::size_t j = 0; j <= dim; ++j) {
            for (std::size_t i = 0; i < dim; ++i) a(i, j) = xi.vertices()[j][i];
            a(dim, j) = 1;
        }
        std::vector<RatVector> beta;
        Int denom = 1;
        for (const auto& x : pts) {
            RatVector rhs(dim + 1);
            for (std::size_t i = 0; i < dim; ++i) rhs[i] = x[i];
            rhs[dim] = 1;
            auto b = solve_q(a, rhs);
            require(bool(b), "InternalError", "barycentric coordinates of a lattice point");
            for (const auto& q : *b) denom = boost::multiprecision::lcm(denom, Int(boost::multiprecision::denominator(q)));
            beta.push_back(*b);
        }
        for (const auto& b : beta) {
            std::vector<Int> y;
            Rat run = 0;
            for (const auto& q : b) {
                run += q * Rat(denom);
                y.push_back(boost::multiprecision::numerator(run));
            }
            Int s = 0;
            for (std::size_t i = 0; i < y.size(); ++i)
                for (std::size_t j = i + 1; j < y.size(); ++j) s += (y[j] - y[i]) * (y[j] - y[i]);
            h.push_back(s);
        }
    } else {
        for (const auto& x : pts) h.push_back(dot(x, x));
    }
    return h;
}

struct FacetFrame {
    IntVector normal;  // a_F with <a_F, x> = -1 on F
    IntMatrix basis;   // rows span a_F^perp cap Z^{n+1} (HNF)
    IntVector origin;
    IntVector local(const IntVector& x) const
    {
        auto y = echelon_coordinates(basis, sub(x, origin));
        require(bool(y), "InternalError", "boundary point is off the facet lattice");
        return *y;
    }
};

}  // namespace

IntegralAffineComplex from_reflexive_polytope(const LatticePolytope& xi)
{
    require(is_reflexive(xi), "NotReflexive", "polytope is not reflexive (0 must be interior and every facet at distance 1)");
    const std::size_t dim = xi.ambient_dim();
    const int n = int(dim) - 1;
    require(n >= 1, "NotReflexive", "polytope must have dimension at least 2");

    std::vector<IntVector> pts;
    for (auto& x : xi.lattice_points())
        if (!is_zero(x)) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    const std::vector<Int> height = boundary_heights(xi, pts);

    // per facet: frame, regular subdivision, cells as global point index sets
    std::vector<FacetFrame> frames;
    std::map<std::vector<std::size_t>, std::size_t> maximal_facet;  // extreme point set -> facet
    for (std::size_t fi = 0; fi < xi.facets().size(); ++fi) {
        const auto& f = xi.facets()[fi];
        FacetFrame fr;
        fr.normal = f.ambient_normal;
        fr.basis = integer_kernel(IntMatrix::from_rows({f.ambient_normal}));
        fr.origin = xi.vertices()[f.vertices.front()];
        std::vector<std::size_t> on;
        std::vector<IntVector> local;
        std::vector<Int> hts;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (dot(f.ambient_normal, pts[i]) == -1) {
                on.push_back(i);
                local.push_back(fr.local(pts[i]));
                hts.push_back(height[i]);
            }
        for (const auto& cell : regular_subdivision(local, hts)) {
            std::vector<IntVector> cp;
            for (auto k : cell) cp.push_back(pts[on[k]]);
            LatticePolytope poly(cp);
            std::vector<std::size_t> ext;
            for (const auto& v : poly.vertices())
                ext.push_back(std::size_t(std::lower_bound(pts.begin(), pts.end(), v) - pts.begin()));
            std::sort(ext.begin(), ext.end());
            maximal_facet.emplace(ext, fi);
        }
        frames.push_back(fr);
    }

    // face poset: every face of every maximal cell, keyed by its vertex set
    std::set<std::size_t> used_points;
    std::map<std::vector<std::size_t>, std::set<std::vector<std::size_t>>> faces_of;
    std::map<std::vector<std::size_t>, int> dim_of;
    for (const auto& [ext, fi] : maximal_facet) {
        std::vector<IntVector> cp;
        for (auto k : ext) cp.push_back(pts[k]);
        LatticePolytope poly(cp);
        auto global = [&](const FaceSet& fs) {
            std::vector<std::size_t> g;
            for (auto k : fs) g.push_back(ext[k]);  // poly vertices are sorted like ext
            std::sort(g.begin(), g.end());
            return g;
        };
        for (int d = 0; d <= n; ++d)
            for (const auto& fs : poly.face_sets(d)) {
                auto g = global(fs);
                auto& entry = faces_of[g];
                dim_of[g] = d;
                if (d > 0) {
                    LatticePolytope face = poly.face(fs);
                    for (const auto& sub : face.face_sets(d - 1)) {
                        std::vector<std::size_t> gs;
                        for (auto k : sub) gs.push_back(g[k]);
                        std::sort(gs.begin(), gs.end());
                        entry.insert(gs);
                    }
                }
            }
        used_points.insert(ext.begin(), ext.end());
    }
    require(used_points.size() == pts.size(), "InternalError", "subdivision misses boundary lattice points");

    // ids: by dimension, then by sorted vertex ids
    std::vector<std::pair<int, std::vector<std::size_t>>> order;
    for (const auto& [g, d] : dim_of) order.push_back({d, g});
    std::sort(order.begin(), order.end());
    std::map<std::vector<std::size_t>, int> id_of;
    for (std::size_t i = 0; i < order.size(); ++i) id_of[order[i].second] = int(i);

    IntegralAffineComplex c;
    c.n = n;
    for (const auto& [d, g] : order) {
        Cell cell;
        cell.id = id_of.at(g);
        cell.dim = d;
        for (auto k : g) cell.vertices.push_back(id_of.at({k}));
        for (const auto& sub : faces_of.at(g)) cell.faces.push_back(id_of.at(sub));
        std::sort(cell.vertices.begin(), cell.vertices.end());
        std::sort(cell.faces.begin(), cell.faces.end());
        c.cells.push_back(cell);
    }
    auto point_of_vertex = [&](int v) { return pts[order[std::size_t(v)].second.front()]; };

    // geometry and charts
    std::map<int, IntMatrix> complement;  // vertex -> rows 2..n+1 of U with U v = e_1
    std::map<int, IntMatrix> complement_inverse_cols;  // vertex -> U^{-1} (columns w_0..w_n)
    for (int v = 0; v < int(pts.size()); ++v) {
        IntMatrix u = basis_completion(point_of_vertex(v));
        IntMatrix q(dim - 1, dim);
        for (std::size_t i = 1; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) q(i - 1, j) = u(i, j);
        complement[v] = q;
        complement_inverse_cols[v] = unimodular_inverse(u);
    }
    std::map<int, std::size_t> facet_of_cell;
    for (const auto& [ext, fi] : maximal_facet) {
        const int s = id_of.at(ext);
        facet_of_cell[s] = fi;
        const auto& fr = frames[fi];
        for (auto k : ext) {
            const int v = id_of.at({k});
            c.vertex_coords[s][v] = fr.local(pts[k]);
            c.charts[{v, s}] = complement.at(v) * fr.basis.transpose();
        }
    }
    c.index();

    // phi: on the cone over sigma, g_sigma = N (-a_F) + linear extension of the heights
    std::map<int, RatVector> tri_part;
    for (const auto& [s, fi] : facet_of_cell) {
        const auto& verts = c.cell(s).vertices;
        RatMatrix a(verts.size(), dim);
        RatVector rhs(verts.size());
        for (std::size_t r = 0; r < verts.size(); ++r) {
            const auto k = order[std::size_t(verts[r])].second.front();
            for (std::size_t j = 0; j < dim; ++j) a(r, j) = pts[k][j];
            rhs[r] = height[k];
        }
        auto g = solve_q(a, rhs);
        require(bool(g), "InternalError", "heights are not affine on a cell of the subdivision");
        tri_part[s] = *g;
    }
    for (long nmul = 0; nmul <= (1L << 30); nmul = nmul == 0 ? 1 : 2 * nmul) {
        c.phi.functionals.clear();
        auto total = [&](int s) {
            RatVector g = tri_part.at(s);
            const auto& a = frames[facet_of_cell.at(s)].normal;
            for (std::size_t j = 0; j < dim; ++j) g[j] -= Rat(nmul) * Rat(a[j]);
            return g;
        };
        for (int v : c.vertex_ids()) {
            const RatVector gref = total(c.reference_maximal(v));
            const IntMatrix& w = complement_inverse_cols.at(v);
            for (int s : c.maximal_over(v)) {
                RatVector diff = total(s);
                for (std::size_t j = 0; j < dim; ++j) diff[j] -= gref[j];
                IntVector f(dim - 1);
                for (std::size_t i = 1; i < dim; ++i) {
                    Rat val = 0;
                    for (std::size_t j = 0; j < dim; ++j) val += diff[j] * Rat(w(j, i));
                    require(boost::multiprecision::denominator(val) == 1, "UnsupportedStructure",
                            "boundary height function is not integral on a cell");
                    f[i - 1] = boost::multiprecision::numerator(val);
                }
                c.phi.functionals[v][s] = f;
            }
        }
        if (phi_strictly_convex(c)) return c;
    }
    fail("InternalError", "no strictly convex multiple of the boundary gauge was found");
}

LatticePolytope reflexive_input_from_json(const nlohmann::json& j)
{
    require(j.is_object(), "ParseError", "reflexive input must be a JSON object");
    if (j.contains("source_polytope")) return polytope_from_json(j["source_polytope"]);
    return polytope_from_json(j);
}

}  // namespace ahodge
