#include "ahodge/complex.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace ahodge {

bool ValidationReport::valid_up_to_boundary() const
{
    return std::all_of(violations.begin(), violations.end(), [](const Violation& v) { return v.kind == "boundary"; });
}

nlohmann::json ValidationReport::to_json() const
{
    nlohmann::json list = nlohmann::json::array();
    for (const auto& v : violations) list.push_back({{"kind", v.kind}, {"message", v.message}});
    return {{"valid", valid()}, {"violations", list}};
}

// ---- indexing --------------------------------------------------------------

void IntegralAffineComplex::index()
{
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
    pos_.clear();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        require(pos_.emplace(cells[i].id, i).second, "InvalidStructure",
                "duplicate cell id " + std::to_string(cells[i].id));
        std::sort(cells[i].vertices.begin(), cells[i].vertices.end());
        std::sort(cells[i].faces.begin(), cells[i].faces.end());
    }
    const std::size_t m = cells.size();
    closure_.assign(m, {});
    std::vector<char> state(m, 0);
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
        if (state[i] == 2) return;
        require(state[i] == 0, "InvalidStructure", "face relation has a cycle at cell " + std::to_string(cells[i].id));
        state[i] = 1;
        std::set<int> acc{cells[i].id};
        for (int f : cells[i].faces) {
            auto it = pos_.find(f);
            require(it != pos_.end(), "InvalidStructure", "unknown face id " + std::to_string(f));
            visit(it->second);
            acc.insert(closure_[it->second].begin(), closure_[it->second].end());
        }
        closure_[i].assign(acc.begin(), acc.end());
        state[i] = 2;
    };
    for (std::size_t i = 0; i < m; ++i) visit(i);

    maximal_over_.assign(m, {});
    star_.assign(m, {});
    for (std::size_t i = 0; i < m; ++i)
        for (int t : closure_[i]) {
            star_[pos_.at(t)].push_back(cells[i].id);
            if (cells[i].dim == n) maximal_over_[pos_.at(t)].push_back(cells[i].id);
        }
    for (auto& s : star_) std::sort(s.begin(), s.end());
    for (auto& s : maximal_over_) std::sort(s.begin(), s.end());

    chart_inv_.clear();
    for (const auto& [key, a] : charts)
        if (a.rows() == std::size_t(n) && a.cols() == std::size_t(n)) {
            Int d = determinant(a);
            if (d == 1 || d == -1) chart_inv_[key] = unimodular_inverse(a);
        }
}

const Cell& IntegralAffineComplex::cell(int id) const
{
    auto it = pos_.find(id);
    require(it != pos_.end(), "RangeError", "unknown cell id " + std::to_string(id));
    return cells[it->second];
}

bool IntegralAffineComplex::is_face(int tau, int sigma) const
{
    const auto& c = closure(sigma);
    return std::binary_search(c.begin(), c.end(), tau);
}

const std::vector<int>& IntegralAffineComplex::closure(int id) const
{
    cell(id);
    return closure_[pos_.at(id)];
}

const std::vector<int>& IntegralAffineComplex::maximal_over(int id) const
{
    cell(id);
    return maximal_over_[pos_.at(id)];
}

const std::vector<int>& IntegralAffineComplex::star(int id) const
{
    cell(id);
    return star_[pos_.at(id)];
}

std::vector<int> IntegralAffineComplex::cells_of_dim(int d) const
{
    std::vector<int> out;
    for (const auto& c : cells)
        if (c.dim == d) out.push_back(c.id);
    return out;
}

const IntVector& IntegralAffineComplex::coord(int sigma, int v) const
{
    auto it = vertex_coords.find(sigma);
    require(it != vertex_coords.end(), "RangeError", "no geometry for cell " + std::to_string(sigma));
    auto jt = it->second.find(v);
    require(jt != it->second.end(), "RangeError",
            "vertex " + std::to_string(v) + " not in cell " + std::to_string(sigma));
    return jt->second;
}

const IntMatrix& IntegralAffineComplex::chart(int v, int sigma) const
{
    auto it = charts.find({v, sigma});
    require(it != charts.end(), "RangeError",
            "no chart for vertex " + std::to_string(v) + " in cell " + std::to_string(sigma));
    return it->second;
}

const IntMatrix& IntegralAffineComplex::chart_inverse(int v, int sigma) const
{
    auto it = chart_inv_.find({v, sigma});
    require(it != chart_inv_.end(), "RangeError",
            "no unimodular chart for vertex " + std::to_string(v) + " in cell " + std::to_string(sigma));
    return it->second;
}

IntVector IntegralAffineComplex::psi(int v, int sigma, int w) const
{
    return chart(v, sigma) * sub(coord(sigma, w), coord(sigma, v));
}

IntVector IntegralAffineComplex::psi_point(int v, int sigma, const IntVector& x) const
{
    return chart(v, sigma) * sub(x, coord(sigma, v));
}

IntMatrix IntegralAffineComplex::parallel_transport(int v, int v2, int sigma) const
{
    require(is_face(v, sigma) && is_face(v2, sigma), "RangeError",
            "transport endpoints must be vertices of cell " + std::to_string(sigma));
    if (v == v2) return IntMatrix::identity(std::size_t(n));
    return chart(v2, sigma) * chart_inverse(v, sigma);
}

LatticePolytope IntegralAffineComplex::cell_polytope(int sigma) const
{
    std::vector<IntVector> pts;
    for (int v : cell(sigma).vertices) pts.push_back(coord(sigma, v));
    return LatticePolytope(pts);
}

std::vector<IntVector> IntegralAffineComplex::tangent_generators(int v, int tau, int sigma) const
{
    std::vector<IntVector> out;
    for (int w : cell(tau).vertices)
        if (w != v) out.push_back(psi(v, sigma, w));
    return out;
}

bool IntegralAffineComplex::all_charts_in_sl() const
{
    for (const auto& [key, a] : charts)
        if (determinant(a) != 1) return false;
    return true;
}

bool IntegralAffineComplex::holonomy_in_sl() const
{
    // two-colour the incidence graph: vertices v and maximal cells (stored as ~sigma)
    std::map<int, std::vector<std::pair<int, int>>> adj;
    for (const auto& [key, a] : charts) {
        const int sign = determinant(a) > 0 ? 1 : -1;
        adj[key.first].push_back({~key.second, sign});
        adj[~key.second].push_back({key.first, sign});
    }
    std::map<int, int> colour;
    for (const auto& [start, edges] : adj) {
        if (colour.count(start)) continue;
        colour[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (const auto& [y, sign] : adj[x]) {
                const int want = colour[x] * sign;
                auto it = colour.find(y);
                if (it == colour.end()) {
                    colour[y] = want;
                    stack.push_back(y);
                } else if (it->second != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

long euler_characteristic(const IntegralAffineComplex& c)
{
    long chi = 0;
    for (const auto& cell : c.cells) chi += (cell.dim % 2 == 0) ? 1 : -1;
    return chi;
}

// ---- validation ------------------------------------------------------------

namespace {

std::string ids(std::initializer_list<int> list)
{
    std::ostringstream os;
    bool first = true;
    for (int x : list) {
        os << (first ? "" : ",") << x;
        first = false;
    }
    return os.str();
}

bool check_structure(const IntegralAffineComplex& c, std::vector<Violation>& out)
{
    const std::size_t before = out.size();
    auto bad = [&](const std::string& m) { out.push_back({"structure", m}); };
    if (c.n < 1) bad("dimension must be positive");
    std::map<int, const Cell*> by_id;
    for (const auto& cell : c.cells)
        if (!by_id.emplace(cell.id, &cell).second) bad("duplicate cell id " + std::to_string(cell.id));
    for (const auto& cell : c.cells) {
        const std::string tag = "cell " + std::to_string(cell.id);
        if (cell.dim < 0 || cell.dim > c.n) {
            bad(tag + " has dimension out of range");
            continue;
        }
        if (cell.dim == 0) {
            if (cell.vertices != std::vector<int>{cell.id}) bad(tag + " is a vertex but does not list itself");
            if (!cell.faces.empty()) bad(tag + " is a vertex with faces");
            continue;
        }
        if (cell.faces.empty()) bad(tag + " has no faces");
        std::set<int> verts;
        for (int f : cell.faces) {
            auto it = by_id.find(f);
            if (it == by_id.end()) {
                bad(tag + " lists unknown face " + std::to_string(f));
                continue;
            }
            if (it->second->dim != cell.dim - 1) bad(tag + " lists face " + std::to_string(f) + " of wrong dimension");
            verts.insert(it->second->vertices.begin(), it->second->vertices.end());
        }
        std::set<int> listed(cell.vertices.begin(), cell.vertices.end());
        if (listed.size() != cell.vertices.size()) bad(tag + " repeats a vertex");
        if (verts != listed) bad(tag + " vertex list differs from the union of its faces' vertices");
        for (int v : cell.vertices) {
            auto it = by_id.find(v);
            if (it == by_id.end() || it->second->dim != 0) bad(tag + " lists non-vertex " + std::to_string(v));
        }
        if (cell.vertices.size() < std::size_t(cell.dim) + 1) bad(tag + " has too few vertices");
    }
    return out.size() == before;
}

}  // namespace

std::vector<Violation> validate_phi(const IntegralAffineComplex& c, bool strict)
{
    std::vector<Violation> out;
    if (c.phi.empty()) return out;
    auto bad = [&](const std::string& m) { out.push_back({"phi", m}); };
    const auto& f = c.phi.functionals;
    auto fn = [&](int v, int s) -> const IntVector* {
        auto it = f.find(v);
        if (it == f.end()) return nullptr;
        auto jt = it->second.find(s);
        return jt == it->second.end() ? nullptr : &jt->second;
    };
    for (const auto& [v, per] : f) {
        if (!c.has_cell(v) || c.cell(v).dim != 0) {
            bad("phi given at non-vertex " + std::to_string(v));
            continue;
        }
        for (const auto& [s, g] : per)
            if (!c.has_cell(s) || c.cell(s).dim != c.n || !c.is_face(v, s) || g.size() != std::size_t(c.n))
                bad("phi functional at (" + ids({v, s}) + ") does not match a maximal cell containing the vertex");
    }
    for (int v : c.vertex_ids())
        for (int s : c.maximal_over(v))
            if (!fn(v, s)) bad("phi missing at (" + ids({v, s}) + ")");
    if (!out.empty()) return out;

    for (int rho : c.cells_of_dim(c.n - 1)) {
        const auto& mx = c.maximal_over(rho);
        if (mx.size() != 2) continue;
        const int s0 = mx[0], s1 = mx[1];
        const auto& rv = c.cell(rho).vertices;
        for (int v : rv) {
            IntVector delta = sub(*fn(v, s1), *fn(v, s0));
            for (const auto& g : c.tangent_generators(v, rho, s0))
                if (dot(delta, g) != 0) bad("phi is discontinuous across cell " + std::to_string(rho) + " at vertex " + std::to_string(v));
            int u1 = -1;
            for (int w : c.cell(s1).vertices)
                if (!c.is_face(w, rho)) u1 = w;
            Int jump = dot(delta, c.psi(v, s1, u1));
            if (jump < 0 || (strict && jump == 0))
                bad("phi is not " + std::string(strict ? "strictly " : "") + "convex across cell " +
                    std::to_string(rho) + " at vertex " + std::to_string(v));
            for (int v2 : rv) {
                if (v2 == v) continue;
                IntVector delta2 = sub(*fn(v2, s1), *fn(v2, s0));
                IntMatrix l = c.parallel_transport(v, v2, s0);
                if (l.transpose() * delta2 != delta)
                    bad("phi kinks at vertices " + ids({v, v2}) + " of cell " + std::to_string(rho) + " disagree");
            }
        }
    }
    return out;
}

bool phi_strictly_convex(const IntegralAffineComplex& c)
{
    if (c.phi.empty()) return false;
    return validate_phi(c, true).empty();
}

ValidationReport validate(const IntegralAffineComplex& c0)
{
    ValidationReport rep;
    auto& out = rep.violations;
    if (!check_structure(c0, out)) return rep;
    IntegralAffineComplex c = c0;
    try {
        c.index();
    } catch (const Error& e) {
        out.push_back({"structure", e.what()});
        return rep;
    }
    const int n = c.n;

    // manifold conditions
    std::set<int> boundary_vertices;
    for (const auto& cell : c.cells) {
        const auto& mx = c.maximal_over(cell.id);
        if (mx.empty()) out.push_back({"manifold", "cell " + std::to_string(cell.id) + " lies in no maximal cell"});
        if (cell.dim == n - 1) {
            if (mx.size() == 1) {
                out.push_back({"boundary", "cell " + std::to_string(cell.id) + " lies in a single maximal cell"});
                boundary_vertices.insert(cell.vertices.begin(), cell.vertices.end());
            } else if (mx.size() != 2) {
                out.push_back({"manifold", "cell " + std::to_string(cell.id) + " lies in " +
                                               std::to_string(mx.size()) + " maximal cells"});
            }
        }
    }

    // geometry of maximal cells
    bool geometry_ok = true;
    for (int s : c.maximal_cells()) {
        const std::string tag = "maximal cell " + std::to_string(s);
        auto it = c.vertex_coords.find(s);
        if (it == c.vertex_coords.end()) {
            out.push_back({"geometry", tag + " has no vertex coordinates"});
            geometry_ok = false;
            continue;
        }
        std::set<int> have;
        bool sizes = true;
        for (const auto& [v, x] : it->second) {
            have.insert(v);
            if (x.size() != std::size_t(n)) sizes = false;
        }
        const auto& verts = c.cell(s).vertices;
        if (have != std::set<int>(verts.begin(), verts.end()) || !sizes) {
            out.push_back({"geometry", tag + " coordinates do not match its vertices"});
            geometry_ok = false;
            continue;
        }
        LatticePolytope p = c.cell_polytope(s);
        if (!p.full_dimensional() || p.vertices().size() != verts.size()) {
            out.push_back({"geometry", tag + " coordinates are not the vertices of a full-dimensional polytope"});
            geometry_ok = false;
            continue;
        }
        std::map<int, std::size_t> vidx;
        for (int v : verts)
            vidx[v] = std::size_t(std::find(p.vertices().begin(), p.vertices().end(), c.coord(s, v)) - p.vertices().begin());
        std::vector<std::size_t> count(std::size_t(n) + 1, 0);
        for (int t : c.closure(s)) {
            const Cell& tc = c.cell(t);
            ++count[std::size_t(tc.dim)];
            FaceSet fs;
            for (int v : tc.vertices) fs.push_back(vidx[v]);
            std::sort(fs.begin(), fs.end());
            const auto& cand = p.face_sets(tc.dim);
            if (std::find(cand.begin(), cand.end(), fs) == cand.end()) {
                out.push_back({"geometry", "cell " + std::to_string(t) + " is not a face of the polytope of " + tag});
                geometry_ok = false;
            }
        }
        for (int d = 0; d <= n; ++d)
            if (count[std::size_t(d)] != p.face_sets(d).size()) {
                out.push_back({"geometry", tag + " face count in dimension " + std::to_string(d) + " differs from its polytope"});
                geometry_ok = false;
            }
    }

    // charts
    bool charts_ok = true;
    for (const auto& [key, a] : c.charts) {
        auto [v, s] = key;
        if (!c.has_cell(v) || !c.has_cell(s) || c.cell(s).dim != n || !c.is_face(v, s)) {
            out.push_back({"chart", "chart (" + ids({v, s}) + ") does not belong to a vertex of a maximal cell"});
            charts_ok = false;
            continue;
        }
        if (a.rows() != std::size_t(n) || a.cols() != std::size_t(n)) {
            out.push_back({"chart", "chart (" + ids({v, s}) + ") has wrong size"});
            charts_ok = false;
            continue;
        }
        Int d = determinant(a);
        if (d != 1 && d != -1) {
            out.push_back({"chart", "chart (" + ids({v, s}) + ") has determinant " + d.str()});
            charts_ok = false;
        }
    }
    for (int s : c.maximal_cells())
        for (int v : c.cell(s).vertices)
            if (!c.charts.count({v, s})) {
                out.push_back({"chart", "missing chart (" + ids({v, s}) + ")"});
                charts_ok = false;
            }
    if (!geometry_ok || !charts_ok) return rep;

    // compatibility of the charts at each vertex along shared cells
    for (int v : c.vertex_ids())
        for (int t : c.star(v)) {
            if (c.cell(t).dim == n) continue;
            const auto& mx = c.maximal_over(t);
            for (std::size_t k = 1; k < mx.size(); ++k)
                for (int w : c.cell(t).vertices)
                    if (c.psi(v, mx[0], w) != c.psi(v, mx[k], w))
                        out.push_back({"compatibility", "charts at vertex " + std::to_string(v) + " of cells " +
                                                            ids({mx[0], mx[k]}) + " disagree on cell " + std::to_string(t)});
        }

    // fan structure at each vertex
    for (int v : c.vertex_ids()) {
        const bool open = boundary_vertices.count(v) != 0;
        std::vector<IntVector> wall_normals;
        bool walls_ok = true;
        for (int rho : c.star(v)) {
            if (c.cell(rho).dim != n - 1) continue;
            const auto& mx = c.maximal_over(rho);
            if (mx.size() != 2) continue;
            auto gens = c.tangent_generators(v, rho, mx[0]);
            IntMatrix ker = integer_kernel(IntMatrix::from_rows(gens, std::size_t(n)));
            if (ker.rows() != 1) {
                out.push_back({"fan", "cell " + std::to_string(rho) + " is degenerate in the chart at vertex " + std::to_string(v)});
                walls_ok = false;
                continue;
            }
            IntVector nv = ker.row(0);
            wall_normals.push_back(nv);
            Int side[2];
            for (int k = 0; k < 2; ++k) {
                side[k] = 0;
                for (int w : c.cell(mx[std::size_t(k)]).vertices)
                    if (!c.is_face(w, rho)) side[k] = dot(nv, c.psi(v, mx[std::size_t(k)], w));
            }
            if (side[0] == 0 || side[1] == 0 || (side[0] > 0) == (side[1] > 0)) {
                out.push_back({"fan", "cells " + ids({mx[0], mx[1]}) + " overlap across cell " + std::to_string(rho) +
                                          " in the chart at vertex " + std::to_string(v)});
                walls_ok = false;
            }
        }
        if (open || !walls_ok) continue;
        // a generic vector must be covered exactly once
        std::vector<Cone> cones;
        for (int s : c.maximal_over(v)) cones.emplace_back(std::size_t(n), c.tangent_generators(v, s, s));
        for (long base = 101;; base += 2) {
            IntVector x(static_cast<std::size_t>(n));
            Int p = 1;
            for (int i = 0; i < n; ++i) {
                x[std::size_t(i)] = p;
                p *= base;
            }
            bool generic = true;
            for (const auto& nv : wall_normals)
                if (dot(nv, x) == 0) generic = false;
            if (!generic) continue;
            std::size_t hits = 0;
            for (const auto& cone : cones)
                if (cone.contains(x)) ++hits;
            if (hits != 1)
                out.push_back({"fan", "charts at vertex " + std::to_string(v) + " cover a generic direction " +
                                          std::to_string(hits) + " times"});
            break;
        }
    }

    for (auto& vio : validate_phi(c, false)) out.push_back(vio);
    return rep;
}

// ---- builders --------------------------------------------------------------

IntegralAffineComplex cubical_torus(int n, int size)
{
    require(n >= 1 && n <= 4 && size >= 2, "RangeError", "cubical torus parameters");
    IntegralAffineComplex c;
    c.n = n;
    long nverts = 1;
    for (int i = 0; i < n; ++i) nverts *= size;
    auto point_index = [&](std::vector<long> x) {
        long idx = 0, mul = 1;
        for (int i = 0; i < n; ++i) {
            long xi = ((x[std::size_t(i)] % size) + size) % size;
            idx += xi * mul;
            mul *= size;
        }
        return idx;
    };
    auto point_of = [&](long idx) {
        std::vector<long> x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            x[std::size_t(i)] = idx % size;
            idx /= size;
        }
        return x;
    };
    // cells keyed by (direction mask, base point), ids assigned by dimension then mask then base
    std::map<std::pair<unsigned, long>, int> id_of;
    int next = 0;
    for (int d = 0; d <= n; ++d)
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) != d) continue;
            for (long b = 0; b < nverts; ++b) id_of[{mask, b}] = next++;
        }
    for (const auto& [key, id] : id_of) {
        auto [mask, b] = key;
        Cell cell;
        cell.id = id;
        cell.dim = __builtin_popcount(mask);
        auto base = point_of(b);
        for (unsigned sub = 0; sub < (1u << n); ++sub) {
            if ((sub & mask) != sub) continue;
            auto x = base;
            for (int i = 0; i < n; ++i)
                if (sub & (1u << i)) ++x[std::size_t(i)];
            cell.vertices.push_back(id_of.at({0u, point_index(x)}));
        }
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            unsigned m2 = mask & ~(1u << i);
            auto x = base;
            cell.faces.push_back(id_of.at({m2, b}));
            ++x[std::size_t(i)];
            cell.faces.push_back(id_of.at({m2, point_index(x)}));
        }
        std::sort(cell.vertices.begin(), cell.vertices.end());
        std::sort(cell.faces.begin(), cell.faces.end());
        c.cells.push_back(cell);
        if (cell.dim == n) {
            for (unsigned sub = 0; sub < (1u << n); ++sub) {
                auto x = base;
                for (int i = 0; i < n; ++i)
                    if (sub & (1u << i)) ++x[std::size_t(i)];
                int v = id_of.at({0u, point_index(x)});
                IntVector coords;
                for (long xi : x) coords.emplace_back(xi);
                c.vertex_coords[id][v] = coords;
                c.charts[{v, id}] = IntMatrix::identity(std::size_t(n));
                IntVector f(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) f[std::size_t(i)] = (sub & (1u << i)) ? 0 : 1;
                c.phi.functionals[v][id] = f;
            }
        }
    }
    c.index();
    return c;
}

IntegralAffineComplex shear_fixture()
{
    IntegralAffineComplex c;
    c.n = 2;
    c.cells = {
        {0, 0, {0}, {}},         {1, 0, {1}, {}},          {2, 0, {2}, {}},         {3, 0, {3}, {}},
        {4, 1, {0, 1}, {0, 1}},  {5, 1, {0, 2}, {0, 2}},   {6, 1, {1, 2}, {1, 2}},  {7, 1, {0, 3}, {0, 3}},
        {8, 1, {1, 3}, {1, 3}},  {9, 2, {0, 1, 2}, {4, 5, 6}}, {10, 2, {0, 1, 3}, {4, 7, 8}},
    };
    auto v2 = [](long a, long b) { return IntVector{Int(a), Int(b)}; };
    c.vertex_coords[9] = {{0, v2(0, 0)}, {1, v2(1, 0)}, {2, v2(0, 1)}};
    c.vertex_coords[10] = {{0, v2(0, 0)}, {1, v2(1, 0)}, {3, v2(0, -1)}};
    const IntMatrix id = IntMatrix::identity(2);
    const IntMatrix m = to_int_matrix({{1, -1}, {0, 1}});
    c.charts[{0, 9}] = id;
    c.charts[{1, 9}] = id;
    c.charts[{2, 9}] = id;
    c.charts[{0, 10}] = id;
    c.charts[{1, 10}] = m;
    c.charts[{3, 10}] = id;
    c.index();
    return c;
}

}  // namespace ahodge
