#include "ahodge/legendre.hpp"

#include <algorithm>

namespace ahodge {

IntegralAffineComplex legendre_transform(const IntegralAffineComplex& c)
{
    require(!c.phi.empty() && phi_strictly_convex(c), "NotStrictlyConvex",
            "the Legendre transform needs a strictly convex phi");
    const int n = c.n;
    IntegralAffineComplex d;
    d.n = n;

    std::map<int, std::vector<int>> cofaces;  // tau -> cells having tau as a facet
    for (const auto& cell : c.cells)
        for (int f : cell.faces) cofaces[f].push_back(cell.id);

    for (const auto& cell : c.cells) {
        Cell dual;
        dual.id = cell.id;
        dual.dim = n - cell.dim;
        dual.vertices = c.maximal_over(cell.id);
        auto it = cofaces.find(cell.id);
        if (it != cofaces.end()) dual.faces = it->second;
        std::sort(dual.vertices.begin(), dual.vertices.end());
        std::sort(dual.faces.begin(), dual.faces.end());
        d.cells.push_back(dual);
    }

    for (int v : c.vertex_ids())
        for (int s : c.maximal_over(v)) {
            d.vertex_coords[v][s] = scale(Int(-1), c.phi.functionals.at(v).at(s));
            d.charts[{s, v}] = c.chart(v, s).transpose();
        }

    for (int s : c.maximal_cells()) {
        const int w0 = c.base_vertex(s);
        for (int w : c.cell(s).vertices) d.phi.functionals[s][w] = sub(c.coord(s, w0), c.coord(s, w));
    }

    try {
        d.index();
    } catch (const Error& e) {
        fail("UnsupportedStructure", std::string("dual cells do not form a complex: ") + e.what());
    }
    ValidationReport rep = validate(d);
    if (!rep.valid()) {
        std::string msg = "dual cells do not glue: " + rep.violations.front().kind + ": " + rep.violations.front().message;
        if (rep.violations.size() > 1) msg += " (+" + std::to_string(rep.violations.size() - 1) + " more)";
        fail("UnsupportedStructure", msg);
    }
    return d;
}

bool same_up_to_normalization(const IntegralAffineComplex& a, const IntegralAffineComplex& b)
{
    if (a.n != b.n || a.cells.size() != b.cells.size()) return false;
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        const Cell &x = a.cells[i], &y = b.cells[i];
        if (x.id != y.id || x.dim != y.dim || x.vertices != y.vertices || x.faces != y.faces) return false;
    }
    if (a.charts != b.charts) return false;
    for (int s : a.maximal_cells()) {
        const int w0 = a.base_vertex(s);
        for (int w : a.cell(s).vertices)
            if (sub(a.coord(s, w), a.coord(s, w0)) != sub(b.coord(s, w), b.coord(s, w0))) return false;
    }
    if (a.phi.empty() != b.phi.empty()) return false;
    if (a.phi.empty()) return true;
    for (int v : a.vertex_ids()) {
        const int s0 = a.reference_maximal(v);
        for (int s : a.maximal_over(v)) {
            // the difference to the reference cell is independent of linear shifts, once transported
            IntVector da = sub(a.phi.functionals.at(v).at(s), a.phi.functionals.at(v).at(s0));
            IntVector db = sub(b.phi.functionals.at(v).at(s), b.phi.functionals.at(v).at(s0));
            if (da != db) return false;
        }
    }
    return true;
}

}  // namespace ahodge
