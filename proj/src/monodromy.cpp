#include "ahodge/monodromy.hpp"

#include <algorithm>
#include <numeric>

#include "ahodge/parallel.hpp"

namespace ahodge {

namespace {

nlohmann::json vec_json(const IntVector& v)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(x.convert_to<long long>());
    return a;
}

/// Vertex of a maximal cell that is not on the codimension one face rho.
int opposite_vertex(const IntegralAffineComplex& c, int sigma, int rho)
{
    for (int w : c.cell(sigma).vertices)
        if (!c.is_face(w, rho)) return w;
    fail("InvalidStructure", "cell " + std::to_string(rho) + " is not a proper face of " + std::to_string(sigma));
}

std::pair<int, int> two_sides(const IntegralAffineComplex& c, int rho)
{
    require(c.cell(rho).dim == c.n - 1, "RangeError", "cell " + std::to_string(rho) + " is not of codimension one");
    const auto& mx = c.maximal_over(rho);
    require(mx.size() == 2, "UnsupportedStructure",
            "cell " + std::to_string(rho) + " does not have two adjacent maximal cells");
    return {mx[0], mx[1]};
}

void require_unipotent(const IntMatrix& t, const std::string& where)
{
    IntMatrix m = t - IntMatrix::identity(t.rows());
    require((m * m).is_zero(), "NotShear", "loop transport " + where + " is not a shear: (T - id)^2 != 0");
}

}  // namespace

nlohmann::json MonodromyData::to_json() const
{
    nlohmann::json f = nlohmann::json::array(), e = nlohmann::json::array(), k = nlohmann::json::array();
    for (const auto& x : facets)
        f.push_back({{"rho", x.rho}, {"v_plus", x.v_plus}, {"v_minus", x.v_minus}, {"sigma_plus", x.sigma_plus},
                     {"sigma_minus", x.sigma_minus}, {"d_check", vec_json(x.d_check)}, {"m", vec_json(x.m)}});
    for (const auto& x : edges)
        e.push_back({{"omega", x.omega}, {"sigma_plus", x.sigma_plus}, {"sigma_minus", x.sigma_minus},
                     {"v_plus", x.v_plus}, {"v_minus", x.v_minus}, {"d", vec_json(x.d)}, {"n", vec_json(x.n)}});
    for (const auto& x : kappas)
        k.push_back({{"omega", x.omega}, {"rho", x.rho}, {"kappa", x.kappa.convert_to<long long>()},
                     {"status", x.kappa == 0 ? "ZeroLoop" : "shear"}});
    return {{"convention", kMonodromyConvention}, {"facets", f}, {"edges", e}, {"kappa", k}};
}

IntMatrix loop_transport(const IntegralAffineComplex& c, int v_plus, int v_minus, int sigma_plus, int sigma_minus)
{
    return c.parallel_transport(v_minus, v_plus, sigma_minus) * c.parallel_transport(v_plus, v_minus, sigma_plus);
}

IntVector facet_covector(const IntegralAffineComplex& c, int rho, int v)
{
    auto [sp, sm] = two_sides(c, rho);
    (void)sm;
    require(c.is_face(v, rho), "RangeError", "vertex " + std::to_string(v) + " is not on cell " + std::to_string(rho));
    IntMatrix ker = integer_kernel(IntMatrix::from_rows(c.tangent_generators(v, rho, sp), std::size_t(c.n)));
    require(ker.rows() == 1, "InvalidStructure", "cell " + std::to_string(rho) + " is degenerate in its chart");
    IntVector dc = ker.row(0);
    if (dot(dc, c.psi(v, sp, opposite_vertex(c, sp, rho))) < 0) dc = scale(Int(-1), dc);
    return dc;
}

FacetMonodromy facet_monodromy(const IntegralAffineComplex& c, int rho, int v_plus, int v_minus)
{
    auto [sp, sm] = two_sides(c, rho);
    require(c.is_face(v_plus, rho) && c.is_face(v_minus, rho), "RangeError", "vertices must lie on the facet");
    FacetMonodromy out;
    out.rho = rho;
    out.v_plus = v_plus;
    out.v_minus = v_minus;
    out.sigma_plus = sp;
    out.sigma_minus = sm;
    out.d_check = facet_covector(c, rho, v_plus);
    IntMatrix t = loop_transport(c, v_plus, v_minus, sp, sm);
    const std::string where = "around cell " + std::to_string(rho);
    require_unipotent(t, where);
    IntMatrix m = t - IntMatrix::identity(t.rows());
    std::size_t k = 0;
    while (out.d_check[k] == 0) ++k;
    out.m = IntVector(t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i) {
        require(m(i, k) % out.d_check[k] == 0, "NotShear", "loop transport " + where + " is not a facet shear");
        out.m[i] = m(i, k) / out.d_check[k];
    }
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            require(m(i, j) == out.m[i] * out.d_check[j], "NotShear",
                    "loop transport " + where + " does not factor through the facet covector");
    return out;
}

EdgeMonodromy edge_monodromy(const IntegralAffineComplex& c, int omega, int sigma_plus, int sigma_minus)
{
    const Cell& w = c.cell(omega);
    require(w.dim == 1, "RangeError", "cell " + std::to_string(omega) + " is not an edge");
    require(c.is_face(omega, sigma_plus) && c.is_face(omega, sigma_minus), "RangeError",
            "maximal cells must contain the edge");
    EdgeMonodromy out;
    out.omega = omega;
    out.sigma_plus = sigma_plus;
    out.sigma_minus = sigma_minus;
    out.v_plus = w.vertices[0];
    out.v_minus = w.vertices[1];
    out.d = primitive(c.psi(out.v_plus, sigma_plus, out.v_minus));
    IntMatrix t = loop_transport(c, out.v_plus, out.v_minus, sigma_plus, sigma_minus);
    const std::string where = "along edge " + std::to_string(omega);
    require_unipotent(t, where);
    IntMatrix m = t - IntMatrix::identity(t.rows());
    std::size_t k = 0;
    while (out.d[k] == 0) ++k;
    out.n = IntVector(t.cols());
    for (std::size_t j = 0; j < t.cols(); ++j) {
        require(m(k, j) % out.d[k] == 0, "NotShear", "loop transport " + where + " is not an edge shear");
        out.n[j] = m(k, j) / out.d[k];
    }
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            require(m(i, j) == out.d[i] * out.n[j], "NotShear",
                    "loop transport " + where + " does not factor through the edge direction");
    return out;
}

Int kappa(const IntegralAffineComplex& c, int omega, int rho)
{
    require(c.cell(omega).dim == 1 && c.is_face(omega, rho), "RangeError", "kappa needs an edge of the facet");
    auto [sp, sm] = two_sides(c, rho);
    const int vp = c.cell(omega).vertices[0], vm = c.cell(omega).vertices[1];
    IntVector d = primitive(c.psi(vp, sp, vm));
    IntVector dc = facet_covector(c, rho, vp);
    require(dot(d, dc) == 0, "InvalidStructure", "edge direction is not tangent to the facet");
    IntMatrix t = loop_transport(c, vp, vm, sp, sm);
    const std::string where = "for edge " + std::to_string(omega) + " in cell " + std::to_string(rho);
    require_unipotent(t, where);
    IntMatrix m = t - IntMatrix::identity(t.rows());
    std::size_t i0 = 0, j0 = 0;
    while (d[i0] == 0) ++i0;
    while (dc[j0] == 0) ++j0;
    Int denom = d[i0] * dc[j0];
    require(m(i0, j0) % denom == 0, "NotShear", "loop transport " + where + " is not a multiple of d (x) dcheck");
    Int k = m(i0, j0) / denom;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            require(m(i, j) == k * d[i] * dc[j], "NotShear", "loop transport " + where + " is not a multiple of d (x) dcheck");
    return k;
}

MonodromyData compute_monodromy(const IntegralAffineComplex& c, unsigned jobs)
{
    std::vector<int> rhos;
    for (int rho : c.cells_of_dim(c.n - 1))
        if (c.maximal_over(rho).size() == 2) rhos.push_back(rho);
    std::vector<int> omegas;
    for (int w : c.cells_of_dim(1)) omegas.push_back(w);

    std::vector<std::vector<FacetMonodromy>> facet_parts(rhos.size());
    std::vector<std::vector<KappaEntry>> kappa_parts(rhos.size());
    parallel_for(rhos.size(), jobs, [&](std::size_t i) {
        const int rho = rhos[i];
        const auto& vs = c.cell(rho).vertices;
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = 0; b < vs.size(); ++b)
                if (a != b) facet_parts[i].push_back(facet_monodromy(c, rho, vs[a], vs[b]));
        for (int w : c.closure(rho))
            if (c.cell(w).dim == 1) kappa_parts[i].push_back({w, rho, kappa(c, w, rho)});
    });
    std::vector<std::vector<EdgeMonodromy>> edge_parts(omegas.size());
    parallel_for(omegas.size(), jobs, [&](std::size_t i) {
        const auto& mx = c.maximal_over(omegas[i]);
        for (int sp : mx)
            for (int sm : mx)
                if (sp != sm) edge_parts[i].push_back(edge_monodromy(c, omegas[i], sp, sm));
    });
    MonodromyData out;
    for (auto& p : facet_parts) out.facets.insert(out.facets.end(), p.begin(), p.end());
    for (auto& p : kappa_parts) out.kappas.insert(out.kappas.end(), p.begin(), p.end());
    for (auto& p : edge_parts) out.edges.insert(out.edges.end(), p.begin(), p.end());
    return out;
}

bool check_positive(const IntegralAffineComplex& c)
{
    for (int rho : c.cells_of_dim(c.n - 1)) {
        if (c.maximal_over(rho).size() != 2) continue;
        for (int w : c.closure(rho))
            if (c.cell(w).dim == 1 && kappa(c, w, rho) < 0) return false;
    }
    return true;
}

// ---- simplicity --------------------------------------------------------------

nlohmann::json SimplicityCertificate::to_json() const
{
    nlohmann::json d = nlohmann::json::array(), dc = nlohmann::json::array();
    for (const auto& p : deltas) d.push_back(polytope_to_json(p));
    for (const auto& p : deltas_check) dc.push_back(polytope_to_json(p));
    return {{"tau", tau},          {"base_vertex", base_vertex},      {"reference_cell", reference_cell},
            {"omegas", omegas},    {"rs", rs},                        {"deltas", d},
            {"deltas_check", dc},  {"elementary_ok", elementary_ok},  {"bigtheorem_ok", bigtheorem_ok},
            {"failure", failure}};
}

namespace {

SimplicityCertificate certify(const IntegralAffineComplex& c, int tau)
{
    SimplicityCertificate cert;
    cert.tau = tau;
    cert.base_vertex = c.base_vertex(tau);
    cert.reference_cell = c.reference_maximal(tau);
    const int v0 = cert.base_vertex, sref = cert.reference_cell;
    auto failed = [&](const std::string& why) {
        cert.failure = why;
        cert.elementary_ok = false;
        cert.bigtheorem_ok = false;
        return cert;
    };

    std::vector<int> edges, facets;
    for (int w : c.closure(tau))
        if (c.cell(w).dim == 1) edges.push_back(w);
    for (int r : c.star(tau))
        if (c.cell(r).dim == c.n - 1 && c.maximal_over(r).size() == 2) facets.push_back(r);
    const std::size_t ne = edges.size(), nf = facets.size();
    std::vector<std::vector<int>> k(ne, std::vector<int>(nf, 0));
    for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = 0; b < nf; ++b) {
            Int x = kappa(c, edges[a], facets[b]);
            if (x != 0 && x != 1)
                return failed("kappa(" + std::to_string(edges[a]) + "," + std::to_string(facets[b]) + ") = " + x.str() +
                              " is not in {0,1}");
            k[a][b] = int(x);
        }

    // connected components of the bipartite graph of kappa = 1 pairs
    std::vector<std::size_t> parent(ne + nf);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = 0; b < nf; ++b)
            if (k[a][b]) parent[find(a)] = find(ne + b);
    std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> comps;
    for (std::size_t a = 0; a < ne; ++a)
        for (std::size_t b = 0; b < nf; ++b)
            if (k[a][b]) {
                comps[find(a)];
            }
    for (std::size_t a = 0; a < ne; ++a)
        if (comps.count(find(a))) comps[find(a)].first.push_back(a);
    for (std::size_t b = 0; b < nf; ++b)
        if (comps.count(find(ne + b))) comps[find(ne + b)].second.push_back(b);

    // order groups by their smallest edge id for determinism
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
    for (auto& [root, g] : comps) groups.push_back(g);
    std::sort(groups.begin(), groups.end());

    for (const auto& [ea, fb] : groups) {
        for (auto a : ea)
            for (auto b : fb)
                if (!k[a][b])
                    return failed("edge " + std::to_string(edges[a]) + " and cell " + std::to_string(facets[b]) +
                                  " lie in one monodromy group but have kappa = 0");
        std::vector<int> om, rs;
        for (auto a : ea) om.push_back(edges[a]);
        for (auto b : fb) rs.push_back(facets[b]);

        // Delta_i from each facet of the group; all must agree
        std::optional<LatticePolytope> delta;
        for (int rho : rs) {
            std::vector<IntVector> pts;
            for (int v : c.cell(tau).vertices)
                pts.push_back(v == v0 ? IntVector(std::size_t(c.n)) : facet_monodromy(c, rho, v0, v).m);
            LatticePolytope p(pts);
            if (!delta)
                delta = p;
            else if (!(p == *delta))
                return failed("monodromy polytope Delta differs between cells of group with facet " + std::to_string(rs[0]));
        }
        // Delta-check_i from each edge of the group; agreement up to the orientation sign
        std::optional<LatticePolytope> delta_check;
        for (int om_id : om) {
            std::vector<IntVector> pts;
            const int vp = c.cell(om_id).vertices[0];
            IntMatrix back = c.parallel_transport(v0, vp, sref).transpose();
            for (int s : c.maximal_over(tau))
                pts.push_back(s == sref ? IntVector(std::size_t(c.n)) : back * edge_monodromy(c, om_id, sref, s).n);
            LatticePolytope p(pts);
            std::vector<IntVector> neg;
            for (const auto& x : pts) neg.push_back(scale(Int(-1), x));
            if (!delta_check)
                delta_check = p;
            else if (!(p == *delta_check) && !(LatticePolytope(neg) == *delta_check))
                return failed("monodromy polytope Delta-check differs between edges of group with edge " + std::to_string(om[0]));
        }
        cert.omegas.push_back(om);
        cert.rs.push_back(rs);
        cert.deltas.push_back(*delta);
        cert.deltas_check.push_back(*delta_check);
    }
    if (!cert.deltas.empty()) {
        cert.elementary_ok =
            is_elementary_simplex(cayley_polytope(cert.deltas)) && is_elementary_simplex(cayley_polytope(cert.deltas_check));
        cert.bigtheorem_ok = is_standard_simplex(cayley_polytope(cert.deltas_check));
        if (!cert.elementary_ok) cert.failure = "lifted monodromy polytope is not an elementary simplex";
    }
    return cert;
}

}  // namespace

std::vector<SimplicityCertificate> check_simple(const IntegralAffineComplex& c, bool strict)
{
    std::vector<SimplicityCertificate> out;
    for (const auto& cell : c.cells) {
        if (cell.dim == 0 || cell.dim == c.n) continue;
        SimplicityCertificate cert = certify(c, cell.id);
        if (strict && !cert.failure.empty())
            fail("SimplicityFailure", "cell " + std::to_string(cell.id) + ": " + cert.failure);
        out.push_back(std::move(cert));
    }
    return out;
}

// ---- radiance ----------------------------------------------------------------

std::map<std::pair<int, int>, IntVector> radiance_cocycle(const IntegralAffineComplex& c)
{
    std::map<std::pair<int, int>, IntVector> out;
    for (const auto& t1 : c.cells)
        for (int t0 : c.closure(t1.id)) {
            if (t0 == t1.id) continue;
            const int s = c.reference_maximal(t1.id);
            out[{t0, t1.id}] = c.psi(c.base_vertex(t0), s, c.base_vertex(t1.id));
        }
    return out;
}

bool radiance_cocycle_closed(const IntegralAffineComplex& c, const std::map<std::pair<int, int>, IntVector>& rc)
{
    for (const auto& t2 : c.cells)
        for (int t1 : c.closure(t2.id)) {
            if (t1 == t2.id) continue;
            for (int t0 : c.closure(t1)) {
                if (t0 == t1) continue;
                const int s = c.reference_maximal(t2.id);
                IntMatrix l = c.parallel_transport(c.base_vertex(t1), c.base_vertex(t0), s);
                if (rc.at({t0, t2.id}) != add(rc.at({t0, t1}), l * rc.at({t1, t2.id}))) return false;
            }
        }
    return true;
}

}  // namespace ahodge
