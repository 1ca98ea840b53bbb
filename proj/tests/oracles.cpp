#include "oracles.hpp"

#include <algorithm>

#include "ahodge/errors.hpp"
#include "ahodge/sparse.hpp"

namespace oracle {

using namespace ahodge;

namespace {

std::vector<IntVector> box_points(std::size_t n, long radius)
{
    std::vector<IntVector> out;
    std::vector<long long> cur(n, -radius);
    while (true) {
        out.push_back(to_int_vector(cur));
        std::size_t c = 0;
        while (c < n && cur[c] == radius) {
            cur[c] = -radius;
            ++c;
        }
        if (c == n) break;
        ++cur[c];
    }
    return out;
}

bool in_box(const IntVector& x, long radius)
{
    for (const auto& c : x)
        if (c > radius || c < -radius) return false;
    return true;
}

/// Rows of an n-column matrix as a rational subspace; intersection through annihilators.
std::vector<RatVector> intersect(const std::vector<RatVector>& a, const std::vector<RatVector>& b, std::size_t dim)
{
    if (a.empty() || b.empty()) return {};
    std::vector<RatVector> ann = kernel_basis_q(RatMatrix::from_rows(a, dim));
    auto annb = kernel_basis_q(RatMatrix::from_rows(b, dim));
    ann.insert(ann.end(), annb.begin(), annb.end());
    if (ann.empty()) return a;
    return kernel_basis_q(RatMatrix::from_rows(ann, dim));
}

std::vector<RatVector> full_space(std::size_t dim)
{
    std::vector<RatVector> out;
    for (std::size_t i = 0; i < dim; ++i) {
        RatVector e(dim);
        e[i] = 1;
        out.push_back(e);
    }
    return out;
}

/// wedge^r of the hyperplane g^perp in wedge^r Q^n coordinates.
std::vector<RatVector> wall_forms(const IntVector& g, std::size_t n, int r)
{
    IntMatrix ker = integer_kernel(IntMatrix::from_rows({g}));
    if (std::size_t(r) > ker.rows()) return {};
    WedgeBasis subsets(ker.rows(), std::size_t(r));
    std::vector<RatVector> out;
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        RatVector acc{Rat(1)};
        std::size_t deg = 0;
        for (int idx : subsets.tuple(s)) {
            acc = wedge_product(acc, deg, to_rat(ker.row(std::size_t(idx))), 1, n);
            ++deg;
        }
        out.push_back(acc);
    }
    return out;
}

long project_mod_rho(const MonoidData& m, const std::vector<RatVector>& forms, int r)
{
    const std::size_t n = m.rank();
    if (forms.empty()) return 0;
    IntMatrix pi(n - 1, n);
    for (std::size_t i = 0, row = 0; i < n; ++i)
        if (i != m.e_index(0)) pi(row++, i) = 1;
    RatMatrix wr = to_rat(induced_wedge_map(pi, std::size_t(r)));
    std::vector<RatVector> img;
    for (const auto& f : forms) img.push_back(wr * f);
    return long(rank_q(RatMatrix::from_rows(img, wr.rows())));
}

long dim_of(const MonoidData& m, const std::vector<RatVector>& forms, int r, bool rel)
{
    if (rel) return project_mod_rho(m, forms, r);
    return forms.empty() ? 0 : long(rank_q(RatMatrix::from_rows(forms)));
}

}  // namespace

DerivationDims brute_force_derivation_oracle(const MonoidData& m, const std::vector<int>& ks, int degree_bound, bool rel)
{
    if (degree_bound > 4) fail("BoundTooLarge", "degree bound above 4");
    const std::size_t n = m.rank();
    const long data_radius = 2;
    const long radius = std::max<long>(data_radius, degree_bound) + 2;

    std::vector<IntVector> monomials, small;
    for (const auto& q : box_points(n, radius))
        if (m.in_p(q)) monomials.push_back(q);
    for (const auto& q : monomials)
        if (!is_zero(q) && in_box(q, data_radius)) small.push_back(q);

    auto in_ideal_of_x = [&](const IntVector& q) {
        for (const auto& v : m.v)
            if (dot(v, q) <= 0) return false;
        return true;
    };

    DerivationDims out;
    for (const auto& p : box_points(n, degree_bound)) {
        // variables: c(q) for q with p + q in P
        std::map<IntVector, std::size_t> var;
        for (const auto& q : monomials)
            if (m.in_p(add(p, q))) var.emplace(q, var.size());
        auto col = [&](const IntVector& q) -> long {
            auto it = var.find(q);
            return it == var.end() ? -1 : long(it->second);
        };

        std::vector<std::vector<std::pair<long, long>>> eqs;
        for (const auto& q : monomials)
            for (const auto& g : small) {
                IntVector s = add(q, g);
                if (!in_box(s, radius) || col(s) < 0) continue;
                std::vector<std::pair<long, long>> e{{col(s), 1}};
                if (col(q) >= 0) e.push_back({col(q), -1});
                if (col(g) >= 0) e.push_back({col(g), -1});
                eqs.push_back(e);
            }
        for (const auto& [q, c] : var)
            if (in_ideal_of_x(q) && !in_ideal_of_x(add(p, q))) eqs.push_back({{long(c), 1}});
        if (rel && col(m.rho) >= 0) eqs.push_back({{col(m.rho), 1}});

        auto rank_with = [&](const std::vector<long>& pinned) {
            SparseMatrix a(eqs.size() + pinned.size(), var.size());
            for (std::size_t i = 0; i < eqs.size(); ++i)
                for (auto [j, v] : eqs[i]) a.add(i, std::size_t(j), v);
            for (std::size_t i = 0; i < pinned.size(); ++i) a.add(eqs.size() + i, std::size_t(pinned[i]), 1);
            a.normalize();
            return long(sparse_rank(a));
        };
        const long base = rank_with({});

        std::vector<long> all_small;
        for (const auto& q : small)
            if (col(q) >= 0) all_small.push_back(col(q));
        out.infinity[p] = rank_with(all_small) - base;

        for (int k : ks) {
            std::vector<long> pinned;
            // Dlog at generic points of components where z^p is a nonzero function
            bool dlog_survives = false;
            for (const auto& v : m.v) {
                Int x = dot(v, p);
                if (x >= 0 && x <= k) dlog_survives = true;
            }
            if (dlog_survives) {
                pinned = all_small;
            } else {
                IntVector shift = scale(Int(k + 1), m.rho);
                for (const auto& q : small) {
                    IntVector target = add(p, q);
                    if (col(q) >= 0 && !m.in_p(sub(target, shift))) pinned.push_back(col(q));
                }
            }
            out.order[k][p] = rank_with(pinned) - base;
        }
    }
    return out;
}

long omega_oracle_dim(const MonoidData& m, const IntVector& p, int r, int k, bool rel)
{
    const std::size_t n = m.rank();
    for (const auto& g : m.generators())
        if (dot(g, p) < 0) return 0;
    if (m.in_p(sub(p, scale(Int(k + 1), m.rho)))) return 0;
    const std::size_t dim = binomial(n, std::size_t(r));
    std::vector<RatVector> allowed = full_space(dim);
    for (const auto& w : m.w)
        if (dot(w, p) == 0) allowed = intersect(allowed, wall_forms(w, n, r), dim);
    return dim_of(m, allowed, r, rel);
}

long omega_face_oracle_dim(const MonoidData& m, const FaceSet& omega, const FaceSet& omega_prime, const IntVector& p,
                           int r, int k, bool rel)
{
    const std::size_t n = m.rank();
    // a relative interior point of the normal cone of omega
    IntVector normal(m.mprime_rank);
    for (const auto& f : m.tau.facets())
        if (std::includes(f.vertices.begin(), f.vertices.end(), omega.begin(), omega.end()))
            normal = add(normal, f.ambient_normal);

    std::vector<IntVector> walls;
    for (std::size_t i = 1; i <= m.q; ++i) {
        const auto& verts = m.deltas[i - 1].vertices();
        Int lowest = dot(normal, verts.front());
        for (const auto& x : verts) lowest = std::min(lowest, dot(normal, x));
        for (const auto& x : verts) {
            if (dot(normal, x) != lowest) continue;
            IntVector g = m.lift(x, i);
            if (dot(p, g) < 0) return 0;
            if (dot(p, g) == 0) walls.push_back(g);
        }
    }
    for (std::size_t a : omega_prime)
        if (dot(p, m.lift(m.tau.vertices()[a], 0)) > k) return 0;
    for (const auto& x : m.tau.vertices())
        if (dot(p, m.lift(x, 0)) < 0) return 0;

    const std::size_t dim = binomial(n, std::size_t(r));
    std::vector<RatVector> allowed = full_space(dim);
    for (const auto& g : walls) allowed = intersect(allowed, wall_forms(g, n, r), dim);
    return dim_of(m, allowed, r, rel);
}

bool wedge_solvable(const IntVector& p, const RatVector& omega, std::size_t r)
{
    const std::size_t n = p.size();
    return bool(solve_q(to_rat(wedge_with_covector(p, n, r - 1)), omega));
}

namespace {

long interior_points(const LatticePolytope& f)
{
    if (f.dim() == 0) return 1;
    long count = 0;
    for (const auto& x : f.lattice_points())
        if (f.in_relative_interior(x)) ++count;
    return count;
}

/// l(A) - 5 - sum over facets of l* + sum over 2-faces of l*(theta) l*(dual theta in B).
long batyrev_part(const LatticePolytope& a, const LatticePolytope& b)
{
    long total = long(a.lattice_points().size()) - 5;
    for (const auto& f : a.face_sets(3)) total -= interior_points(a.face(f));
    for (const auto& f : a.face_sets(2)) {
        std::vector<IntVector> dual;
        for (const auto& facet : a.facets())
            if (std::includes(facet.vertices.begin(), facet.vertices.end(), f.begin(), f.end()))
                dual.push_back(facet.ambient_normal);
        for (const auto& x : dual) require(b.contains(x), "InternalError", "dual face leaves the polar polytope");
        total += interior_points(a.face(f)) * interior_points(LatticePolytope(dual));
    }
    return total;
}

LatticePolytope polar_of(const LatticePolytope& delta)
{
    std::vector<IntVector> normals;
    for (const auto& f : delta.facets()) {
        require(f.ambient_offset == -1, "NotReflexive", "facet at distance other than 1");
        normals.push_back(f.ambient_normal);
    }
    return LatticePolytope(normals);
}

/// Normals of the facets of a containing face f, i.e. the vertices of its dual face.
std::vector<IntVector> dual_face(const LatticePolytope& a, const FaceSet& f)
{
    std::vector<IntVector> dual;
    for (const auto& facet : a.facets())
        if (std::includes(facet.vertices.begin(), facet.vertices.end(), f.begin(), f.end()))
            dual.push_back(facet.ambient_normal);
    return dual;
}

long toric_part_k3(const LatticePolytope& a)
{
    long total = long(a.lattice_points().size()) - 4;
    for (const auto& f : a.face_sets(2)) total -= interior_points(a.face(f));
    return total;
}

}  // namespace

long batyrev_k3(const LatticePolytope& delta)
{
    require(delta.dim() == 3, "RangeError", "K3 formula needs a 3-dimensional polytope");
    LatticePolytope dual = polar_of(delta);
    long total = toric_part_k3(delta) + toric_part_k3(dual);
    for (const auto& e : delta.face_sets(1))
        total += interior_points(delta.face(e)) * interior_points(LatticePolytope(dual_face(delta, e)));
    return total;
}

std::vector<long> torus_cellular_betti(int n, int size)
{
    // cells (x, S): base point x in (Z/size)^n and a direction set S, with the cube x + [0,1]^S
    long points = 1;
    for (int i = 0; i < n; ++i) points *= size;
    auto shift = [&](long x, int dir) {
        long stride = 1;
        for (int i = 0; i < dir; ++i) stride *= size;
        long digit = (x / stride) % size;
        return x + ((digit + 1) % size - digit) * stride;
    };
    auto index = [&](long x, unsigned mask) { return std::size_t(x) * (std::size_t(1) << n) + mask; };
    const std::size_t total = std::size_t(points) << n;
    std::vector<std::size_t> dim_of_cell(total);
    std::vector<std::vector<std::size_t>> cells(std::size_t(n) + 1);
    for (long x = 0; x < points; ++x)
        for (unsigned mask = 0; mask < (1u << n); ++mask) cells[std::size_t(__builtin_popcount(mask))].push_back(index(x, mask));
    std::vector<long> pos(total);
    for (const auto& level : cells)
        for (std::size_t i = 0; i < level.size(); ++i) pos[level[i]] = long(i);

    // coboundary d^q : C^q -> C^{q+1} as the transpose of the cellular boundary
    std::vector<std::size_t> ranks(std::size_t(n) + 1, 0);
    for (int q = 0; q < n; ++q) {
        RatMatrix d(cells[std::size_t(q) + 1].size(), cells[std::size_t(q)].size());
        for (const auto& cell : cells[std::size_t(q) + 1]) {
            const long x = long(cell >> n);
            const unsigned mask = unsigned(cell & ((std::size_t(1) << n) - 1));
            int position = 0;
            for (int i = 0; i < n; ++i) {
                if (!(mask & (1u << i))) continue;
                const Rat sign = position % 2 == 0 ? 1 : -1;
                const unsigned face = mask & ~(1u << i);
                d(std::size_t(pos[cell]), std::size_t(pos[index(shift(x, i), face)])) += sign;
                d(std::size_t(pos[cell]), std::size_t(pos[index(x, face)])) -= sign;
                ++position;
            }
        }
        ranks[std::size_t(q)] = rank_q(d);
    }
    std::vector<long> betti;
    for (int q = 0; q <= n; ++q) {
        const long in = q > 0 ? long(ranks[std::size_t(q) - 1]) : 0;
        betti.push_back(long(cells[std::size_t(q)].size()) - long(ranks[std::size_t(q)]) - in);
    }
    return betti;
}

std::pair<long, long> batyrev_threefold(const LatticePolytope& delta)
{
    require(delta.dim() == 4, "RangeError", "Batyrev threefold formula needs a 4-dimensional polytope");
    std::vector<IntVector> normals;
    for (const auto& f : delta.facets()) {
        require(f.ambient_offset == -1, "NotReflexive", "facet at distance other than 1");
        normals.push_back(f.ambient_normal);
    }
    LatticePolytope dual(normals);
    return {batyrev_part(dual, delta), batyrev_part(delta, dual)};
}

std::vector<std::vector<long>> torus_diamond(int n)
{
    std::vector<std::vector<long>> h(std::size_t(n + 1), std::vector<long>(std::size_t(n + 1)));
    for (int q = 0; q <= n; ++q)
        for (int p = 0; p <= n; ++p) h[q][p] = long(binomial(n, q) * binomial(n, p));
    return h;
}

}  // namespace oracle
