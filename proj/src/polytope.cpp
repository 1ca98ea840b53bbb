#include "ahodge/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ahodge {

namespace {

/// Calls fn on every k-subset of {0..n-1} in lexicographic order; fn returns false to stop.
void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn)
{
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (!fn(idx)) return;
        if (k == 0) return;
        long i = long(k) - 1;
        while (i >= 0 && idx[i] == n - k + std::size_t(i)) --i;
        if (i < 0) return;
        ++idx[i];
        for (std::size_t j = std::size_t(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::size_t affine_rank(const std::vector<IntVector>& pts, const FaceSet& f)
{
    if (f.size() <= 1) return 0;
    std::vector<IntVector> rows;
    for (std::size_t i = 1; i < f.size(); ++i) rows.push_back(sub(pts[f[i]], pts[f[0]]));
    return rank(IntMatrix::from_rows(rows));
}

}  // namespace

// ---- LatticePolytope -----------------------------------------------------

LatticePolytope::LatticePolytope(std::vector<IntVector> points)
{
    require(!points.empty(), "DegeneratePolytope", "polytope without points");
    ambient_ = points.front().size();
    for (const auto& p : points) require(p.size() == ambient_, "DimensionMismatch", "polytope point sizes differ");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    for (;;) {
        const IntVector& o = points.front();
        std::vector<IntVector> diffs;
        for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], o));
        IntMatrix basis = saturate_rows(IntMatrix::from_rows(diffs, ambient_));
        const int d = int(basis.rows());
        std::vector<IntVector> y;
        for (const auto& p : points) {
            auto c = echelon_coordinates(basis, sub(p, o));
            require(bool(c), "DegeneratePolytope", "point off its own affine lattice");
            y.push_back(*c);
        }

        std::vector<Facet> facets;
        if (d > 0) {
            std::set<IntVector> seen;
            for_each_subset(points.size(), std::size_t(d), [&](const std::vector<std::size_t>& s) {
                std::vector<IntVector> rows;
                for (std::size_t i = 1; i < s.size(); ++i) rows.push_back(sub(y[s[i]], y[s[0]]));
                IntMatrix ker = integer_kernel(IntMatrix::from_rows(rows, std::size_t(d)));
                if (ker.rows() != 1) return true;
                IntVector a = ker.row(0);
                Int base = dot(a, y[s[0]]);
                bool ge = true, le = true;
                for (const auto& yy : y) {
                    Int v = dot(a, yy);
                    if (v < base) ge = false;
                    if (v > base) le = false;
                }
                if (!ge && !le) return true;
                if (!ge) {
                    a = scale(Int(-1), a);
                    base = -base;
                }
                if (!seen.insert(a).second) return true;
                Facet f;
                f.normal = a;
                f.offset = base;
                for (std::size_t j = 0; j < y.size(); ++j)
                    if (dot(a, y[j]) == base) f.vertices.push_back(j);
                facets.push_back(std::move(f));
                return true;
            });
        }

        // extreme points: the facet normals through the point span the dual space
        std::vector<std::size_t> extreme;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (d == 0) {
                extreme.push_back(j);
                continue;
            }
            std::vector<IntVector> normals;
            for (const auto& f : facets)
                if (std::binary_search(f.vertices.begin(), f.vertices.end(), j)) normals.push_back(f.normal);
            if (!normals.empty() && rank(IntMatrix::from_rows(normals)) == std::size_t(d)) extreme.push_back(j);
        }
        if (extreme.size() != points.size()) {
            std::vector<IntVector> kept;
            for (auto j : extreme) kept.push_back(points[j]);
            points = std::move(kept);
            continue;
        }

        vertices_ = points;
        basis_ = basis;
        dim_ = d;
        std::sort(facets.begin(), facets.end(),
                  [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
        for (auto& f : facets) {
            if (full_dimensional()) {
                f.ambient_normal = f.normal;
                f.ambient_offset = f.offset + dot(f.normal, vertices_.front());
            }
        }
        facets_ = std::move(facets);
        break;
    }

    // face lattice by closing the facets under intersection
    std::set<FaceSet> all;
    std::vector<FaceSet> queue;
    for (const auto& f : facets_)
        if (all.insert(f.vertices).second) queue.push_back(f.vertices);
    while (!queue.empty()) {
        FaceSet g = queue.back();
        queue.pop_back();
        for (const auto& f : facets_) {
            FaceSet h;
            std::set_intersection(g.begin(), g.end(), f.vertices.begin(), f.vertices.end(), std::back_inserter(h));
            if (!h.empty() && all.insert(h).second) queue.push_back(h);
        }
    }
    FaceSet whole(vertices_.size());
    for (std::size_t i = 0; i < whole.size(); ++i) whole[i] = i;
    all.insert(whole);
    faces_by_dim_.assign(std::size_t(dim_) + 1, {});
    for (const auto& f : all) faces_by_dim_[affine_rank(vertices_, f)].push_back(f);
}

std::optional<IntVector> LatticePolytope::local_coordinates(const IntVector& x) const
{
    require(x.size() == ambient_, "DimensionMismatch", "point dimension");
    if (dim_ == 0) {
        if (x == vertices_.front()) return IntVector{};
        return std::nullopt;
    }
    return echelon_coordinates(basis_, sub(x, vertices_.front()));
}

bool LatticePolytope::contains(const IntVector& x) const
{
    auto y = local_coordinates(x);
    if (!y) return false;
    for (const auto& f : facets_)
        if (dot(f.normal, *y) < f.offset) return false;
    return true;
}

bool LatticePolytope::in_relative_interior(const IntVector& x) const
{
    auto y = local_coordinates(x);
    if (!y) return false;
    for (const auto& f : facets_)
        if (dot(f.normal, *y) <= f.offset) return false;
    return true;
}

const std::vector<FaceSet>& LatticePolytope::face_sets(int d) const
{
    require(d >= 0 && d <= dim_, "RangeError", "face dimension out of range");
    return faces_by_dim_[std::size_t(d)];
}

std::vector<LatticePolytope> LatticePolytope::faces(int d) const
{
    std::vector<LatticePolytope> out;
    for (const auto& f : face_sets(d)) out.push_back(face(f));
    return out;
}

LatticePolytope LatticePolytope::face(const FaceSet& f) const
{
    std::vector<IntVector> pts;
    for (auto i : f) pts.push_back(vertices_.at(i));
    return LatticePolytope(pts);
}

int LatticePolytope::face_dim(const FaceSet& f) const { return int(affine_rank(vertices_, f)); }

FaceSet LatticePolytope::minimizing_face(const IntVector& n) const
{
    FaceSet out;
    Int best;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        Int v = dot(n, vertices_[i]);
        if (out.empty() || v < best) {
            out = {i};
            best = v;
        } else if (v == best) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<IntVector> LatticePolytope::lattice_points() const
{
    IntVector lo = vertices_.front(), hi = vertices_.front();
    for (const auto& v : vertices_)
        for (std::size_t i = 0; i < ambient_; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    Int count = 1;
    for (std::size_t i = 0; i < ambient_; ++i) count *= hi[i] - lo[i] + 1;
    require(count <= 10000000, "BoxTooLarge", "bounding box has " + count.str() + " candidate points");
    std::vector<IntVector> out;
    IntVector x = lo;
    for (;;) {
        if (contains(x)) out.push_back(x);
        std::size_t i = 0;
        while (i < ambient_ && x[i] == hi[i]) {
            x[i] = lo[i];
            ++i;
        }
        if (i == ambient_) break;
        ++x[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_elementary_simplex(const LatticePolytope& p)
{
    if (p.vertices().size() != std::size_t(p.dim()) + 1) return false;
    return p.lattice_points().size() == p.vertices().size();
}

bool is_standard_simplex(const LatticePolytope& p)
{
    if (!is_elementary_simplex(p)) return false;
    if (p.dim() == 0) return true;
    std::vector<IntVector> rows;
    for (std::size_t i = 1; i < p.vertices().size(); ++i) rows.push_back(sub(p.vertices()[i], p.vertices()[0]));
    for (const auto& d : smith_normal_form(IntMatrix::from_rows(rows)).invariant_factors())
        if (d != 1) return false;
    return true;
}

LatticePolytope cayley_polytope(const std::vector<LatticePolytope>& summands)
{
    require(!summands.empty(), "DegeneratePolytope", "no summands");
    const std::size_t n = summands.front().ambient_dim(), q = summands.size();
    std::vector<IntVector> pts;
    for (std::size_t i = 0; i < q; ++i) {
        require(summands[i].ambient_dim() == n, "DimensionMismatch", "summand dimensions differ");
        for (const auto& v : summands[i].vertices()) {
            IntVector x = v;
            x.resize(n + q);
            x[n + i] = 1;
            pts.push_back(x);
        }
    }
    return LatticePolytope(pts);
}

// ---- cones and fans --------------------------------------------------------

std::vector<IntVector> cone_from_inequalities(std::size_t ambient, const std::vector<IntVector>& rows)
{
    IntMatrix g = IntMatrix::from_rows(rows, ambient);
    IntMatrix lin = integer_kernel(g);
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < lin.rows(); ++i) {
        out.push_back(lin.row(i));
        out.push_back(scale(Int(-1), lin.row(i)));
    }
    const std::size_t k = ambient - lin.rows();
    if (k == 0) return out;
    std::set<IntVector> rays;
    for_each_subset(rows.size(), k - 1, [&](const std::vector<std::size_t>& s) {
        std::vector<IntVector> m;
        for (auto i : s) m.push_back(rows[i]);
        for (std::size_t i = 0; i < lin.rows(); ++i) m.push_back(lin.row(i));
        IntMatrix ker = integer_kernel(IntMatrix::from_rows(m, ambient));
        if (ker.rows() != 1) return true;
        IntVector r = ker.row(0);
        bool pos = true, neg = true;
        for (const auto& a : rows) {
            Int v = dot(a, r);
            if (v < 0) pos = false;
            if (v > 0) neg = false;
        }
        if (pos) rays.insert(r);
        if (neg) rays.insert(scale(Int(-1), r));
        return true;
    });
    for (const auto& r : rays) out.push_back(r);
    return out;
}

Cone::Cone(std::size_t ambient, std::vector<IntVector> generators) : ambient_(ambient)
{
    for (auto& g : generators) {
        require(g.size() == ambient, "DimensionMismatch", "cone generator size");
        if (!is_zero(g)) gens_.push_back(primitive(g));
    }
    normals_ = cone_from_inequalities(ambient, gens_);
}

bool Cone::contains(const IntVector& x) const
{
    for (const auto& a : normals_)
        if (dot(a, x) < 0) return false;
    return true;
}

int Cone::dim() const { return gens_.empty() ? 0 : int(rank(IntMatrix::from_rows(gens_))); }

bool Cone::strictly_convex() const
{
    return !normals_.empty() && rank(IntMatrix::from_rows(normals_)) == ambient_;
}

Cone dual_cone(const Cone& c) { return Cone(c.ambient_dim(), c.facet_normals()); }

std::optional<std::size_t> Fan::locate(const IntVector& x) const
{
    for (std::size_t i = 0; i < maximal_cones.size(); ++i)
        if (maximal_cones[i].contains(x)) return i;
    return std::nullopt;
}

Fan normal_fan(const LatticePolytope& p)
{
    require(p.full_dimensional(), "DegeneratePolytope", "normal fan needs a full-dimensional polytope");
    Fan fan;
    fan.ambient = p.ambient_dim();
    for (const auto& f : p.facets()) fan.rays.push_back(f.ambient_normal);
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
        std::vector<IntVector> gens;
        for (const auto& f : p.facets())
            if (std::binary_search(f.vertices.begin(), f.vertices.end(), v)) gens.push_back(f.ambient_normal);
        fan.maximal_cones.emplace_back(fan.ambient, gens);
    }
    if (p.dim() == 0) fan.maximal_cones.emplace_back(0, std::vector<IntVector>{});
    fan.complete = true;
    return fan;
}

Int PLFunction::operator()(const IntVector& x) const
{
    auto i = fan.locate(x);
    require(bool(i), "RangeError", "point outside the support of the fan");
    return dot(functionals[*i], x);
}

bool PLFunction::is_convex() const
{
    for (std::size_t i = 0; i < functionals.size(); ++i)
        for (std::size_t j = 0; j < functionals.size(); ++j) {
            if (i == j) continue;
            IntVector diff = sub(functionals[i], functionals[j]);
            for (const auto& g : fan.maximal_cones[i].generators())
                if (dot(diff, g) < 0) return false;
        }
    return true;
}

PLFunction newton_pl_function(const LatticePolytope& delta, const Fan& fan)
{
    require(delta.ambient_dim() == fan.ambient, "DimensionMismatch", "polytope and fan live in different spaces");
    PLFunction psi;
    psi.fan = fan;
    for (const auto& cone : fan.maximal_cones) {
        IntVector interior(fan.ambient);
        for (const auto& g : cone.generators()) interior = add(interior, g);
        FaceSet f = delta.minimizing_face(interior);
        const IntVector& m = delta.vertices()[f.front()];
        for (const auto& g : cone.generators()) {
            FaceSet fg = delta.minimizing_face(g);
            require(std::binary_search(fg.begin(), fg.end(), f.front()), "NotRefinement",
                    "fan does not refine the normal fan of the polytope");
        }
        psi.functionals.push_back(scale(Int(-1), m));
    }
    return psi;
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q)
{
    require(p.ambient_dim() == q.ambient_dim(), "DimensionMismatch", "Minkowski summands");
    std::vector<IntVector> pts;
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) pts.push_back(add(a, b));
    return LatticePolytope(pts);
}

LatticePolytope minkowski_sum(const std::vector<LatticePolytope>& summands)
{
    require(!summands.empty(), "DegeneratePolytope", "no summands");
    LatticePolytope s = summands.front();
    for (std::size_t i = 1; i < summands.size(); ++i) s = minkowski_sum(s, summands[i]);
    return s;
}

std::vector<LatticePolytope> minkowski_face_split(const std::vector<LatticePolytope>& summands,
                                                  const LatticePolytope& f)
{
    if (!is_elementary_simplex(cayley_polytope(summands)))
        fail("NonUniqueSplit", "Cayley polytope of the summands is not an elementary simplex");
    LatticePolytope s = minkowski_sum(summands);
    // locate f among the faces of s
    FaceSet fs;
    for (const auto& v : f.vertices()) {
        auto it = std::find(s.vertices().begin(), s.vertices().end(), v);
        require(it != s.vertices().end(), "NotAFace", "vertex of f is not a vertex of the sum");
        fs.push_back(std::size_t(it - s.vertices().begin()));
    }
    std::sort(fs.begin(), fs.end());
    const auto& candidates = s.face_sets(f.dim());
    require(std::find(candidates.begin(), candidates.end(), fs) != candidates.end(), "NotAFace",
            "f is not a face of the Minkowski sum");

    // a functional whose minimizing face is exactly f
    IntVector local(std::size_t(s.dim()));
    for (const auto& facet : s.facets())
        if (std::includes(facet.vertices.begin(), facet.vertices.end(), fs.begin(), fs.end()))
            local = add(local, facet.normal);
    IntVector n(s.ambient_dim());
    if (s.dim() > 0) {
        auto sol = solve_q(to_rat(s.lattice_basis()), to_rat(local));
        require(bool(sol), "NotAFace", "cannot lift face functional");
        n = integral_primitive(*sol);
        if (is_zero(local)) n = IntVector(s.ambient_dim());
    }

    std::vector<LatticePolytope> parts;
    int dims = 0;
    for (const auto& p : summands) {
        parts.push_back(p.face(p.minimizing_face(n)));
        dims += parts.back().dim();
    }
    if (!(minkowski_sum(parts) == f) || dims != f.dim())
        fail("NonUniqueSplit", "face does not decompose with additive dimensions");
    return parts;
}

// ---- regular subdivisions ------------------------------------------------

namespace {

template <typename T>
T det_small(std::vector<std::vector<T>> m)
{
    const std::size_t n = m.size();
    T prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

template <typename T>
std::vector<std::vector<std::size_t>> lower_hull(const std::vector<std::vector<T>>& y, const std::vector<T>& h)
{
    const std::size_t npts = y.size(), d = y.front().size();
    std::set<std::vector<std::size_t>> cells;
    for_each_subset(npts, d + 1, [&](const std::vector<std::size_t>& s) {
        std::vector<std::vector<T>> a(d + 1, std::vector<T>(d + 1));
        for (std::size_t r = 0; r <= d; ++r) {
            for (std::size_t c = 0; c < d; ++c) a[r][c] = y[s[r]][c];
            a[r][d] = 1;
        }
        T det = det_small(a);
        if (det == 0) return true;
        std::vector<T> cramer(d + 1);
        for (std::size_t k = 0; k <= d; ++k) {
            auto ak = a;
            for (std::size_t r = 0; r <= d; ++r) ak[r][k] = h[s[r]];
            cramer[k] = det_small(ak);
        }
        std::vector<std::size_t> on;
        for (std::size_t j = 0; j < npts; ++j) {
            T val = det * h[j];
            for (std::size_t c = 0; c < d; ++c) val -= y[j][c] * cramer[c];
            val -= cramer[d];
            if (det < 0) val = -val;
            if (val < 0) return true;
            if (val == 0) on.push_back(j);
        }
        cells.insert(on);
        return true;
    });
    return {cells.begin(), cells.end()};
}

}  // namespace

std::vector<std::vector<std::size_t>> regular_subdivision(const std::vector<IntVector>& points,
                                                          const std::vector<Int>& heights)
{
    require(!points.empty() && points.size() == heights.size(), "DimensionMismatch", "subdivision input sizes");
    const std::size_t d = points.front().size();
    bool small = d <= 4;
    for (const auto& p : points)
        for (const auto& x : p) small = small && abs(x) < (1 << 20);
    for (const auto& x : heights) small = small && abs(x) < (1 << 20);
    if (small) {
        std::vector<std::vector<__int128>> y;
        std::vector<__int128> h;
        for (const auto& p : points) {
            std::vector<__int128> row;
            for (const auto& x : p) row.push_back(__int128(x.convert_to<long long>()));
            y.push_back(row);
        }
        for (const auto& x : heights) h.push_back(__int128(x.convert_to<long long>()));
        return lower_hull(y, h);
    }
    std::vector<std::vector<Int>> y(points.begin(), points.end());
    return lower_hull(y, heights);
}

// ---- JSON ------------------------------------------------------------------

nlohmann::json polytope_to_json(const LatticePolytope& p)
{
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : p.vertices()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : v) row.push_back(x.convert_to<long long>());
        verts.push_back(row);
    }
    return {{"vertices", verts}};
}

LatticePolytope polytope_from_json(const nlohmann::json& j)
{
    require(j.is_object() && j.contains("vertices") && j["vertices"].is_array(), "ParseError",
            "polytope needs a \"vertices\" array");
    std::vector<IntVector> pts;
    for (const auto& row : j["vertices"]) {
        require(row.is_array(), "ParseError", "vertex must be an array");
        IntVector v;
        for (const auto& x : row) {
            require(x.is_number_integer(), "ParseError", "vertex coordinates must be integers");
            v.emplace_back(x.get<long long>());
        }
        pts.push_back(v);
    }
    require(!pts.empty(), "ParseError", "polytope without vertices");
    return LatticePolytope(pts);
}

}  // namespace ahodge
