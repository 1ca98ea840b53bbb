#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "ahodge/polytope.hpp"

using namespace ahodge;

namespace {

LatticePolytope poly(std::vector<std::vector<long long>> pts)
{
    std::vector<IntVector> v;
    for (const auto& p : pts) v.push_back(to_int_vector(p));
    return LatticePolytope(v);
}

std::set<IntVector> as_set(const std::vector<IntVector>& v) { return {v.begin(), v.end()}; }

/// Lattice points of a full-dimensional simplex by bounding box and barycentric coordinates.
std::set<IntVector> simplex_points_oracle(const std::vector<IntVector>& verts)
{
    const std::size_t n = verts.front().size();
    RatMatrix a(n + 1, verts.size());
    for (std::size_t j = 0; j < verts.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) a(i, j) = Rat(verts[j][i]);
        a(n, j) = 1;
    }
    std::vector<long long> lo(n, 1 << 20), hi(n, -(1 << 20));
    for (const auto& v : verts)
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i].convert_to<long long>());
            hi[i] = std::max(hi[i], v[i].convert_to<long long>());
        }
    std::set<IntVector> out;
    std::vector<long long> cur = lo;
    while (true) {
        RatVector b(n + 1);
        for (std::size_t i = 0; i < n; ++i) b[i] = cur[i];
        b[n] = 1;
        auto lambda = solve_q(a, b);
        if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rat& x) { return x >= 0; }))
            out.insert(to_int_vector(cur));
        std::size_t c = 0;
        while (c < n && cur[c] == hi[c]) {
            cur[c] = lo[c];
            ++c;
        }
        if (c == n) break;
        ++cur[c];
    }
    return out;
}

}  // namespace

TEST_CASE("face enumeration", "[polytope]")
{
    auto square = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(square.face_sets(0).size() == 4);
    CHECK(square.face_sets(1).size() == 4);
    auto simplex = poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(simplex.face_sets(2).size() == 4);
    CHECK(simplex.face_sets(1).size() == 6);
    CHECK(simplex.facets().size() == 4);
    // non-extreme points are dropped
    CHECK(poly({{0, 0}, {2, 0}, {1, 0}, {0, 2}, {1, 1}}).vertices().size() == 3);
}

TEST_CASE("lattice points", "[polytope]")
{
    CHECK(poly({{0, 0}, {1, 0}, {0, 1}}).lattice_points().size() == 3);
    CHECK(poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}}).lattice_points().size() == 4);

    std::vector<IntVector> reeve{to_int_vector({0, 0, 0}), to_int_vector({1, 0, 0}), to_int_vector({0, 1, 0}),
                                 to_int_vector({1, 1, 2})};
    auto pts = as_set(LatticePolytope(reeve).lattice_points());
    CHECK(pts == simplex_points_oracle(reeve));
    CHECK(pts.size() == 4);

    std::vector<IntVector> big{to_int_vector({-1, -1, -1}), to_int_vector({3, -1, -1}), to_int_vector({-1, 3, -1}),
                               to_int_vector({-1, -1, 3})};
    CHECK(as_set(LatticePolytope(big).lattice_points()) == simplex_points_oracle(big));
}

TEST_CASE("elementary and standard simplices", "[polytope]")
{
    auto tri = poly({{0, 0}, {1, 0}, {0, 1}});
    CHECK(is_elementary_simplex(tri));
    CHECK(is_standard_simplex(tri));

    auto reeve = poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}});
    CHECK(is_elementary_simplex(reeve));
    CHECK_FALSE(is_standard_simplex(reeve));
    // the oracle side: SNF of the edge matrix is diag(1,1,2)
    auto snf = smith_normal_form(to_int_matrix({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}));
    CHECK(snf.invariant_factors() == std::vector<Int>{1, 1, 2});

    auto seg = poly({{0}, {2}});
    CHECK_FALSE(is_elementary_simplex(seg));
    CHECK_FALSE(is_standard_simplex(seg));
    CHECK(is_standard_simplex(poly({{3}})));
}

TEST_CASE("normal fans", "[polytope]")
{
    CHECK(normal_fan(poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}})).maximal_cones.size() == 4);
    auto f = normal_fan(poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(f.maximal_cones.size() == 4);
    CHECK(f.complete);
    auto interval = normal_fan(poly({{0}, {3}}));
    CHECK(interval.rays.size() == 2);
    CHECK(interval.maximal_cones.size() == 2);
}

TEST_CASE("dual cones", "[polytope]")
{
    Cone orthant(2, {to_int_vector({1, 0}), to_int_vector({0, 1})});
    CHECK(as_set(dual_cone(orthant).generators()) == as_set(orthant.generators()));

    Cone c(2, {to_int_vector({1, 0}), to_int_vector({1, 2})});
    CHECK(as_set(dual_cone(c).generators()) == std::set<IntVector>{to_int_vector({0, 1}), to_int_vector({2, -1})});
    const Cone dual = dual_cone(c);
    for (const auto& n : dual.generators())
        for (const auto& g : c.generators()) CHECK(dot(n, g) >= 0);

    Cone all(2, {to_int_vector({1, 0}), to_int_vector({-1, 0}), to_int_vector({0, 1}), to_int_vector({0, -1})});
    CHECK(dual_cone(all).generators().empty());
    CHECK_FALSE(all.strictly_convex());
    CHECK(orthant.strictly_convex());
}

TEST_CASE("Newton PL functions", "[polytope]")
{
    auto point = poly({{0, 0}});
    Fan f = normal_fan(poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    auto psi0 = newton_pl_function(point, f);
    CHECK(psi0(to_int_vector({3, -2})) == 0);

    auto seg = poly({{0}, {1}});
    auto psi = newton_pl_function(seg, normal_fan(seg));
    // psi(n) = -min over m in [0,1] of n m
    CHECK(psi(to_int_vector({1})) == 0);
    CHECK(psi(to_int_vector({-1})) == 1);
    CHECK(psi.is_convex());

    auto square = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto sq = newton_pl_function(square, normal_fan(square));
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            IntVector n = to_int_vector({a, b});
            Int lowest = dot(n, square.vertices().front());
            for (const auto& v : square.vertices()) lowest = std::min(lowest, dot(n, v));
            CHECK(sq(n) == -lowest);
        }
}

TEST_CASE("Minkowski sums and face splits", "[polytope]")
{
    auto e1 = poly({{0, 0}, {1, 0}}), e2 = poly({{0, 0}, {0, 1}});
    auto sum = minkowski_sum(e1, e2);
    CHECK(sum == poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    CHECK(minkowski_sum(e1, poly({{2, 3}})) == poly({{2, 3}, {3, 3}}));

    auto split = minkowski_face_split({e1, e2}, poly({{1, 0}, {1, 1}}));
    REQUIRE(split.size() == 2);
    CHECK(split[0] == poly({{1, 0}}));
    CHECK(split[1] == e2);

    split = minkowski_face_split({e1, e2}, poly({{0, 0}, {1, 0}}));
    CHECK(split[0] == e1);
    CHECK(split[1] == poly({{0, 0}}));
}

TEST_CASE("Cayley polytopes", "[polytope]")
{
    auto seg = poly({{0}, {1}});
    auto cay = cayley_polytope({seg, poly({{0}})});
    CHECK(cay.vertices().size() == 3);
    CHECK(is_standard_simplex(cay));
    // two parallel segments span a square, not a simplex
    auto square = cayley_polytope({seg, seg});
    CHECK(square.vertices().size() == 4);
    CHECK(square.dim() == 2);
    CHECK_FALSE(is_elementary_simplex(square));
}

TEST_CASE("regular subdivision of a square", "[polytope]")
{
    std::vector<IntVector> pts{to_int_vector({0, 0}), to_int_vector({1, 0}), to_int_vector({0, 1}),
                               to_int_vector({1, 1})};
    auto cells = regular_subdivision(pts, {0, 0, 0, 1});
    CHECK(cells.size() == 2);
    CHECK(regular_subdivision(pts, {0, 0, 0, 0}).size() == 1);
}

TEST_CASE("polytope JSON round trip", "[polytope]")
{
    auto p = poly({{-1, -1, -1}, {3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}});
    CHECK(polytope_from_json(polytope_to_json(p)) == p);
    try {
        polytope_from_json(nlohmann::json::parse(R"({"vertices": [[1, "x"]]})"));
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == "ParseError");
    }
}
