#include <catch_amalgamated.hpp>

#include <fstream>

#include "ahodge/cohomology.hpp"
#include "ahodge/monodromy.hpp"
#include "ahodge/reflexive.hpp"
#include "oracles.hpp"

using namespace ahodge;

namespace {

std::string data(const std::string& name) { return std::string(AHODGE_DATA_DIR) + "/" + name + ".json"; }

/// The shear fixture with the chart at (vertex 1, cell 10) inverted, so the loop shears the other way.
IntegralAffineComplex inverted_shear()
{
    nlohmann::json j = complex_to_json(shear_fixture());
    for (auto& ch : j["charts"])
        if (ch["vertex"] == 1 && ch["cell"] == 10) ch["matrix"] = {{1, 1}, {0, 1}};
    return complex_from_json(j);
}

bool parallel(const IntVector& a, const IntVector& b)
{
    return a.size() == 2 && b.size() == 2 && a[0] * b[1] - a[1] * b[0] == 0 && !is_zero(a);
}

}  // namespace

TEST_CASE("torus monodromy is trivial", "[monodromy]")
{
    auto c = cubical_torus(2, 3);
    auto m = compute_monodromy(c);
    for (const auto& f : m.facets) CHECK(is_zero(f.m));
    for (const auto& e : m.edges) CHECK(is_zero(e.n));
    for (const auto& k : m.kappas) CHECK(k.kappa == 0);
    CHECK(check_positive(c));
    for (const auto& cert : check_simple(c)) {
        CHECK(cert.failure.empty());
        for (const auto& d : cert.deltas) CHECK(d.dim() <= 0);
    }
}

TEST_CASE("shear fixture has a single kappa = 1 loop", "[monodromy]")
{
    auto c = shear_fixture();
    // T = [[1,1],[0,1]] around the interior edge
    IntMatrix t = loop_transport(c, 0, 1, 9, 10);
    CHECK(t == to_int_matrix({{1, 1}, {0, 1}}));

    auto f = facet_monodromy(c, 4, 0, 1);
    CHECK(f.d_check == to_int_vector({0, 1}));
    CHECK(f.m == to_int_vector({1, 0}));
    auto e = edge_monodromy(c, 4, 9, 10);
    CHECK(e.d == to_int_vector({1, 0}));
    CHECK(kappa(c, 4, 4) == 1);
    CHECK(check_positive(c));
    // T(x) = x + <d_check, x> m reproduces the loop transport
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            IntVector x = to_int_vector({a, b});
            CHECK(t * x == add(x, scale(dot(f.d_check, x), f.m)));
        }
}

TEST_CASE("inverting a chart gives kappa = -1 and fails positivity", "[monodromy]")
{
    auto c = inverted_shear();
    CHECK(kappa(c, 4, 4) == -1);
    CHECK_FALSE(check_positive(c));
}

TEST_CASE("invariant sections of a single shear", "[monodromy]")
{
    auto c = shear_fixture();
    auto f = facet_monodromy(c, 4, c.base_vertex(4), c.cell(4).vertices.back());

    TransportCache lam(c, LocalSystem{SystemKind::WedgeLambda, 1, 2});
    IntMatrix inv = invariant_sections(c, lam, 4, 4);
    REQUIRE(inv.rows() == 1);
    CHECK(parallel(inv.row(0), f.m));

    TransportCache lamc(c, LocalSystem{SystemKind::WedgeLambdaCheck, 1, 2});
    inv = invariant_sections(c, lamc, 4, 4);
    REQUIRE(inv.rows() == 1);
    CHECK(parallel(inv.row(0), f.d_check));

    TransportCache top(c, LocalSystem{SystemKind::WedgeLambdaCheck, 2, 2});
    CHECK(invariant_sections(c, top, 4, 4).rows() == 1);

    // over a maximal cell the whole fibre is invariant
    CHECK(invariant_sections(c, lam, 0, 9).rows() == 2);
}

TEST_CASE("K3 monodromy: 24 focus-focus points, all kappa in {0,1}", "[monodromy][k3]")
{
    auto c = load_complex(data("k3_quartic"));
    auto m = compute_monodromy(c);
    long ones = 0;
    for (const auto& k : m.kappas) {
        CHECK((k.kappa == 0 || k.kappa == 1));
        if (k.kappa == 1) ++ones;
    }
    // oracle: the Euler number 2 + 2 + h11 of the K3 from the combinatorial formula
    auto xi = reflexive_input_from_json(nlohmann::json::parse(std::ifstream(data("k3_quartic"))));
    CHECK(ones == 4 + oracle::batyrev_k3(xi));
    CHECK(check_positive(c));
    CHECK(radiance_cocycle_closed(c, radiance_cocycle(c)));
}

TEST_CASE("simplicity certificates", "[monodromy][simplicity]")
{
    auto k3 = load_complex(data("k3_quartic"));
    auto certs = check_simple(k3);
    CHECK(certs.size() == k3.cells_of_dim(1).size());
    for (const auto& cert : certs) {
        CHECK(cert.failure.empty());
        CHECK(cert.elementary_ok);
        CHECK(cert.bigtheorem_ok);
    }

    auto quintic = load_complex(data("quintic"));
    auto qc = check_simple(quintic);
    CHECK(qc.size() == quintic.cells_of_dim(1).size() + quintic.cells_of_dim(2).size());
    for (const auto& cert : qc) CHECK(cert.to_json().is_object());
    try {
        check_simple(quintic, true);
        FAIL("expected SimplicityFailure");
    } catch (const Error& e) {
        CHECK(e.kind() == "SimplicityFailure");
    }
}

TEST_CASE("monodromy reports are identical across thread counts", "[monodromy][determinism]")
{
    auto c = load_complex(data("k3_quartic"));
    CHECK(compute_monodromy(c, 1).to_json().dump() == compute_monodromy(c, 4).to_json().dump());
}
