#include <catch_amalgamated.hpp>

#include <random>

#include "ahodge/lattice.hpp"

using namespace ahodge;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound)
{
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = long(rng() % std::uint64_t(2 * bound + 1)) - bound;
    return m;
}

/// Gaussian elimination over Q written out directly, used as the rank oracle.
std::size_t rank_by_elimination(RatMatrix a)
{
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < a.rows() && a(piv, c) == 0) ++piv;
        if (piv == a.rows()) continue;
        a.swap_rows(piv, rank);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == rank || a(i, c) == 0) continue;
            Rat f = a(i, c) / a(rank, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("Smith normal form examples", "[lattice]")
{
    auto id = IntMatrix::identity(3);
    auto s = smith_normal_form(id);
    CHECK(s.invariant_factors() == std::vector<Int>{1, 1, 1});

    IntMatrix a = to_int_matrix({{2, 4}, {6, 8}});
    s = smith_normal_form(a);
    // d1 is the gcd of the entries and d1 d2 = |det|
    Int g = gcd_of(IntVector{2, 4, 6, 8});
    Int det = abs(determinant(a));
    CHECK(s.invariant_factors() == std::vector<Int>{g, det / g});
    CHECK(s.U * a * s.V == s.D);

    s = smith_normal_form(IntMatrix(2, 2));
    CHECK(s.invariant_factors() == std::vector<Int>{0, 0});
}

TEST_CASE("Smith normal form divisibility and transforms on random matrices", "[lattice][property]")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
        IntMatrix a = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 6);
        auto s = smith_normal_form(a);
        CHECK(s.U * a * s.V == s.D);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        auto f = s.invariant_factors();
        for (std::size_t i = 0; i + 1 < f.size(); ++i)
            if (f[i] != 0) CHECK(f[i + 1] % f[i] == 0);
    }
}

TEST_CASE("kernel and rank over Q", "[lattice]")
{
    CHECK(kernel_basis_q(to_rat(IntMatrix::identity(3))).empty());

    auto k = kernel_basis_q(to_rat(to_int_matrix({{1, 1}})));
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == -k[0][1]);

    RatMatrix b = to_rat(to_int_matrix({{1, 2}, {2, 4}}));
    k = kernel_basis_q(b);
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == -2 * k[0][1]);
    CHECK(is_zero(b * k[0]));
    CHECK(rank_q(b) == rank_by_elimination(b));
    CHECK(rank_q(to_rat(IntMatrix::identity(4))) == 4);
    CHECK(rank_q(RatMatrix(3, 2)) == 0);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        IntMatrix a = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, 2);
        RatMatrix q = to_rat(a);
        CHECK(rank_q(q) == rank_by_elimination(q));
        CHECK(rank(a) == rank_q(q));
        auto ker = kernel_basis_q(q);
        CHECK(ker.size() + rank_q(q) == a.cols());
        for (const auto& v : ker) CHECK(is_zero(q * v));
    }
}

TEST_CASE("primitive vectors", "[lattice]")
{
    CHECK(primitive(IntVector{4, 6}) == IntVector{2, 3});
    CHECK(primitive(IntVector{1, 0, 0}) == IntVector{1, 0, 0});
    CHECK(primitive(IntVector{-2, -4}) == IntVector{-1, -2});
    try {
        primitive(IntVector{0, 0});
        FAIL("expected ZeroVector");
    } catch (const Error& e) {
        CHECK(e.kind() == "ZeroVector");
    }
}

TEST_CASE("integer kernel, Hermite form and unimodular inverse", "[lattice]")
{
    IntMatrix a = to_int_matrix({{2, 4, 6}});
    IntMatrix k = integer_kernel(a);
    CHECK(k.rows() == 2);
    for (std::size_t i = 0; i < k.rows(); ++i) CHECK(is_zero(a * k.row(i)));

    IntMatrix u = to_int_matrix({{2, 1}, {1, 1}});
    CHECK(unimodular_inverse(u) * u == IntMatrix::identity(2));

    IntMatrix b = basis_completion(IntVector{2, 3});
    CHECK(abs(determinant(b)) == 1);
}

TEST_CASE("contraction matrices", "[lattice][wedge]")
{
    // wedge^2 Z^2 has the single basis element e1* ^ e2*; wedge^1 has e1*, e2*
    IntMatrix c = contraction_matrix(IntVector{1, 0}, 2, 2);
    REQUIRE(c.rows() == 2);
    REQUIRE(c.cols() == 1);
    CHECK(c.col(0) == IntVector{0, 1});

    CHECK(contraction_matrix(IntVector{0, 0, 0}, 3, 2).is_zero());

    c = contraction_matrix(IntVector{1, 1}, 2, 2);
    CHECK(c.col(0) == IntVector{-1, 1});

    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        IntVector m(4);
        for (auto& x : m) x = long(rng() % 7) - 3;
        for (std::size_t r = 2; r <= 4; ++r)
            CHECK((contraction_matrix(m, 4, r - 1) * contraction_matrix(m, 4, r)).is_zero());
    }
}

TEST_CASE("exterior powers of matrices", "[lattice][wedge]")
{
    CHECK(induced_wedge_map(IntMatrix::identity(3), 2) == IntMatrix::identity(3));
    IntMatrix t = to_int_matrix({{1, 1}, {0, 1}});
    CHECK(induced_wedge_map(t, 2) == to_int_matrix({{1}}));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix a = random_matrix(rng, 4, 4, 3), b = random_matrix(rng, 4, 4, 3);
        CHECK(induced_wedge_map(a, 4)(0, 0) == determinant(a));
        for (std::size_t r = 1; r <= 3; ++r)
            CHECK(induced_wedge_map(a * b, r) == induced_wedge_map(a, r) * induced_wedge_map(b, r));
    }
}

TEST_CASE("wedge with a covector agrees with the wedge product", "[lattice][wedge]")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        IntVector d(4), x(binomial(4, 2));
        for (auto& v : d) v = long(rng() % 5) - 2;
        for (auto& v : x) v = long(rng() % 5) - 2;
        CHECK(wedge_with_covector(d, 4, 2) * x == wedge_product(d, 1, x, 2, 4));
        // d ^ d ^ x = 0
        CHECK((wedge_with_covector(d, 4, 3) * wedge_with_covector(d, 4, 2)).is_zero());
    }
}

TEST_CASE("wedge basis indexing", "[lattice][wedge]")
{
    WedgeBasis w(4, 2);
    CHECK(w.size() == 6);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(w.index_of(w.tuple(i)) == long(i));
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, 4) == 0);
}
