#include <catch_amalgamated.hpp>

#include <random>

#include "ahodge/sparse.hpp"

using namespace ahodge;

namespace {

SparseMatrix random_sparse(std::mt19937_64& rng, std::size_t r, std::size_t c, double density, int bound)
{
    SparseMatrix m(r, c);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (u(rng) < density) m.add(i, j, long(rng() % std::uint64_t(2 * bound + 1)) - bound);
    m.normalize();
    return m;
}

}  // namespace

TEST_CASE("sparse rank agrees with dense rank", "[sparse][property]")
{
    std::mt19937_64 rng(17);
    for (int t = 0; t < 80; ++t) {
        SparseMatrix m = random_sparse(rng, 1 + rng() % 12, 1 + rng() % 12, 0.3, 3);
        CHECK(sparse_rank(m) == rank_q(to_rat(m.to_dense())));
        CHECK(sparse_rank(m.transpose()) == sparse_rank(m));
    }
}

TEST_CASE("sparse rank survives int64 overflow", "[sparse]")
{
    // entries near 2^40 force the elimination to promote to mpz
    SparseMatrix m(3, 3);
    const std::int64_t big = std::int64_t(1) << 40;
    m.add(0, 0, big);
    m.add(0, 1, big - 1);
    m.add(1, 0, big + 1);
    m.add(1, 1, big);
    m.add(2, 2, big);
    m.normalize();
    CHECK(sparse_rank(m) == 3);
    CHECK(sparse_rank(m) == rank_q(to_rat(m.to_dense())));
}

TEST_CASE("normalize merges duplicates and drops zeros", "[sparse]")
{
    SparseMatrix m(2, 3);
    m.add(0, 2, 1);
    m.add(0, 2, -1);
    m.add(1, 0, 2);
    m.add(1, 0, 3);
    m.normalize();
    CHECK(m.nonzeros() == 1);
    CHECK(m.to_dense() == to_int_matrix({{0, 0, 0}, {5, 0, 0}}));
    CHECK(SparseMatrix::from_dense(m.to_dense()).to_dense() == m.to_dense());
}

TEST_CASE("sparse products and kernels", "[sparse]")
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
        SparseMatrix a = random_sparse(rng, 6, 5, 0.4, 2), b = random_sparse(rng, 5, 7, 0.4, 2);
        CHECK(multiply(a, b).to_dense() == a.to_dense() * b.to_dense());
        auto ker = sparse_kernel(a);
        CHECK(ker.size() + sparse_rank(a) == a.cols);
        for (const auto& v : ker) CHECK(sparse_apply(a, v).empty());
    }
}

TEST_CASE("incremental echelon tracks independence", "[sparse]")
{
    IncrementalEchelon e;
    CHECK(e.insert(sparse_from_dense({1, 2, 0})));
    CHECK(e.insert(sparse_from_dense({0, 1, 1})));
    CHECK_FALSE(e.insert(sparse_from_dense({1, 3, 1})));
    CHECK(e.insert(sparse_from_dense({0, 0, 5})));
    CHECK(e.size() == 3);
    CHECK(sparse_to_dense(sparse_axpy(sparse_from_dense({1, 0}), Rat(2), sparse_from_dense({0, 1})), 2) ==
          RatVector{1, 2});
}
