#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ahodge/lattice.hpp"

namespace ahodge {

/**
 * Row-compressed integer matrix. Entries of assembled Čech differentials are
 * small (products of unimodular transports), so they are stored as int64;
 * elimination promotes to mpz when needed.
 */
struct SparseMatrix {
    using Entry = std::pair<std::uint32_t, std::int64_t>;

    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<Entry>> data;  // per row, sorted by column, no zeros

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r) {}

    /// Adds v to entry (i, j); rows must be finalized with normalize() afterwards.
    void add(std::size_t i, std::size_t j, std::int64_t v);
    /// Sort each row, merge duplicates, drop zeros.
    void normalize();

    std::size_t nonzeros() const;
    SparseMatrix transpose() const;
    bool is_zero() const;
    IntMatrix to_dense() const;
    static SparseMatrix from_dense(const IntMatrix& m);
};

/// this * other (exact, int64 with overflow check).
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/**
 * Rank over Q by sparse integer elimination. Pivots are chosen column by
 * column in order of increasing column weight, preferring unit entries and
 * short rows. Runs in checked int64 and restarts in mpz on overflow.
 */
std::size_t sparse_rank(const SparseMatrix& m);

/// Sorted sparse rational vector.
using SparseVec = std::vector<std::pair<std::size_t, Rat>>;

SparseVec sparse_axpy(const SparseVec& x, const Rat& a, const SparseVec& y);  // x + a*y
SparseVec sparse_scale(const Rat& a, const SparseVec& x);
SparseVec sparse_from_dense(const RatVector& v);
RatVector sparse_to_dense(const SparseVec& v, std::size_t n);
/// Column j of m as a sparse rational vector.
std::vector<SparseVec> sparse_columns(const SparseMatrix& m);
/// m * x for a sparse x.
SparseVec sparse_apply(const SparseMatrix& m, const SparseVec& x);

/**
 * Echelon basis built one vector at a time. Every stored vector carries a
 * label vector that is reduced alongside it, which is how kernels, class
 * representatives and coordinates are read off.
 */
class IncrementalEchelon {
public:
    struct Reduced {
        SparseVec vec;
        SparseVec label;
    };

    /// Eliminate leading entries against stored pivots until none applies.
    Reduced reduce(SparseVec v, SparseVec label) const;
    /// Reduce and store; returns true when v was independent of the stored vectors.
    bool insert(SparseVec v, SparseVec label = {});
    std::size_t size() const { return rows_.size(); }

private:
    std::vector<Reduced> rows_;
    std::unordered_map<std::size_t, std::size_t> pivot_of_;  // leading index -> row
};

/**
 * Basis of ker(m) over Q, computed by inserting the columns of m with unit
 * labels; columns that reduce to zero yield the kernel vectors (as labels).
 */
std::vector<SparseVec> sparse_kernel(const SparseMatrix& m);

}  // namespace ahodge
