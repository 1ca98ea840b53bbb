#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "ahodge/errors.hpp"

namespace ahodge {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

/**
 * Dense row-major matrix. Only what the geometry code needs; sizes here are
 * tiny (n <= 5, wedge ranks <= 10), large systems go through sparse.hpp.
 */
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols_if_empty = 0)
    {
        if (rows.empty()) return Matrix(0, cols_if_empty);
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == m.cols_, "DimensionMismatch", "ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix column(const std::vector<T>& v)
    {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    std::vector<T> col(std::size_t j) const
    {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    std::vector<std::vector<T>> to_rows() const
    {
        std::vector<std::vector<T>> out;
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        require(a.cols_ == b.rows_, "DimensionMismatch", "matrix product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v)
    {
        require(a.cols_ == v.size(), "DimensionMismatch", "matrix-vector product");
        std::vector<T> out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (a(i, j) != 0 && v[j] != 0) out[i] += a(i, j) * v[j];
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "DimensionMismatch", "matrix sum");
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "DimensionMismatch", "matrix difference");
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

// ---- conversions and small helpers -------------------------------------

RatMatrix to_rat(const IntMatrix& m);
RatVector to_rat(const IntVector& v);
/// Scale each row by the lcm of its denominators; row spaces are unchanged.
IntMatrix clear_denominators_rows(const RatMatrix& m);
/// Integer multiple of v with coprime entries (zero stays zero).
IntVector integral_primitive(const RatVector& v);

IntVector to_int_vector(const std::vector<long long>& v);
IntMatrix to_int_matrix(const std::vector<std::vector<long long>>& rows);

Int gcd_of(const IntVector& v);
Int dot(const IntVector& a, const IntVector& b);
Rat dot(const RatVector& a, const RatVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const Int& s, const IntVector& a);
bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

/// v / gcd(v). Sign is preserved.
IntVector primitive(const IntVector& v);

// ---- elimination ---------------------------------------------------------

struct EchelonForm {
    IntMatrix rows;                  // fraction-free row echelon form (nonzero rows only)
    std::vector<std::size_t> pivots; // pivot column per row, strictly increasing
};

/// Bareiss fraction-free elimination to row echelon form.
EchelonForm echelon_fraction_free(const IntMatrix& a);

Int determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);
std::size_t rank_q(const RatMatrix& a);
/// Basis of ker(A) over Q, one vector per free column, each scaled primitive integral.
std::vector<RatVector> kernel_basis_q(const RatMatrix& a);
/// Some solution x of A x = b, or nothing.
std::optional<RatVector> solve_q(const RatMatrix& a, const RatVector& b);
RatMatrix inverse_q(const RatMatrix& a);
/// Inverse of a matrix with determinant +-1; throws otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

struct SmithForm {
    IntMatrix D, U, V;  // U * A * V == D
    std::vector<Int> invariant_factors() const;  // diagonal, including zeros
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Row Hermite normal form (nonzero rows only, positive pivots, reduced above).
IntMatrix hermite_rows(const IntMatrix& a);
/// Saturated Z-basis of ker(A) as rows (HNF). A is m x N; result has N columns.
IntMatrix integer_kernel(const IntMatrix& a);
/// Z-basis of (rowspace(B) (x) Q) cap Z^N, as HNF rows.
IntMatrix saturate_rows(const IntMatrix& b);
/// Integer coefficients c with x = sum c_i H_i for H in row echelon form.
std::optional<IntVector> echelon_coordinates(const IntMatrix& h, const IntVector& x);
/// Unimodular U with U * v = e_1 for primitive v.
IntMatrix basis_completion(const IntVector& v);

// ---- exterior algebra ----------------------------------------------------

/**
 * Lexicographically ordered r-subsets of {0..n-1}.  Index <-> tuple maps
 * go through a bitmask table, fine for the n <= 10 used here.
 */
class WedgeBasis {
public:
    WedgeBasis(std::size_t n, std::size_t r);

    std::size_t n() const { return n_; }
    std::size_t r() const { return r_; }
    std::size_t size() const { return tuples_.size(); }
    const std::vector<int>& tuple(std::size_t i) const { return tuples_[i]; }
    /// -1 when the mask is not an r-subset.
    long index_of_mask(std::uint32_t mask) const;
    long index_of(const std::vector<int>& tuple) const;

private:
    std::size_t n_, r_;
    std::vector<std::vector<int>> tuples_;
    std::vector<long> mask_index_;
};

std::size_t binomial(std::size_t n, std::size_t k);

/// Matrix of iota(m): wedge^r -> wedge^{r-1} (rows C(n,r-1), cols C(n,r)).
IntMatrix contraction_matrix(const IntVector& m, std::size_t n, std::size_t r);
/// Matrix of x -> d ^ x : wedge^r -> wedge^{r+1}.
IntMatrix wedge_with_covector(const IntVector& d, std::size_t n, std::size_t r);
/// Matrix of wedge^r T (entries are r x r minors).
IntMatrix induced_wedge_map(const IntMatrix& t, std::size_t r);
/// Exterior product of an a-form and a b-form in wedge-basis coordinates.
IntVector wedge_product(const IntVector& a, std::size_t ra, const IntVector& b, std::size_t rb,
                        std::size_t n);
RatVector wedge_product(const RatVector& a, std::size_t ra, const RatVector& b, std::size_t rb,
                        std::size_t n);

std::string to_string(const IntVector& v);
std::string to_string(const IntMatrix& m);

}  // namespace ahodge
