#include "ahodge/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace ahodge {

namespace {

// floor division for b != 0
Int floor_div(const Int& a, const Int& b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Int lcm_int(const Int& a, const Int& b)
{
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

}  // namespace

RatMatrix to_rat(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

RatVector to_rat(const IntVector& v)
{
    RatVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

IntMatrix clear_denominators_rows(const RatMatrix& m)
{
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) l = lcm_int(l, denominator(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat x = m(i, j) * l;
            out(i, j) = numerator(x);
        }
    }
    return out;
}

IntVector integral_primitive(const RatVector& v)
{
    Int l = 1;
    for (const auto& x : v)
        if (x != 0) l = lcm_int(l, denominator(x));
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator(Rat(v[i] * l));
    if (is_zero(out)) return out;
    return primitive(out);
}

IntVector to_int_vector(const std::vector<long long>& v)
{
    IntVector out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(x);
    return out;
}

IntMatrix to_int_matrix(const std::vector<std::vector<long long>>& rows)
{
    std::vector<IntVector> r;
    for (const auto& row : rows) r.push_back(to_int_vector(row));
    return IntMatrix::from_rows(r);
}

Int gcd_of(const IntVector& v)
{
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return abs(g);
}

Int dot(const IntVector& a, const IntVector& b)
{
    require(a.size() == b.size(), "DimensionMismatch", "dot product");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const RatVector& a, const RatVector& b)
{
    require(a.size() == b.size(), "DimensionMismatch", "dot product");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVector add(const IntVector& a, const IntVector& b)
{
    require(a.size() == b.size(), "DimensionMismatch", "vector sum");
    IntVector c(a);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += b[i];
    return c;
}

IntVector sub(const IntVector& a, const IntVector& b)
{
    require(a.size() == b.size(), "DimensionMismatch", "vector difference");
    IntVector c(a);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] -= b[i];
    return c;
}

IntVector scale(const Int& s, const IntVector& a)
{
    IntVector c(a);
    for (auto& x : c) x *= s;
    return c;
}

bool is_zero(const IntVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const RatVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

IntVector primitive(const IntVector& v)
{
    Int g = gcd_of(v);
    if (g == 0) fail("ZeroVector", "primitive() of the zero vector");
    IntVector out(v);
    for (auto& x : out) x /= g;
    return out;
}

// ---- elimination ---------------------------------------------------------

EchelonForm echelon_fraction_free(const IntMatrix& a)
{
    IntMatrix m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (m(i, c) != 0) {
                p = i;
                break;
            }
        if (p == rows) continue;
        m.swap_rows(p, r);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            }
            m(i, c) = 0;
        }
        prev = m(r, c);
        pivots.push_back(c);
        ++r;
    }
    EchelonForm out;
    out.rows = IntMatrix(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.rows(i, j) = m(i, j);
    out.pivots = pivots;
    return out;
}

Int determinant(const IntMatrix& a)
{
    require(a.rows() == a.cols(), "DimensionMismatch", "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p == n) return 0;
            m.swap_rows(p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return echelon_fraction_free(a).pivots.size(); }

std::size_t rank_q(const RatMatrix& a) { return rank(clear_denominators_rows(a)); }

std::vector<RatVector> kernel_basis_q(const RatMatrix& a)
{
    const std::size_t n = a.cols();
    EchelonForm e = echelon_fraction_free(clear_denominators_rows(a));
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVector x(n);
        x[f] = 1;
        for (std::size_t ii = e.pivots.size(); ii-- > 0;) {
            std::size_t p = e.pivots[ii];
            Rat s = 0;
            for (std::size_t j = p + 1; j < n; ++j)
                if (e.rows(ii, j) != 0 && x[j] != 0) s += Rat(e.rows(ii, j)) * x[j];
            x[p] = -s / Rat(e.rows(ii, p));
        }
        basis.push_back(to_rat(integral_primitive(x)));
    }
    return basis;
}

std::optional<RatVector> solve_q(const RatMatrix& a, const RatVector& b)
{
    require(a.rows() == b.size(), "DimensionMismatch", "solve_q right-hand side");
    const std::size_t n = a.cols();
    RatMatrix aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    EchelonForm e = echelon_fraction_free(clear_denominators_rows(aug));
    if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
    RatVector x(n);
    for (std::size_t ii = e.pivots.size(); ii-- > 0;) {
        std::size_t p = e.pivots[ii];
        Rat s = Rat(e.rows(ii, n));
        for (std::size_t j = p + 1; j < n; ++j)
            if (e.rows(ii, j) != 0 && x[j] != 0) s -= Rat(e.rows(ii, j)) * x[j];
        x[p] = s / Rat(e.rows(ii, p));
    }
    return x;
}

RatMatrix inverse_q(const RatMatrix& a)
{
    require(a.rows() == a.cols(), "DimensionMismatch", "inverse of a non-square matrix");
    const std::size_t n = a.rows();
    RatMatrix m = a, inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        for (std::size_t i = c; i < n; ++i)
            if (m(i, c) != 0) {
                p = i;
                break;
            }
        require(p != n, "Singular", "matrix is not invertible");
        m.swap_rows(p, c);
        inv.swap_rows(p, c);
        Rat piv = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

IntMatrix unimodular_inverse(const IntMatrix& a)
{
    Int d = determinant(a);
    require(d == 1 || d == -1, "NotUnimodular", "determinant " + d.str() + " is not +-1");
    RatMatrix inv = inverse_q(to_rat(a));
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = numerator(inv(i, j));
    return out;
}

// ---- Smith / Hermite -----------------------------------------------------

std::vector<Int> SmithForm::invariant_factors() const
{
    std::vector<Int> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
    return out;
}

namespace {

void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f)
{
    if (f == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(src, j) != 0) m(dst, j) -= f * m(src, j);
}

void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f)
{
    if (f == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, src) != 0) m(i, dst) -= f * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a)
{
    const std::size_t m = a.rows(), n = a.cols();
    IntMatrix D = a, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        bool found = false;
        std::size_t pi = 0, pj = 0;
        Int best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D(i, j) != 0 && (!found || abs(D(i, j)) < best)) {
                    found = true;
                    best = abs(D(i, j));
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        D.swap_rows(t, pi);
        U.swap_rows(t, pi);
        D.swap_cols(t, pj);
        V.swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Int q = floor_div(D(i, t), D(t, t));
                row_axpy(D, i, t, q);
                row_axpy(U, i, t, q);
                if (D(i, t) != 0) {
                    D.swap_rows(i, t);
                    U.swap_rows(i, t);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Int q = floor_div(D(t, j), D(t, t));
                col_axpy(D, j, t, q);
                col_axpy(V, j, t, q);
                if (D(t, j) != 0) {
                    D.swap_cols(j, t);
                    V.swap_cols(j, t);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility of the trailing block by the pivot
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_axpy(D, t, i, Int(-1));
                        row_axpy(U, t, i, Int(-1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (D(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j) D(t, j) = -D(t, j);
            for (std::size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
        }
    }
    return SmithForm{D, U, V};
}

IntMatrix hermite_rows(const IntMatrix& a)
{
    IntMatrix h = a;
    const std::size_t m = h.rows(), n = h.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (;;) {
            std::size_t p = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (p == m || abs(h(i, c)) < abs(h(p, c)))) p = i;
            if (p == m) break;
            h.swap_rows(p, r);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                row_axpy(h, i, r, floor_div(h(i, c), h(r, c)));
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (r < m && h(r, c) != 0) {
            if (h(r, c) < 0)
                for (std::size_t j = 0; j < n; ++j) h(r, j) = -h(r, j);
            for (std::size_t i = 0; i < r; ++i) row_axpy(h, i, r, floor_div(h(i, c), h(r, c)));
            ++r;
        }
    }
    IntMatrix out(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
    return out;
}

IntMatrix integer_kernel(const IntMatrix& a)
{
    const std::size_t n = a.cols();
    if (a.rows() == 0) return IntMatrix::identity(n);
    SmithForm s = smith_normal_form(a);
    std::size_t k = 0;
    while (k < std::min(a.rows(), n) && s.D(k, k) != 0) ++k;
    IntMatrix basis(n - k, n);
    for (std::size_t c = k; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) basis(c - k, i) = s.V(i, c);
    return hermite_rows(basis);
}

IntMatrix saturate_rows(const IntMatrix& b)
{
    if (b.rows() == 0 || b.is_zero()) return IntMatrix(0, b.cols());
    IntMatrix k = integer_kernel(b);
    return integer_kernel(k);
}

std::optional<IntVector> echelon_coordinates(const IntMatrix& h, const IntVector& x0)
{
    require(h.cols() == x0.size(), "DimensionMismatch", "echelon_coordinates");
    IntVector x = x0, c(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t p = 0;
        while (p < h.cols() && h(i, p) == 0) ++p;
        if (p == h.cols()) continue;
        if (x[p] % h(i, p) != 0) return std::nullopt;
        c[i] = x[p] / h(i, p);
        if (c[i] != 0)
            for (std::size_t j = p; j < h.cols(); ++j) x[j] -= c[i] * h(i, j);
    }
    if (!is_zero(x)) return std::nullopt;
    return c;
}

IntMatrix basis_completion(const IntVector& v)
{
    require(gcd_of(v) == 1, "NotPrimitive", "basis_completion needs a primitive vector");
    SmithForm s = smith_normal_form(IntMatrix::column(v));
    IntMatrix u = s.U;
    if (s.V(0, 0) == -1)
        for (std::size_t j = 0; j < u.cols(); ++j) u(0, j) = -u(0, j);
    return u;
}

// ---- exterior algebra ----------------------------------------------------

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

WedgeBasis::WedgeBasis(std::size_t n, std::size_t r) : n_(n), r_(r)
{
    require(n <= 20, "RangeError", "wedge basis dimension too large");
    require(r <= n, "RangeError", "wedge degree exceeds dimension");
    mask_index_.assign(std::size_t(1) << n, -1);
    std::vector<int> cur;
    // lexicographic enumeration of r-subsets
    std::vector<int> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = int(i);
    for (;;) {
        tuples_.push_back(idx);
        std::uint32_t mask = 0;
        for (int x : idx) mask |= (1u << x);
        mask_index_[mask] = long(tuples_.size() - 1);
        if (r == 0) break;
        long i = long(r) - 1;
        while (i >= 0 && idx[i] == int(n - r + i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

long WedgeBasis::index_of_mask(std::uint32_t mask) const
{
    if (mask >= mask_index_.size()) return -1;
    return mask_index_[mask];
}

long WedgeBasis::index_of(const std::vector<int>& tuple) const
{
    std::uint32_t mask = 0;
    for (int x : tuple) mask |= (1u << x);
    return index_of_mask(mask);
}

IntMatrix contraction_matrix(const IntVector& m, std::size_t n, std::size_t r)
{
    require(r >= 1 && r <= n, "RangeError", "contraction degree out of range");
    require(m.size() == n, "DimensionMismatch", "contraction vector size");
    WedgeBasis src(n, r), dst(n, r - 1);
    IntMatrix out(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const auto& t = src.tuple(c);
        std::uint32_t mask = 0;
        for (int x : t) mask |= (1u << x);
        for (std::size_t pos = 0; pos < t.size(); ++pos) {
            const Int& coef = m[t[pos]];
            if (coef == 0) continue;
            long row = dst.index_of_mask(mask & ~(1u << t[pos]));
            if (pos % 2 == 0)
                out(row, c) += coef;
            else
                out(row, c) -= coef;
        }
    }
    return out;
}

IntMatrix wedge_with_covector(const IntVector& d, std::size_t n, std::size_t r)
{
    require(r + 1 <= n, "RangeError", "wedge degree out of range");
    require(d.size() == n, "DimensionMismatch", "wedge vector size");
    WedgeBasis src(n, r), dst(n, r + 1);
    IntMatrix out(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const auto& t = src.tuple(c);
        std::uint32_t mask = 0;
        for (int x : t) mask |= (1u << x);
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i] == 0 || (mask & (1u << i))) continue;
            std::size_t before = 0;
            for (int x : t)
                if (x < int(i)) ++before;
            long row = dst.index_of_mask(mask | (1u << i));
            if (before % 2 == 0)
                out(row, c) += d[i];
            else
                out(row, c) -= d[i];
        }
    }
    return out;
}

IntMatrix induced_wedge_map(const IntMatrix& t, std::size_t r)
{
    WedgeBasis src(t.cols(), r), dst(t.rows(), r);
    IntMatrix out(dst.size(), src.size());
    for (std::size_t i = 0; i < dst.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j) {
            IntMatrix minor(r, r);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) minor(a, b) = t(dst.tuple(i)[a], src.tuple(j)[b]);
            out(i, j) = determinant(minor);
        }
    return out;
}

namespace {

template <typename T>
std::vector<T> wedge_product_impl(const std::vector<T>& a, std::size_t ra, const std::vector<T>& b,
                                  std::size_t rb, std::size_t n)
{
    require(ra + rb <= n, "RangeError", "wedge product degree exceeds dimension");
    WedgeBasis ba(n, ra), bb(n, rb), bc(n, ra + rb);
    require(a.size() == ba.size() && b.size() == bb.size(), "DimensionMismatch", "wedge product sizes");
    std::vector<T> out(bc.size());
    for (std::size_t i = 0; i < ba.size(); ++i) {
        if (a[i] == 0) continue;
        std::uint32_t ma = 0;
        for (int x : ba.tuple(i)) ma |= (1u << x);
        for (std::size_t j = 0; j < bb.size(); ++j) {
            if (b[j] == 0) continue;
            std::uint32_t mb = 0;
            for (int x : bb.tuple(j)) mb |= (1u << x);
            if (ma & mb) continue;
            std::size_t inv = 0;
            for (int x : ba.tuple(i))
                for (int y : bb.tuple(j))
                    if (x > y) ++inv;
            long k = bc.index_of_mask(ma | mb);
            if (inv % 2 == 0)
                out[k] += a[i] * b[j];
            else
                out[k] -= a[i] * b[j];
        }
    }
    return out;
}

}  // namespace

IntVector wedge_product(const IntVector& a, std::size_t ra, const IntVector& b, std::size_t rb, std::size_t n)
{
    return wedge_product_impl(a, ra, b, rb, n);
}

RatVector wedge_product(const RatVector& a, std::size_t ra, const RatVector& b, std::size_t rb, std::size_t n)
{
    return wedge_product_impl(a, ra, b, rb, n);
}

std::string to_string(const IntVector& v)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

std::string to_string(const IntMatrix& m)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? "," : "") << to_string(m.row(i));
    os << "]";
    return os.str();
}

}  // namespace ahodge
