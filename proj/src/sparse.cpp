#include "ahodge/sparse.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ahodge {

void SparseMatrix::add(std::size_t i, std::size_t j, std::int64_t v)
{
    if (v == 0) return;
    data[i].emplace_back(std::uint32_t(j), v);
}

void SparseMatrix::normalize()
{
    for (auto& row : data) {
        std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        std::vector<Entry> merged;
        for (const auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first) {
                if (__builtin_add_overflow(merged.back().second, e.second, &merged.back().second))
                    fail("RangeError", "sparse entry overflow");
            } else {
                merged.push_back(e);
            }
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Entry& e) { return e.second == 0; }),
                     merged.end());
        row.swap(merged);
    }
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : data) n += r.size();
    return n;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (const auto& [j, v] : data[i]) t.data[j].emplace_back(std::uint32_t(i), v);
    return t;
}

bool SparseMatrix::is_zero() const
{
    for (const auto& r : data)
        if (!r.empty()) return false;
    return true;
}

IntMatrix SparseMatrix::to_dense() const
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (const auto& [j, v] : data[i]) m(i, j) = Int(v);
    return m;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& m)
{
    SparseMatrix s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) {
                require(m(i, j) >= INT64_MIN && m(i, j) <= INT64_MAX, "RangeError", "entry exceeds int64");
                s.add(i, j, m(i, j).convert_to<std::int64_t>());
            }
    return s;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
    require(a.cols == b.rows, "DimensionMismatch", "sparse product");
    SparseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (const auto& [k, av] : a.data[i])
            for (const auto& [j, bv] : b.data[k]) {
                std::int64_t p;
                if (__builtin_mul_overflow(av, bv, &p)) fail("RangeError", "sparse product overflow");
                c.add(i, j, p);
            }
    }
    c.normalize();
    return c;
}

namespace {

struct Overflow {};

struct Checked64 {
    using V = std::int64_t;
    static V from(std::int64_t x) { return x; }
    static V mul(V a, V b)
    {
        V r;
        if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static V sub(V a, V b)
    {
        V r;
        if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static V neg(V a)
    {
        if (a == INT64_MIN) throw Overflow{};
        return -a;
    }
    static bool is_unit(V a) { return a == 1 || a == -1; }
    static V gcd(V a, V b) { return std::gcd(a, b); }
    static V abs(V a) { return a < 0 ? neg(a) : a; }
};

struct Big {
    using V = Int;
    static V from(std::int64_t x) { return Int(x); }
    static V mul(const V& a, const V& b) { return a * b; }
    static V sub(const V& a, const V& b) { return a - b; }
    static V neg(const V& a) { return -a; }
    static bool is_unit(const V& a) { return a == 1 || a == -1; }
    static V gcd(const V& a, const V& b) { return boost::multiprecision::gcd(a, b); }
    static V abs(const V& a) { return boost::multiprecision::abs(a); }
};

template <typename Ops>
std::size_t eliminate(const SparseMatrix& m)
{
    using V = typename Ops::V;
    using Row = std::vector<std::pair<std::uint32_t, V>>;
    const std::size_t nrows = m.rows, ncols = m.cols;

    std::vector<Row> rows(nrows);
    std::vector<std::vector<std::uint32_t>> colrows(ncols);
    std::vector<std::uint32_t> count(ncols, 0);
    for (std::size_t i = 0; i < nrows; ++i) {
        rows[i].reserve(m.data[i].size());
        for (const auto& [j, v] : m.data[i]) {
            rows[i].emplace_back(j, Ops::from(v));
            colrows[j].push_back(std::uint32_t(i));
            ++count[j];
        }
    }
    std::vector<char> active(nrows, 1), done(ncols, 0);
    std::set<std::pair<std::uint32_t, std::uint32_t>> queue;
    for (std::size_t j = 0; j < ncols; ++j)
        if (count[j] > 0) queue.emplace(count[j], std::uint32_t(j));

    auto change_count = [&](std::uint32_t j, long delta) {
        if (!done[j] && count[j] > 0) queue.erase({count[j], j});
        count[j] = std::uint32_t(long(count[j]) + delta);
        if (!done[j] && count[j] > 0) queue.emplace(count[j], j);
    };
    auto entry_of = [&](const Row& r, std::uint32_t j) -> const V* {
        auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const std::pair<std::uint32_t, V>& e, std::uint32_t c) { return e.first < c; });
        if (it == r.end() || it->first != j) return nullptr;
        return &it->second;
    };

    std::vector<char> seen(nrows, 0);
    std::size_t rank = 0;
    while (!queue.empty()) {
        const std::uint32_t c = queue.begin()->second;
        queue.erase(queue.begin());
        done[c] = 1;

        std::vector<std::uint32_t> cand;
        for (std::uint32_t i : colrows[c]) {
            if (!active[i] || seen[i] || !entry_of(rows[i], c)) continue;
            seen[i] = 1;
            cand.push_back(i);
        }
        for (auto i : cand) seen[i] = 0;
        colrows[c].clear();
        if (cand.empty()) continue;
        std::sort(cand.begin(), cand.end());

        std::uint32_t piv = cand[0];
        bool piv_unit = Ops::is_unit(*entry_of(rows[piv], c));
        for (auto i : cand) {
            bool unit = Ops::is_unit(*entry_of(rows[i], c));
            if ((unit && !piv_unit) || (unit == piv_unit && rows[i].size() < rows[piv].size())) {
                piv = i;
                piv_unit = unit;
            }
        }
        active[piv] = 0;
        ++rank;
        for (const auto& e : rows[piv])
            if (e.first != c) change_count(e.first, -1);
        const Row& prow = rows[piv];
        const V pv = *entry_of(prow, c);

        for (auto i : cand) {
            if (i == piv) continue;
            const V a = *entry_of(rows[i], c);
            // new row = s*row_i - t*prow, with the entry at c cancelling
            V s, t;
            if (Ops::is_unit(pv)) {
                s = Ops::from(1);
                t = Ops::mul(a, pv);
            } else {
                V g = Ops::gcd(Ops::abs(a), Ops::abs(pv));
                s = pv / g;
                t = a / g;
            }
            Row out;
            out.reserve(rows[i].size() + prow.size());
            const Row& old = rows[i];
            std::size_t x = 0, y = 0;
            while (x < old.size() || y < prow.size()) {
                if (y == prow.size() || (x < old.size() && old[x].first < prow[y].first)) {
                    out.emplace_back(old[x].first, Ops::mul(s, old[x].second));
                    ++x;
                } else if (x == old.size() || prow[y].first < old[x].first) {
                    out.emplace_back(prow[y].first, Ops::neg(Ops::mul(t, prow[y].second)));
                    change_count(prow[y].first, +1);
                    colrows[prow[y].first].push_back(i);
                    ++y;
                } else {
                    V v = Ops::sub(Ops::mul(s, old[x].second), Ops::mul(t, prow[y].second));
                    if (v != 0)
                        out.emplace_back(old[x].first, v);
                    else if (old[x].first != c)
                        change_count(old[x].first, -1);
                    ++x;
                    ++y;
                }
            }
            if (!Ops::is_unit(s)) {
                V g = 0;
                for (const auto& e : out) {
                    g = Ops::gcd(g, Ops::abs(e.second));
                    if (Ops::is_unit(g)) break;
                }
                if (g != 0 && !Ops::is_unit(g))
                    for (auto& e : out) e.second /= g;
            }
            rows[i].swap(out);
        }
    }
    return rank;
}

}  // namespace

std::size_t sparse_rank(const SparseMatrix& m)
{
    try {
        return eliminate<Checked64>(m);
    } catch (const Overflow&) {
        return eliminate<Big>(m);
    }
}

// ---- sparse rational vectors ---------------------------------------------

SparseVec sparse_axpy(const SparseVec& x, const Rat& a, const SparseVec& y)
{
    if (a == 0) return x;
    SparseVec out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, a * y[j].second);
            ++j;
        } else {
            Rat v = x[i].second + a * y[j].second;
            if (v != 0) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec sparse_scale(const Rat& a, const SparseVec& x)
{
    if (a == 0) return {};
    SparseVec out(x);
    for (auto& e : out) e.second *= a;
    return out;
}

SparseVec sparse_from_dense(const RatVector& v)
{
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out.emplace_back(i, v[i]);
    return out;
}

RatVector sparse_to_dense(const SparseVec& v, std::size_t n)
{
    RatVector out(n);
    for (const auto& [i, x] : v) {
        require(i < n, "RangeError", "sparse index out of range");
        out[i] = x;
    }
    return out;
}

std::vector<SparseVec> sparse_columns(const SparseMatrix& m)
{
    std::vector<SparseVec> cols(m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.data[i]) cols[j].emplace_back(i, Rat(v));
    return cols;
}

SparseVec sparse_apply(const SparseMatrix& m, const SparseVec& x)
{
    RatVector dense_x(m.cols);
    for (const auto& [j, v] : x) dense_x[j] = v;
    SparseVec out;
    for (std::size_t i = 0; i < m.rows; ++i) {
        Rat s = 0;
        for (const auto& [j, v] : m.data[i])
            if (dense_x[j] != 0) s += Rat(v) * dense_x[j];
        if (s != 0) out.emplace_back(i, std::move(s));
    }
    return out;
}

IncrementalEchelon::Reduced IncrementalEchelon::reduce(SparseVec v, SparseVec label) const
{
    while (!v.empty()) {
        auto it = pivot_of_.find(v.front().first);
        if (it == pivot_of_.end()) break;
        const Reduced& p = rows_[it->second];
        Rat f = -v.front().second / p.vec.front().second;
        v = sparse_axpy(v, f, p.vec);
        if (!p.label.empty()) label = sparse_axpy(label, f, p.label);
    }
    return {std::move(v), std::move(label)};
}

bool IncrementalEchelon::insert(SparseVec v, SparseVec label)
{
    Reduced r = reduce(std::move(v), std::move(label));
    if (r.vec.empty()) return false;
    pivot_of_[r.vec.front().first] = rows_.size();
    rows_.push_back(std::move(r));
    return true;
}

std::vector<SparseVec> sparse_kernel(const SparseMatrix& m)
{
    std::vector<SparseVec> cols = sparse_columns(m);
    IncrementalEchelon ech;
    std::vector<SparseVec> kernel;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        SparseVec label{{j, Rat(1)}};
        auto r = ech.reduce(std::move(cols[j]), std::move(label));
        if (r.vec.empty())
            kernel.push_back(std::move(r.label));
        else
            ech.insert(std::move(r.vec), std::move(r.label));
    }
    return kernel;
}

}  // namespace ahodge
