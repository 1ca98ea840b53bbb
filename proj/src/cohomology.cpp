#include "ahodge/cohomology.hpp"

#include <algorithm>
#include <sstream>

#include "ahodge/monodromy.hpp"
#include "ahodge/parallel.hpp"

namespace ahodge {

std::size_t LocalSystem::rank() const
{
    return binomial(fiber_dim(), std::size_t(r));
}

std::string LocalSystem::name() const
{
    const std::string deg = std::to_string(r);
    switch (kind) {
    case SystemKind::WedgeLambdaCheck: return "wedge^" + deg + " Lambda-check";
    case SystemKind::WedgeLambda: return "wedge^" + deg + " Lambda";
    case SystemKind::WedgeAff: return "wedge^" + deg + " Aff";
    }
    return "?";
}

IntMatrix fiber_transport(const IntegralAffineComplex& c, const LocalSystem& s, int v, int v2, int sigma)
{
    require(s.r >= 0 && std::size_t(s.r) <= s.fiber_dim(), "RangeError", "wedge degree out of range");
    if (s.r == 0) return IntMatrix::identity(1);
    const IntMatrix l = c.parallel_transport(v, v2, sigma);
    IntMatrix base;
    switch (s.kind) {
    case SystemKind::WedgeLambda: base = l; break;
    case SystemKind::WedgeLambdaCheck: base = unimodular_inverse(l).transpose(); break;
    case SystemKind::WedgeAff: {
        const IntMatrix lc = unimodular_inverse(l).transpose();
        const IntVector t = c.psi(v, sigma, v2);
        const std::size_t n = std::size_t(s.n);
        base = IntMatrix(n + 1, n + 1);
        base(0, 0) = 1;
        for (std::size_t j = 0; j < n; ++j) base(0, j + 1) = t[j];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) base(i + 1, j + 1) = lc(i, j);
        break;
    }
    }
    return s.r == 1 ? base : induced_wedge_map(base, std::size_t(s.r));
}

const IntMatrix& TransportCache::operator()(int v, int v2, int sigma)
{
    auto key = std::make_tuple(v, v2, sigma);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, fiber_transport(c_, s_, v, v2, sigma)).first->second;
}

std::vector<IntMatrix> monodromy_generators(const IntegralAffineComplex& c, TransportCache& t, int tau1, int tau2)
{
    require(c.is_face(tau1, tau2), "RangeError", "flag pair must be nested");
    std::vector<IntMatrix> out;
    const int b = c.base_vertex(tau1);
    const auto& gs = c.cell(tau1).vertices;
    if (gs.size() < 2) return out;
    for (int rho : c.star(tau2)) {
        if (c.cell(rho).dim != c.n - 1) continue;
        const auto& mx = c.maximal_over(rho);
        if (mx.size() != 2) continue;
        const int sp = mx[0], sm = mx[1];
        for (int g : gs)
            for (int g2 : gs) {
                if (g == g2) continue;
                // b -> g' through sigma+, back to g through sigma-, then to b through sigma+
                IntMatrix loop = t(g, b, sp) * (t(g2, g, sm) * t(b, g2, sp));
                out.push_back(std::move(loop));
            }
    }
    return out;
}

IntMatrix invariant_sections(const IntegralAffineComplex& c, TransportCache& t, int tau1, int tau2)
{
    const std::size_t k = t.system().rank();
    if (c.cell(tau2).dim == c.n) return IntMatrix::identity(k);
    std::vector<IntVector> rows;
    const IntMatrix id = IntMatrix::identity(k);
    for (const auto& g : monodromy_generators(c, t, tau1, tau2)) {
        IntMatrix m = g - id;
        for (std::size_t i = 0; i < k; ++i) {
            IntVector row = m.row(i);
            if (!is_zero(row)) rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return IntMatrix::identity(k);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return integer_kernel(IntMatrix::from_rows(rows, k));
}

std::vector<std::vector<Flag>> enumerate_flags(const IntegralAffineComplex& c)
{
    std::map<int, std::vector<int>> above;
    for (const auto& cell : c.cells)
        for (int s : c.star(cell.id))
            if (s != cell.id) above[cell.id].push_back(s);
    for (auto& [id, v] : above) std::sort(v.begin(), v.end());
    std::vector<std::vector<Flag>> out(std::size_t(c.n) + 1);
    Flag cur;
    std::function<void(int)> extend = [&](int id) {
        cur.push_back(id);
        out[cur.size() - 1].push_back(cur);
        auto it = above.find(id);
        if (it != above.end())
            for (int s : it->second) extend(s);
        cur.pop_back();
    };
    for (const auto& cell : c.cells) extend(cell.id);
    for (auto& fl : out) std::sort(fl.begin(), fl.end());
    return out;
}

std::size_t CechComplex::flag_index(int q, const Flag& f) const
{
    const auto& fl = flags.at(std::size_t(q));
    auto it = std::lower_bound(fl.begin(), fl.end(), f);
    require(it != fl.end() && *it == f, "RangeError", "flag not in the complex");
    return std::size_t(it - fl.begin());
}

RatVector CechComplex::block_vector(int q, std::size_t i, const RatVector& cochain) const
{
    const Flag& f = flags[std::size_t(q)][i];
    const IntMatrix& b = basis(f);
    RatVector out(b.cols());
    const std::size_t o = offset[std::size_t(q)][i];
    for (std::size_t a = 0; a < b.rows(); ++a) {
        if (cochain[o + a] == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) out[j] += cochain[o + a] * Rat(b(a, j));
    }
    return out;
}

namespace {

/// Column j: coordinates in `target` of map * (row j of source).
IntMatrix block_in(const IntMatrix& target, const IntMatrix& map, const IntMatrix& source, const std::string& where)
{
    IntMatrix out(target.rows(), source.rows());
    for (std::size_t j = 0; j < source.rows(); ++j) {
        IntVector x = map * source.row(j);
        auto y = echelon_coordinates(target, x);
        require(bool(y), "TransportAmbiguity", "section leaves the invariant lattice " + where);
        for (std::size_t i = 0; i < target.rows(); ++i) out(i, j) = (*y)[i];
    }
    return out;
}

std::string flag_string(const Flag& f)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << ")";
    return os.str();
}

std::int64_t small(const Int& x)
{
    require(x >= INT64_MIN && x <= INT64_MAX, "Overflow", "differential entry exceeds int64");
    return x.convert_to<std::int64_t>();
}

}  // namespace

CechComplex cech_complex(const IntegralAffineComplex& c, const LocalSystem& s0)
{
    LocalSystem s = s0;
    s.n = c.n;
    CechComplex cc;
    cc.sys = s;
    cc.flags = enumerate_flags(c);
    TransportCache tc(c, s);
    const std::size_t k = s.rank();

    auto inv = [&](int a, int b) -> const IntMatrix& {
        auto key = std::make_pair(a, b);
        auto it = cc.invariants.find(key);
        if (it != cc.invariants.end()) return it->second;
        return cc.invariants.emplace(key, invariant_sections(c, tc, a, b)).first->second;
    };

    const int top = cc.top_degree();
    cc.offset.resize(std::size_t(top) + 1);
    cc.dims.assign(std::size_t(top) + 1, 0);
    for (int q = 0; q <= top; ++q)
        for (const auto& f : cc.flags[std::size_t(q)]) {
            cc.offset[std::size_t(q)].push_back(cc.dims[std::size_t(q)]);
            cc.dims[std::size_t(q)] += inv(f.front(), f.back()).rows();
        }

    std::map<std::tuple<int, int, int>, IntMatrix> lead_cache, tail_cache;
    auto lead_block = [&](int s0, int s1, int last) -> const IntMatrix& {
        auto key = std::make_tuple(s0, s1, last);
        auto it = lead_cache.find(key);
        if (it != lead_cache.end()) return it->second;
        const IntMatrix& tgt = inv(s0, last);
        const IntMatrix& src = inv(s1, last);
        const int b0 = c.base_vertex(s0), b1 = c.base_vertex(s1);
        const auto& mx = c.maximal_over(last);
        const std::string where = "along " + flag_string({s0, s1, last});
        IntMatrix blk = block_in(tgt, tc(b1, b0, mx.front()), src, where);
        for (std::size_t i = 1; i < mx.size(); ++i)
            require(block_in(tgt, tc(b1, b0, mx[i]), src, where) == blk, "TransportAmbiguity",
                    "transport " + where + " depends on the maximal cell (" + std::to_string(mx.front()) + " vs " +
                        std::to_string(mx[i]) + ")");
        return lead_cache.emplace(key, std::move(blk)).first->second;
    };
    auto tail_block = [&](int s0, int prev, int last) -> const IntMatrix& {
        auto key = std::make_tuple(s0, prev, last);
        auto it = tail_cache.find(key);
        if (it != tail_cache.end()) return it->second;
        IntMatrix blk = block_in(inv(s0, last), IntMatrix::identity(k), inv(s0, prev),
                                 "including " + flag_string({s0, prev}) + " into " + flag_string({s0, last}));
        return tail_cache.emplace(key, std::move(blk)).first->second;
    };

    for (int q = 0; q < top; ++q) {
        SparseMatrix d(cc.dims[std::size_t(q) + 1], cc.dims[std::size_t(q)]);
        const auto& tflags = cc.flags[std::size_t(q) + 1];
        for (std::size_t ti = 0; ti < tflags.size(); ++ti) {
            const Flag& f = tflags[ti];
            const std::size_t row0 = cc.offset[std::size_t(q) + 1][ti];
            for (std::size_t i = 0; i < f.size(); ++i) {
                Flag g = f;
                g.erase(g.begin() + long(i));
                const std::size_t si = cc.flag_index(q, g);
                const std::size_t col0 = cc.offset[std::size_t(q)][si];
                const std::int64_t sign = (i % 2 == 0) ? 1 : -1;
                if (i == 0) {
                    const IntMatrix& blk = lead_block(f[0], f[1], f.back());
                    for (std::size_t a = 0; a < blk.rows(); ++a)
                        for (std::size_t b = 0; b < blk.cols(); ++b)
                            if (blk(a, b) != 0) d.add(row0 + a, col0 + b, sign * small(blk(a, b)));
                } else if (i + 1 == f.size()) {
                    const IntMatrix& blk = tail_block(f[0], f[f.size() - 2], f.back());
                    for (std::size_t a = 0; a < blk.rows(); ++a)
                        for (std::size_t b = 0; b < blk.cols(); ++b)
                            if (blk(a, b) != 0) d.add(row0 + a, col0 + b, sign * small(blk(a, b)));
                } else {
                    const std::size_t kk = inv(f.front(), f.back()).rows();
                    for (std::size_t a = 0; a < kk; ++a) d.add(row0 + a, col0 + a, sign);
                }
            }
        }
        d.normalize();
        cc.d.push_back(std::move(d));
    }
    for (int q = 0; q + 1 < top; ++q)
        require(multiply(cc.d[std::size_t(q) + 1], cc.d[std::size_t(q)]).is_zero(), "InternalError",
                "Čech differential does not square to zero in degree " + std::to_string(q));
    return cc;
}

CechComplex cech_aff_complex(const IntegralAffineComplex& c, int r)
{
    return cech_complex(c, LocalSystem{SystemKind::WedgeAff, r, c.n});
}

std::vector<long> betti_numbers(const CechComplex& cc)
{
    const int top = cc.top_degree();
    std::vector<long> ranks(std::size_t(top) + 1, 0);
    for (int q = 0; q < top; ++q) ranks[std::size_t(q)] = long(sparse_rank(cc.d[std::size_t(q)]));
    std::vector<long> out;
    for (int q = 0; q <= top; ++q) {
        long b = long(cc.dims[std::size_t(q)]) - ranks[std::size_t(q)];
        if (q > 0) b -= ranks[std::size_t(q) - 1];
        out.push_back(b);
    }
    return out;
}

RatVector CohomologyGroup::coordinates(const SparseVec& cocycle) const
{
    auto red = echelon.reduce(cocycle, {});
    require(red.vec.empty(), "NotClosed", "cochain is not a cocycle of this degree");
    RatVector out(representatives.size());
    for (const auto& [i, x] : red.label) out[i] = -x;
    return out;
}

CohomologyGroup cohomology_group(const CechComplex& cc, int q)
{
    require(q >= 0 && q <= cc.top_degree(), "RangeError", "cohomology degree out of range");
    CohomologyGroup g;
    g.q = q;
    g.ambient = cc.dims[std::size_t(q)];
    if (q > 0)
        for (auto& col : sparse_columns(cc.d[std::size_t(q) - 1])) g.echelon.insert(std::move(col));
    std::vector<SparseVec> kernel;
    if (q < cc.top_degree()) {
        kernel = sparse_kernel(cc.d[std::size_t(q)]);
    } else {
        for (std::size_t i = 0; i < g.ambient; ++i) kernel.push_back({{i, Rat(1)}});
    }
    for (auto& z : kernel) {
        SparseVec label{{g.representatives.size(), Rat(1)}};
        if (g.echelon.insert(z, label)) g.representatives.push_back(std::move(z));
    }
    return g;
}

nlohmann::json HodgeDiamond::to_json() const
{
    nlohmann::json j;
    j["hodge"] = h;
    j["model"] = model;
    j["poincare_symmetric"] = poincare_symmetric;
    nlohmann::json betti = nlohmann::json::object();
    for (int p = 0; p <= n; ++p) {
        nlohmann::json col = nlohmann::json::array();
        for (int q = 0; q <= n; ++q) col.push_back(h[std::size_t(q)][std::size_t(p)]);
        betti["wedge^" + std::to_string(p) + " Lambda-check"] = col;
    }
    for (std::size_t p = 0; p < dual_betti.size(); ++p) betti["wedge^" + std::to_string(p) + " Lambda"] = dual_betti[p];
    j["betti"] = betti;
    j["warnings"] = warnings;
    return j;
}

HodgeDiamond hodge_numbers(const IntegralAffineComplex& c, const HodgeOptions& opt)
{
    HodgeDiamond out;
    out.n = c.n;
    const std::size_t n1 = std::size_t(c.n) + 1;
    out.h.assign(n1, std::vector<long>(n1, 0));

    out.model = "sheaf cohomology";
    for (const auto& cert : check_simple(c, opt.strict_simplicity)) {
        if (!cert.failure.empty()) {
            out.warnings.push_back("not simple at cell " + std::to_string(cert.tau) + ": " + cert.failure);
            out.model = "Čech model";
        } else if (!cert.bigtheorem_ok) {
            out.warnings.push_back("monodromy polytopes at cell " + std::to_string(cert.tau) +
                                   " do not form a standard simplex");
            out.model = "Čech model";
        }
    }

    const std::size_t systems = opt.with_lambda ? 2 * n1 : n1;
    std::vector<std::vector<long>> betti(systems);
    parallel_for(systems, opt.jobs, [&](std::size_t i) {
        const int p = int(i % n1);
        const SystemKind kind = i < n1 ? SystemKind::WedgeLambdaCheck : SystemKind::WedgeLambda;
        betti[i] = betti_numbers(cech_complex(c, LocalSystem{kind, p, c.n}));
    });
    for (std::size_t p = 0; p < n1; ++p)
        for (std::size_t q = 0; q < n1; ++q) out.h[q][p] = betti[p][q];
    if (opt.with_lambda)
        for (std::size_t p = 0; p < n1; ++p) out.dual_betti.push_back(betti[n1 + p]);

    for (std::size_t p = 0; p < n1; ++p)
        for (std::size_t q = 0; q < n1; ++q)
            if (out.h[q][p] != out.h[c.n - q][c.n - p]) out.poincare_symmetric = false;
    if (!out.poincare_symmetric)
        out.warnings.push_back("Poincaré-type symmetry h[q][p] = h[n-q][n-p] does not hold");
    return out;
}

}  // namespace ahodge
