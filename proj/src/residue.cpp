#include "ahodge/residue.hpp"

#include <functional>

#include "ahodge/monodromy.hpp"
#include "ahodge/parallel.hpp"

namespace ahodge {

nlohmann::json rational_json(const Rat& x)
{
    if (boost::multiprecision::denominator(x) == 1) {
        const Int num = boost::multiprecision::numerator(x);
        if (num >= INT64_MIN && num <= INT64_MAX) return num.convert_to<long long>();
    }
    return x.str();
}

nlohmann::json matrix_json(const RatMatrix& m)
{
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

namespace {

RatVector lattice_coordinates(const IntMatrix& basis, const RatVector& x, const std::string& what)
{
    // basis rows are in echelon form; x is rational, so scale to integers first
    Int den = 1;
    for (const auto& v : x) den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(v)));
    IntVector xi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xi[i] = boost::multiprecision::numerator(x[i] * Rat(den));
    auto y = echelon_coordinates(basis, xi);
    require(bool(y), "TransportAmbiguity", what + " is not a section of the invariant lattice");
    RatVector out(y->size());
    for (std::size_t i = 0; i < y->size(); ++i) out[i] = Rat((*y)[i]) / Rat(den);
    return out;
}

RatVector apply_int(const IntMatrix& m, const RatVector& x)
{
    RatVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0 && x[j] != 0) out[i] += Rat(m(i, j)) * x[j];
    return out;
}

RatVector sparse_apply_dense(const SparseMatrix& m, const RatVector& x)
{
    RatVector out(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.data[i])
            if (x[j] != 0) out[i] += Rat(v) * x[j];
    return out;
}

RatVector dense(const SparseVec& v, std::size_t n)
{
    return sparse_to_dense(v, n);
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b)
{
    RatMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

bool is_zero(const RatMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) return false;
    return true;
}

}  // namespace

RatVector radiance_cochain(const IntegralAffineComplex& c, const CechComplex& lambda)
{
    require(lambda.sys.kind == SystemKind::WedgeLambda && lambda.sys.r == 1, "RangeError",
            "radiance cochain lives in the Čech complex of Lambda");
    require(lambda.top_degree() >= 1, "RangeError", "complex has no 1-cochains");
    const auto& fl = lambda.flags[1];
    RatVector out(lambda.dims[1]);
    for (std::size_t i = 0; i < fl.size(); ++i) {
        const int t0 = fl[i][0], t1 = fl[i][1];
        IntVector v = c.psi(c.base_vertex(t0), c.reference_maximal(t1), c.base_vertex(t1));
        RatVector y = lattice_coordinates(lambda.basis(fl[i]), to_rat(v), "radiance vector");
        for (std::size_t a = 0; a < y.size(); ++a) out[lambda.offset[1][i] + a] = y[a];
    }
    if (lambda.top_degree() >= 2)
        require(is_zero(sparse_apply_dense(lambda.d[1], out)), "InternalError", "radiance cochain is not closed");
    return out;
}

RatVector cup_contract(const IntegralAffineComplex& c, const CechComplex& lambda, const RatVector& eta,
                       const CechComplex& src, int q, const RatVector& alpha, const CechComplex& dst)
{
    const int p = src.sys.r;
    require(p >= 1, "RangeError", "cup with contraction needs forms of degree at least one");
    require(dst.sys.r == p - 1 && q + 1 <= dst.top_degree(), "RangeError", "cup product target degree");
    const std::size_t n = std::size_t(c.n);
    TransportCache tc(c, src.sys);
    RatVector out(dst.dims[std::size_t(q) + 1]);
    const auto& targets = dst.flags[std::size_t(q) + 1];
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        const Flag& f = targets[ti];
        const std::size_t ei = lambda.flag_index(1, {f[0], f[1]});
        RatVector m = lambda.block_vector(1, ei, eta);
        if (is_zero(m)) continue;
        Flag tail(f.begin() + 1, f.end());
        const std::size_t ai = src.flag_index(q, tail);
        RatVector a = src.block_vector(q, ai, alpha);
        if (is_zero(a)) continue;
        const IntMatrix& t = tc(c.base_vertex(f[1]), c.base_vertex(f[0]), c.maximal_over(f.back()).front());
        RatVector moved = apply_int(t, a);
        // iota(m) with rational m: scale m to integers and divide afterwards
        Int den = 1;
        for (const auto& x : m) den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(x)));
        IntVector mi(n);
        for (std::size_t i = 0; i < n; ++i) mi[i] = boost::multiprecision::numerator(m[i] * Rat(den));
        RatVector contracted = apply_int(contraction_matrix(mi, n, std::size_t(p)), moved);
        for (auto& x : contracted) x /= Rat(den);
        RatVector y = lattice_coordinates(dst.basis(f), contracted, "cup product");
        for (std::size_t a2 = 0; a2 < y.size(); ++a2) out[dst.offset[std::size_t(q) + 1][ti] + a2] = y[a2];
    }
    return out;
}

HodgeModel build_hodge_model(const IntegralAffineComplex& c, unsigned jobs)
{
    HodgeModel m;
    m.n = c.n;
    const std::size_t n1 = std::size_t(c.n) + 1;
    m.forms.resize(n1);
    m.groups.resize(n1);
    parallel_for(n1 + 1, jobs, [&](std::size_t i) {
        if (i == n1) {
            m.lambda = cech_complex(c, LocalSystem{SystemKind::WedgeLambda, 1, c.n});
            return;
        }
        m.forms[i] = cech_complex(c, LocalSystem{SystemKind::WedgeLambdaCheck, int(i), c.n});
        for (int q = 0; q <= m.forms[i].top_degree(); ++q) m.groups[i].push_back(cohomology_group(m.forms[i], q));
    });
    m.block_offset.assign(n1, std::vector<std::size_t>(n1, 0));
    for (std::size_t p = 0; p < n1; ++p)
        for (std::size_t q = 0; q < n1; ++q) {
            m.block_offset[p][q] = m.total_dim;
            m.total_dim += m.groups[p][q].dim();
        }
    return m;
}

RatMatrix HodgeModel::cup_operator(const IntegralAffineComplex& c, const RatVector& eta) const
{
    RatMatrix out(total_dim, total_dim);
    for (int p = 1; p <= n; ++p)
        for (int q = 0; q < n; ++q) {
            const auto& g = groups[std::size_t(p)][std::size_t(q)];
            const auto& h = groups[std::size_t(p) - 1][std::size_t(q) + 1];
            for (std::size_t j = 0; j < g.dim(); ++j) {
                RatVector alpha = dense(g.representatives[j], g.ambient);
                RatVector z = cup_contract(c, lambda, eta, forms[std::size_t(p)], q, alpha, forms[std::size_t(p) - 1]);
                RatVector y = h.coordinates(sparse_from_dense(z));
                for (std::size_t i = 0; i < y.size(); ++i)
                    out(block_offset[std::size_t(p) - 1][std::size_t(q) + 1] + i,
                        block_offset[std::size_t(p)][std::size_t(q)] + j) = y[i];
            }
        }
    return out;
}

nlohmann::json HodgeModel::blocks_json() const
{
    nlohmann::json out = nlohmann::json::array();
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            out.push_back({{"p", p},
                           {"q", q},
                           {"offset", block_offset[std::size_t(p)][std::size_t(q)]},
                           {"dim", groups[std::size_t(p)][std::size_t(q)].dim()}});
    return out;
}

nlohmann::json ResidueOperator::to_json() const
{
    return {{"matrix", matrix_json(matrix)}, {"nilpotency", nilpotency}, {"blocks", blocks}, {"sign", kResidueSign}};
}

ResidueOperator residue_operator(const IntegralAffineComplex& c, const HodgeModel& m)
{
    ResidueOperator out;
    out.blocks = m.blocks_json();
    if (m.n < 1) {
        out.matrix = RatMatrix(m.total_dim, m.total_dim);
        out.nilpotency = 1;
        return out;
    }
    RatVector cb = radiance_cochain(c, m.lambda);
    for (auto& x : cb) x *= kResidueSign;
    out.matrix = m.cup_operator(c, cb);
    RatMatrix power = out.matrix;
    out.nilpotency = 1;
    while (!is_zero(power)) {
        require(out.nilpotency <= m.n + 1, "InternalError", "residue operator is not nilpotent");
        power = multiply(power, out.matrix);
        ++out.nilpotency;
    }
    return out;
}

nlohmann::json ModuliConnection::to_json() const
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& m : matrices) out.push_back(matrix_json(m));
    return out;
}

ModuliConnection moduli_connection(const IntegralAffineComplex& c, const HodgeModel& m)
{
    ModuliConnection out;
    if (m.n < 1) return out;
    CohomologyGroup h1 = cohomology_group(m.lambda, 1);
    for (const auto& rep : h1.representatives) out.matrices.push_back(m.cup_operator(c, dense(rep, h1.ambient)));
    return out;
}

std::vector<SeriesTerm> flat_section(const ModuliConnection& conn, const RatVector& alpha)
{
    std::vector<SeriesTerm> out;
    if (is_zero(alpha)) return out;
    out.push_back(SeriesTerm{{}, alpha});
    std::vector<SeriesTerm> layer{SeriesTerm{{}, alpha}};
    Rat factorial = 1;
    for (int k = 1; !layer.empty(); ++k) {
        require(k <= 64, "InternalError", "flat section series does not terminate");
        factorial *= k;
        std::vector<SeriesTerm> next;
        for (const auto& term : layer)
            for (std::size_t i = 0; i < conn.matrices.size(); ++i) {
                const RatMatrix& a = conn.matrices[i];
                RatVector v(a.rows());
                for (std::size_t r = 0; r < a.rows(); ++r)
                    for (std::size_t s = 0; s < a.cols(); ++s)
                        if (a(r, s) != 0 && term.coefficient[s] != 0) v[r] += a(r, s) * term.coefficient[s];
                if (is_zero(v)) continue;
                SeriesTerm t{term.indices, v};
                t.indices.push_back(int(i));
                next.push_back(t);
            }
        for (const auto& t : next) {
            SeriesTerm scaled = t;
            for (auto& x : scaled.coefficient) x /= factorial;
            out.push_back(std::move(scaled));
        }
        layer = std::move(next);
    }
    return out;
}

nlohmann::json IntegralCohomology::to_json() const
{
    nlohmann::json t = nlohmann::json::array();
    for (const auto& fac : torsion) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : fac) row.push_back(x.str());
        t.push_back(row);
    }
    return {{"free_rank", free_rank}, {"torsion", t}};
}

IntegralCohomology integral_cohomology(const CechComplex& cc)
{
    for (std::size_t d : cc.dims)
        require(d <= 4000, "RangeError", "integral cohomology uses dense Smith forms and is limited to small complexes");
    IntegralCohomology out;
    const int top = cc.top_degree();
    std::vector<SmithForm> snf;
    std::vector<long> ranks;
    for (int q = 0; q < top; ++q) {
        snf.push_back(smith_normal_form(cc.d[std::size_t(q)].to_dense()));
        long r = 0;
        for (const auto& f : snf.back().invariant_factors())
            if (f != 0) ++r;
        ranks.push_back(r);
    }
    for (int q = 0; q <= top; ++q) {
        long b = long(cc.dims[std::size_t(q)]);
        if (q < top) b -= ranks[std::size_t(q)];
        if (q > 0) b -= ranks[std::size_t(q) - 1];
        out.free_rank.push_back(b);
        std::vector<Int> tors;
        if (q > 0)
            for (const auto& f : snf[std::size_t(q) - 1].invariant_factors())
                if (f > 1) tors.push_back(f);
        out.torsion.push_back(tors);
    }
    return out;
}

nlohmann::json LongExactSequenceCheck::to_json() const
{
    return {{"r", r}, {"sub", sub}, {"aff", aff}, {"quotient", quotient}, {"connecting_rank", connecting_rank},
            {"exact", exact}};
}

LongExactSequenceCheck aff_long_exact_sequence(const IntegralAffineComplex& c, const HodgeModel& m, int r)
{
    require(r >= 1 && r <= c.n + 1, "RangeError", "Aff degree out of range");
    LongExactSequenceCheck out;
    out.r = r;
    const std::size_t n1 = std::size_t(c.n) + 1;
    out.aff = betti_numbers(cech_aff_complex(c, r));
    for (std::size_t q = 0; q < n1; ++q) {
        out.sub.push_back(long(m.groups[std::size_t(r) - 1][q].dim()));
        out.quotient.push_back(r <= c.n ? long(m.groups[std::size_t(r)][q].dim()) : 0L);
    }
    RatMatrix cup;
    if (r <= c.n) cup = m.cup_operator(c, radiance_cochain(c, m.lambda));
    for (std::size_t q = 0; q < n1; ++q) {
        long rk = 0;
        if (r <= c.n && q + 1 < n1) {
            const std::size_t rows = m.groups[std::size_t(r) - 1][q + 1].dim(), cols = m.groups[std::size_t(r)][q].dim();
            RatMatrix blk(rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    blk(i, j) = cup(m.block_offset[std::size_t(r) - 1][q + 1] + i, m.block_offset[std::size_t(r)][q] + j);
            rk = long(rank_q(blk));
        }
        out.connecting_rank.push_back(rk);
    }
    out.exact = true;
    for (std::size_t q = 0; q < n1; ++q) {
        long expect = out.sub[q] + out.quotient[q] - out.connecting_rank[q];
        if (q > 0) expect -= out.connecting_rank[q - 1];
        if (expect != out.aff[q]) out.exact = false;
    }
    return out;
}

}  // namespace ahodge
