#include "ahodge/local_models.hpp"

#include <algorithm>
#include <map>

#include "ahodge/parallel.hpp"

namespace ahodge {

namespace {

long long to_ll(const Int& x) { return x.convert_to<long long>(); }

nlohmann::json int_vector_json(const IntVector& v)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : v) out.push_back(to_ll(x));
    return out;
}

/// Independent rows spanning the same space, kept in input order.
std::vector<RatVector> independent_rows(const std::vector<RatVector>& rows, std::size_t cols)
{
    std::vector<RatVector> out;
    for (const auto& r : rows) {
        out.push_back(r);
        if (rank_q(RatMatrix::from_rows(out, cols)) < out.size()) out.pop_back();
    }
    return out;
}

bool in_span(const std::vector<RatVector>& basis, const RatVector& x)
{
    if (is_zero(x)) return true;
    if (basis.empty()) return false;
    std::vector<RatVector> rows = basis;
    rows.push_back(x);
    return rank_q(RatMatrix::from_rows(rows)) == basis.size();
}

/// Rational basis of {n : <g, n> = 0 for all g in gs} inside Q^dim.
std::vector<RatVector> annihilator(const std::vector<IntVector>& gs, std::size_t dim)
{
    std::vector<RatVector> out;
    if (gs.empty()) {
        for (std::size_t i = 0; i < dim; ++i) {
            RatVector e(dim);
            e[i] = 1;
            out.push_back(e);
        }
        return out;
    }
    IntMatrix ker = integer_kernel(IntMatrix::from_rows(gs));
    for (std::size_t i = 0; i < ker.rows(); ++i) out.push_back(to_rat(ker.row(i)));
    return out;
}

/// Basis of wedge^r of span(vs) (vs independent) in wedge^r Q^n coordinates.
std::vector<RatVector> wedge_power(const std::vector<RatVector>& vs, std::size_t n, int r)
{
    std::vector<RatVector> out;
    if (r < 0 || std::size_t(r) > vs.size()) return out;
    WedgeBasis subsets(vs.size(), std::size_t(r));
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        RatVector acc{Rat(1)};
        std::size_t deg = 0;
        for (int idx : subsets.tuple(s)) {
            acc = wedge_product(acc, deg, vs[std::size_t(idx)], 1, n);
            ++deg;
        }
        out.push_back(acc);
    }
    return out;
}

/// Subspace wedge^r W (abs) or wedge^r (W / rho) (rel) for W spanned by ws.
GradedPiece wedge_piece(const MonoidData& m, const IntVector& p, const std::vector<RatVector>& ws, int r, bool rel)
{
    GradedPiece g;
    g.degree = p;
    g.kind = rel ? PieceKind::OmegaRel : PieceKind::OmegaAbs;
    g.r = r;
    const std::size_t n = m.rank();
    if (!rel) {
        g.ambient_dim = binomial(n, std::size_t(r));
        g.basis = wedge_power(independent_rows(ws, n), n, r);
        return g;
    }
    const std::size_t drop = m.e_index(0);
    std::vector<RatVector> proj;
    for (const auto& x : ws) {
        RatVector y;
        for (std::size_t i = 0; i < n; ++i)
            if (i != drop) y.push_back(x[i]);
        proj.push_back(y);
    }
    g.ambient_dim = binomial(n - 1, std::size_t(r));
    g.basis = wedge_power(independent_rows(proj, n - 1), n - 1, r);
    return g;
}

GradedPiece zero_piece(const IntVector& p, PieceKind kind, int r, std::size_t ambient)
{
    GradedPiece g;
    g.degree = p;
    g.kind = kind;
    g.r = r;
    g.ambient_dim = ambient;
    return g;
}

std::size_t omega_ambient(const MonoidData& m, int r, bool rel)
{
    return binomial(rel ? m.rank() - 1 : m.rank(), std::size_t(r));
}

bool is_subset(const FaceSet& a, const FaceSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

void require_face(const MonoidData& m, const FaceSet& f)
{
    for (const auto& g : faces_of_tau(m))
        if (g == f) return;
    fail("NotAFace", "vertex set is not a face of tau");
}

/// Hilbert basis of P by enumeration in the box around the zonotope of the dual rays.
std::vector<IntVector> compute_hilbert_basis(const MonoidData& m)
{
    const std::size_t n = m.rank();
    Cone k(n, m.generators());
    Cone dual = dual_cone(k);
    std::vector<long long> bound(n, 0);
    for (const auto& r : dual.generators())
        for (std::size_t c = 0; c < n; ++c) bound[c] += std::llabs(to_ll(r[c]));
    double volume = 1;
    for (auto b : bound) volume *= double(2 * b + 1);
    if (volume > 2e6) return {};

    std::vector<IntVector> candidates;
    IntVector x(n);
    std::vector<long long> cur(n);
    for (std::size_t c = 0; c < n; ++c) cur[c] = -bound[c];
    while (true) {
        for (std::size_t c = 0; c < n; ++c) x[c] = cur[c];
        if (!is_zero(x) && m.in_p(x)) candidates.push_back(x);
        std::size_t c = 0;
        while (c < n && cur[c] == bound[c]) {
            cur[c] = -bound[c];
            ++c;
        }
        if (c == n) break;
        ++cur[c];
    }
    std::vector<IntVector> basis;
    for (const auto& p : candidates) {
        bool reducible = false;
        for (const auto& a : candidates) {
            if (a == p) continue;
            IntVector b = sub(p, a);
            if (!is_zero(b) && m.in_p(b)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(p);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

std::vector<std::array<std::size_t, 4>> compute_quadrics(const std::vector<IntVector>& h)
{
    std::map<IntVector, std::vector<std::pair<std::size_t, std::size_t>>> by_sum;
    for (std::size_t a = 0; a < h.size(); ++a)
        for (std::size_t b = a; b < h.size(); ++b) by_sum[add(h[a], h[b])].push_back({a, b});
    std::vector<std::array<std::size_t, 4>> out;
    for (const auto& [sum, pairs] : by_sum)
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j)
                out.push_back({pairs[i].first, pairs[i].second, pairs[j].first, pairs[j].second});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

// ---- MonoidData ------------------------------------------------------------------

std::vector<IntVector> MonoidData::generators() const
{
    std::vector<IntVector> out = v;
    out.insert(out.end(), w.begin(), w.end());
    return out;
}

IntVector MonoidData::lift(const IntVector& m, std::size_t i) const
{
    IntVector x = m;
    x.resize(rank());
    x[e_index(i)] = 1;
    return x;
}

bool MonoidData::in_p(const IntVector& p) const
{
    for (const auto& g : v)
        if (dot(g, p) < 0) return false;
    for (const auto& g : w)
        if (dot(g, p) < 0) return false;
    return true;
}

bool MonoidData::in_thickening_ideal(const IntVector& p, int k) const
{
    if (!in_p(p)) return false;
    for (const auto& g : v)
        if (dot(g, p) < k + 1) return false;
    return true;
}

bool MonoidData::in_shifted_monoid(const IntVector& p, int k) const
{
    return in_p(sub(p, scale(Int(k + 1), rho)));
}

bool MonoidData::gorenstein() const
{
    for (const auto& g : generators())
        if (dot(rho_k, g) != 1) return false;
    return true;
}

bool MonoidData::rho_interior_to_f() const
{
    for (const auto& g : w)
        if (dot(rho, g) != 0) return false;
    for (const auto& g : v)
        if (dot(rho, g) <= 0) return false;
    return true;
}

nlohmann::json MonoidData::to_json() const
{
    nlohmann::json vs = nlohmann::json::array(), ws = nlohmann::json::array(), hb = nlohmann::json::array();
    for (const auto& g : v) vs.push_back(int_vector_json(g));
    for (const auto& g : w) ws.push_back(int_vector_json(g));
    for (const auto& h : hilbert_basis) hb.push_back(int_vector_json(h));
    nlohmann::json quad = nlohmann::json::array();
    for (const auto& qd : quadrics) quad.push_back({qd[0], qd[1], qd[2], qd[3]});
    return {{"rank", rank()},
            {"q", q},
            {"s", v.size()},
            {"t", w.size()},
            {"v", vs},
            {"w", ws},
            {"rho", int_vector_json(rho)},
            {"rho_K", int_vector_json(rho_k)},
            {"gorenstein", gorenstein()},
            {"hilbert_basis", hb},
            {"quadrics", quad}};
}

MonoidData build_monoid(const LatticePolytope& tau, const std::vector<LatticePolytope>& deltas)
{
    require(tau.dim() >= 0 && tau.full_dimensional(), "DegeneratePolytope", "tau must be full-dimensional in M'");
    MonoidData m;
    m.mprime_rank = tau.ambient_dim();
    m.q = deltas.size();
    m.tau = tau;
    m.deltas = deltas;
    for (const auto& d : deltas)
        require(d.ambient_dim() == m.mprime_rank, "DegeneratePolytope", "Delta_i must live in M'");
    for (const auto& x : tau.vertices()) m.v.push_back(m.lift(x, 0));
    for (std::size_t i = 0; i < deltas.size(); ++i)
        for (const auto& x : deltas[i].vertices()) {
            m.w.push_back(m.lift(x, i + 1));
            m.w_summand.push_back(i + 1);
        }
    m.rho = IntVector(m.rank());
    m.rho[m.e_index(0)] = 1;
    m.rho_k = IntVector(m.rank());
    for (std::size_t i = 0; i <= m.q; ++i) m.rho_k[m.e_index(i)] = 1;
    m.hilbert_basis = compute_hilbert_basis(m);
    m.quadrics = compute_quadrics(m.hilbert_basis);
    return m;
}

std::string to_string(PieceKind k)
{
    switch (k) {
    case PieceKind::Theta: return "Theta";
    case PieceKind::ThetaRel: return "ThetaRel";
    case PieceKind::OmegaAbs: return "OmegaAbs";
    case PieceKind::OmegaRel: return "OmegaRel";
    }
    return "?";
}

bool GradedPiece::contains(const RatVector& x) const { return in_span(basis, x); }

// ---- log derivations -------------------------------------------------------------

namespace {

/// Index j with <w_j, p> = -1 and every other generator nonnegative on p.
std::optional<std::size_t> pole_divisor(const MonoidData& m, const IntVector& p)
{
    for (const auto& g : m.v)
        if (dot(g, p) < 0) return std::nullopt;
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < m.w.size(); ++j) {
        Int x = dot(m.w[j], p);
        if (x >= 0) continue;
        if (x != -1 || found) return std::nullopt;
        found = j;
    }
    return found;
}

GradedPiece theta_piece(const MonoidData& m, const IntVector& p, bool rel)
{
    GradedPiece g = zero_piece(p, rel ? PieceKind::ThetaRel : PieceKind::Theta, 1, m.rank());
    if (m.in_p(p)) {
        g.basis = rel ? annihilator({m.rho}, m.rank()) : annihilator({}, m.rank());
    } else if (auto j = pole_divisor(m, p)) {
        g.basis = {to_rat(m.w[*j])};
    }
    return g;
}

}  // namespace

GradedPiece theta_graded_piece(const MonoidData& m, const IntVector& p) { return theta_piece(m, p, false); }

GradedPiece theta_rel_graded_piece(const MonoidData& m, const IntVector& p)
{
    require(m.rho_interior_to_f(), "RhoNotInterior", "rho is not in the interior of the face F");
    return theta_piece(m, p, true);
}

GradedPiece theta_xk_graded_piece(const MonoidData& m, const IntVector& p, int k, bool rel)
{
    bool survives = false;
    for (const auto& g : m.v) {
        Int x = dot(g, p);
        if (x >= 0 && x <= k) survives = true;
    }
    if (!survives) return zero_piece(p, rel ? PieceKind::ThetaRel : PieceKind::Theta, 1, m.rank());
    return rel ? theta_rel_graded_piece(m, p) : theta_graded_piece(m, p);
}

// ---- log differentials -----------------------------------------------------------

GradedPiece omega_graded_piece(const MonoidData& m, const IntVector& p, int r, int k, bool rel)
{
    require(r >= 0 && k >= 0, "RangeError", "r and k must be nonnegative");
    if (!m.in_p(p) || m.in_thickening_ideal(p, k))
        return zero_piece(p, rel ? PieceKind::OmegaRel : PieceKind::OmegaAbs, r, omega_ambient(m, r, rel));
    std::vector<IntVector> walls;
    for (const auto& g : m.w)
        if (dot(g, p) == 0) walls.push_back(g);
    return wedge_piece(m, p, annihilator(walls, m.rank()), r, rel);
}

std::vector<FaceSet> faces_of_tau(const MonoidData& m)
{
    std::vector<FaceSet> out;
    for (int d = 0; d <= m.tau.dim(); ++d)
        for (const auto& f : m.tau.face_sets(d)) out.push_back(f);
    return out;
}

FaceSet delta_face(const MonoidData& m, const FaceSet& omega, std::size_t i)
{
    require(i >= 1 && i <= m.q, "RangeError", "summand index out of range");
    const LatticePolytope& delta = m.deltas[i - 1];
    // generators of the normal cone of omega: inner normals of the facets of tau containing omega
    std::vector<IntVector> normals;
    for (const auto& f : m.tau.facets())
        if (is_subset(omega, f.vertices)) normals.push_back(f.ambient_normal);
    FaceSet out;
    for (std::size_t a = 0; a < delta.vertices().size(); ++a) {
        bool minimal = true;
        for (const auto& n : normals) {
            Int here = dot(n, delta.vertices()[a]);
            for (const auto& other : delta.vertices())
                if (dot(n, other) < here) minimal = false;
        }
        if (minimal) out.push_back(a);
    }
    return out;
}

bool p_omega_set_member(const MonoidData& m, const FaceSet& omega, const FaceSet& omega_prime, const IntVector& p,
                        int k)
{
    require_face(m, omega);
    require_face(m, omega_prime);
    require(is_subset(omega, omega_prime), "NotAFace", "omega is not contained in omega'");
    for (std::size_t i = 1; i <= m.q; ++i)
        for (std::size_t a : delta_face(m, omega, i))
            if (dot(p, m.lift(m.deltas[i - 1].vertices()[a], i)) < 0) return false;
    for (std::size_t a : omega_prime)
        if (dot(p, m.lift(m.tau.vertices()[a], 0)) > k) return false;
    for (const auto& x : m.tau.vertices())
        if (dot(p, m.lift(x, 0)) < 0) return false;
    return true;
}

GradedPiece omega_face_graded_piece(const MonoidData& m, const FaceSet& omega, const IntVector& p, int r, int k,
                                    bool rel)
{
    return omega_face_graded_piece(m, omega, omega, p, r, k, rel);
}

GradedPiece omega_face_graded_piece(const MonoidData& m, const FaceSet& omega, const FaceSet& omega_prime,
                                    const IntVector& p, int r, int k, bool rel)
{
    require(r >= 0 && k >= 0, "RangeError", "r and k must be nonnegative");
    if (!p_omega_set_member(m, omega, omega_prime, p, k))
        return zero_piece(p, rel ? PieceKind::OmegaRel : PieceKind::OmegaAbs, r, omega_ambient(m, r, rel));
    std::vector<IntVector> walls;
    for (std::size_t i = 1; i <= m.q; ++i)
        for (std::size_t a : delta_face(m, omega, i)) {
            IntVector g = m.lift(m.deltas[i - 1].vertices()[a], i);
            if (dot(p, g) == 0) walls.push_back(g);
        }
    return wedge_piece(m, p, annihilator(walls, m.rank()), r, rel);
}

// ---- barycentric resolution ------------------------------------------------------

nlohmann::json ExactnessReport::to_json() const
{
    return {{"degree", int_vector_json(degree)},
            {"r", r},
            {"k", k},
            {"rel", rel},
            {"global_dim", global_dim},
            {"augmentation_rank", augmentation_rank},
            {"dims", dims},
            {"ranks", ranks},
            {"cohomology", cohomology},
            {"exact", exact}};
}

ExactnessReport barycentric_resolution_check(const MonoidData& m, int r, int k, const IntVector& p, bool rel)
{
    ExactnessReport rep;
    rep.degree = p;
    rep.r = r;
    rep.k = k;
    rep.rel = rel;
    const std::size_t amb = omega_ambient(m, r, rel);

    const std::vector<FaceSet> faces = faces_of_tau(m);
    std::vector<std::vector<std::vector<std::size_t>>> chains(1);
    for (std::size_t f = 0; f < faces.size(); ++f) chains[0].push_back({f});
    while (true) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& c : chains.back())
            for (std::size_t f = 0; f < faces.size(); ++f)
                if (faces[f] != faces[c.back()] && is_subset(faces[c.back()], faces[f])) {
                    auto d = c;
                    d.push_back(f);
                    next.push_back(d);
                }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        chains.push_back(next);
    }

    // per chain: basis of its degree-p piece and column offset
    std::vector<std::map<std::vector<std::size_t>, std::vector<RatVector>>> piece(chains.size());
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> offset(chains.size());
    for (std::size_t q = 0; q < chains.size(); ++q) {
        std::size_t off = 0;
        for (const auto& c : chains[q]) {
            auto b = omega_face_graded_piece(m, faces[c.front()], faces[c.back()], p, r, k, rel).basis;
            offset[q][c] = off;
            off += b.size();
            piece[q][c] = std::move(b);
        }
        rep.dims.push_back(long(off));
    }

    // target coordinates: the ambient space for every chain with a nonzero piece
    auto target_rows = [&](std::size_t q) {
        std::map<std::vector<std::size_t>, std::size_t> rows;
        std::size_t off = 0;
        for (const auto& c : chains[q])
            if (!piece[q][c].empty()) {
                rows[c] = off;
                off += amb;
            }
        return std::make_pair(rows, off);
    };

    for (std::size_t q = 0; q + 1 < chains.size(); ++q) {
        auto [rows, nrows] = target_rows(q + 1);
        RatMatrix d(nrows, std::size_t(rep.dims[q]));
        for (const auto& [c2, row0] : rows) {
            const auto& target = piece[q + 1].at(c2);
            for (std::size_t i = 0; i < c2.size(); ++i) {
                std::vector<std::size_t> c = c2;
                c.erase(c.begin() + long(i));
                const auto& src = piece[q].at(c);
                const std::size_t col0 = offset[q].at(c);
                const int sign = i % 2 == 0 ? 1 : -1;
                for (std::size_t a = 0; a < src.size(); ++a) {
                    require(in_span(target, src[a]), "InternalError", "face piece is not included in its refinement");
                    for (std::size_t e = 0; e < amb; ++e) d(row0 + e, col0 + a) += sign * src[a][e];
                }
            }
        }
        rep.ranks.push_back(long(rank_q(d)));
    }
    rep.ranks.push_back(0);

    // augmentation from the global piece
    const GradedPiece global = omega_graded_piece(m, p, r, k, rel);
    rep.global_dim = long(global.dim());
    auto [rows0, nrows0] = target_rows(0);
    RatMatrix eps(nrows0, global.dim());
    bool lands = true;
    for (const auto& [c, row0] : rows0) {
        for (std::size_t a = 0; a < global.dim(); ++a) {
            if (!in_span(piece[0].at(c), global.basis[a])) lands = false;
            for (std::size_t e = 0; e < amb; ++e) eps(row0 + e, a) = global.basis[a][e];
        }
    }
    rep.augmentation_rank = long(rank_q(eps));

    // d^0 o eps = 0, computed directly on the ambient representatives
    bool composes = true;
    if (chains.size() > 1) {
        for (std::size_t a = 0; a < global.dim() && composes; ++a)
            for (const auto& c2 : chains[1]) {
                if (piece[1].at(c2).empty()) continue;
                RatVector acc(amb);
                for (std::size_t i = 0; i < 2; ++i) {
                    std::vector<std::size_t> c{c2[1 - i]};
                    if (piece[0].at(c).empty()) continue;
                    const int sign = i == 0 ? 1 : -1;
                    for (std::size_t e = 0; e < amb; ++e) acc[e] += sign * global.basis[a][e];
                }
                if (!is_zero(acc)) composes = false;
            }
    }

    rep.exact = lands && composes && rep.augmentation_rank == rep.global_dim;
    for (std::size_t q = 0; q < chains.size(); ++q) {
        long h = rep.dims[q] - rep.ranks[q] - (q > 0 ? rep.ranks[q - 1] : 0);
        rep.cohomology.push_back(h);
        if (q == 0 ? h != rep.global_dim : h != 0) rep.exact = false;
    }
    return rep;
}

// ---- de Rham differential and wedge division -------------------------------------

IntMatrix graded_differential(const IntVector& p, std::size_t r)
{
    if (r >= p.size()) return IntMatrix(0, binomial(p.size(), r));
    return wedge_with_covector(p, p.size(), r);
}

WedgeDivision wedge_divide(const IntVector& p, const RatVector& omega, std::size_t r)
{
    require(!is_zero(p), "ZeroVector", "cannot divide by the zero vector");
    const std::size_t n = p.size();
    require(r >= 1 && r <= n && omega.size() == binomial(n, r), "DimensionMismatch", "omega is not an r-form");
    WedgeDivision out;
    if (!is_zero(to_rat(graded_differential(p, r)) * omega)) return out;
    // p ^ omega = 0 gives p ^ iota(e_a^*) omega = p_a omega for any a with p_a != 0
    std::size_t a = 0;
    while (p[a] == 0) ++a;
    IntVector e(n);
    e[a] = 1;
    RatVector tau = to_rat(contraction_matrix(e, n, r)) * omega;
    for (auto& x : tau) x /= Rat(p[a]);
    require(to_rat(graded_differential(p, r - 1)) * tau == omega, "InternalError", "wedge division check failed");
    out.solvable = true;
    out.tau = std::move(tau);
    return out;
}

// ---- generic fibre ---------------------------------------------------------------

std::string to_string(FibreSmoothness s)
{
    switch (s) {
    case FibreSmoothness::Smooth: return "Smooth";
    case FibreSmoothness::OrbifoldCodim4: return "OrbifoldCodim4";
    case FibreSmoothness::Neither: return "Neither";
    }
    return "?";
}

FibreSmoothness generic_fibre_smoothness(const std::vector<LatticePolytope>& deltas)
{
    if (deltas.empty()) return FibreSmoothness::Smooth;
    LatticePolytope cayley = cayley_polytope(deltas);
    if (is_standard_simplex(cayley)) return FibreSmoothness::Smooth;
    if (is_elementary_simplex(cayley)) return FibreSmoothness::OrbifoldCodim4;
    return FibreSmoothness::Neither;
}

// ---- request and report ----------------------------------------------------------

LocalModelRequest local_model_request_from_json(const nlohmann::json& j)
{
    require(j.is_object() && j.contains("tau") && j.contains("deltas") && j["deltas"].is_array(), "ParseError",
            "local model needs \"tau\" and a \"deltas\" array");
    LocalModelRequest req;
    req.tau = polytope_from_json(j["tau"]);
    for (const auto& d : j["deltas"]) req.deltas.push_back(polytope_from_json(d));
    if (j.contains("k")) {
        require(j["k"].is_number_integer(), "ParseError", "\"k\" must be an integer");
        req.k = j["k"].get<int>();
    }
    if (j.contains("degree_bound")) {
        require(j["degree_bound"].is_number_integer(), "ParseError", "\"degree_bound\" must be an integer");
        req.degree_bound = j["degree_bound"].get<int>();
    }
    require(req.k >= 0 && req.degree_bound >= 0, "ParseError", "k and degree_bound must be nonnegative");
    return req;
}

nlohmann::json local_model_report(const LocalModelRequest& req, unsigned jobs)
{
    const MonoidData m = build_monoid(req.tau, req.deltas);
    const std::size_t n = m.rank();
    const int b = req.degree_bound;
    std::vector<IntVector> degrees;
    std::vector<long long> cur(n, -b);
    while (true) {
        degrees.push_back(to_int_vector(cur));
        std::size_t c = 0;
        while (c < n && cur[c] == b) {
            cur[c] = -b;
            ++c;
        }
        if (c == n) break;
        ++cur[c];
    }
    std::sort(degrees.begin(), degrees.end());

    std::vector<nlohmann::json> entries(degrees.size());
    std::vector<char> exact(degrees.size(), 1);
    parallel_for(degrees.size(), jobs, [&](std::size_t idx) {
        const IntVector& p = degrees[idx];
        nlohmann::json e;
        e["degree"] = int_vector_json(p);
        e["theta"] = theta_graded_piece(m, p).dim();
        e["theta_rel"] = theta_rel_graded_piece(m, p).dim();
        e["theta_k"] = theta_xk_graded_piece(m, p, req.k, false).dim();
        e["theta_k_rel"] = theta_xk_graded_piece(m, p, req.k, true).dim();
        nlohmann::json om = nlohmann::json::array(), omr = nlohmann::json::array(), ex = nlohmann::json::array();
        bool nonzero = e["theta"] != 0 || e["theta_k"] != 0;
        for (int r = 0; r <= int(n); ++r) {
            auto a = omega_graded_piece(m, p, r, req.k, false).dim();
            auto rl = r < int(n) ? omega_graded_piece(m, p, r, req.k, true).dim() : 0;
            om.push_back(a);
            omr.push_back(rl);
            if (a || rl) nonzero = true;
            bool ok = barycentric_resolution_check(m, r, req.k, p, false).exact;
            if (r < int(n)) ok = ok && barycentric_resolution_check(m, r, req.k, p, true).exact;
            ex.push_back(ok);
            if (!ok) exact[idx] = 0;
        }
        e["omega"] = om;
        e["omega_rel"] = omr;
        e["exact"] = ex;
        if (nonzero || !exact[idx]) entries[idx] = e;
    });

    nlohmann::json out;
    out["monoid"] = m.to_json();
    out["generic_fibre"] = to_string(generic_fibre_smoothness(req.deltas));
    out["k"] = req.k;
    out["degree_bound"] = b;
    out["degrees_checked"] = degrees.size();
    nlohmann::json list = nlohmann::json::array();
    for (auto& e : entries)
        if (!e.is_null()) list.push_back(std::move(e));
    out["degrees"] = list;
    out["all_exact"] = std::all_of(exact.begin(), exact.end(), [](char c) { return c != 0; });
    return out;
}

}  // namespace ahodge
