#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahodge/lattice.hpp"
#include "ahodge/polytope.hpp"

namespace ahodge {

/**
 * Local monoid of a node of the singular locus. M = M' + Z^{q+1} with
 * coordinates (m', e_0, ..., e_q); K is the cone over the Cayley polytope of
 * tau = Delta_0, Delta_1, ..., Delta_q and P = K^dual cap N is kept
 * implicitly through the generators of K.
 *
 * Generators split into v_1..v_s (the lifted vertices of tau, one per
 * component X_i of the central fibre) and w_1..w_t (lifted vertices of the
 * Delta_i, i >= 1, one per divisor D_j). The facet P_i of P is v_i^perp, the
 * facet Q_j is w_j^perp; rho = e_0^* lies on every Q_j.
 */
struct MonoidData {
    std::size_t mprime_rank = 0;
    std::size_t q = 0;
    LatticePolytope tau;
    std::vector<LatticePolytope> deltas;  // Delta_1..Delta_q

    std::vector<IntVector> v;          // s generators
    std::vector<IntVector> w;          // t generators
    std::vector<std::size_t> w_summand;  // i in 1..q for each w_j
    IntVector rho, rho_k;

    /// Hilbert basis of P and the binomial quadrics h_a + h_b = h_c + h_d among its elements.
    std::vector<IntVector> hilbert_basis;
    std::vector<std::array<std::size_t, 4>> quadrics;

    std::size_t rank() const { return mprime_rank + q + 1; }
    std::size_t e_index(std::size_t i) const { return mprime_rank + i; }
    /// v followed by w.
    std::vector<IntVector> generators() const;
    /// (m, e_i) in M for m in M'.
    IntVector lift(const IntVector& m, std::size_t i) const;

    bool in_p(const IntVector& p) const;
    /// p in (k+1) rho + P, tested as <v_i, p> >= k+1 for every v_i (and p in P).
    bool in_thickening_ideal(const IntVector& p, int k) const;
    /// The same set, tested as p - (k+1) rho in P against every generator of K.
    bool in_shifted_monoid(const IntVector& p, int k) const;
    /// <rho_K, g> = 1 for every generator g.
    bool gorenstein() const;
    /// rho in the relative interior of F = <w_1..w_t>^perp cap P.
    bool rho_interior_to_f() const;

    nlohmann::json to_json() const;
};

/// Throws DegeneratePolytope when tau is not full-dimensional or the Delta_i live elsewhere.
MonoidData build_monoid(const LatticePolytope& tau, const std::vector<LatticePolytope>& deltas);

enum class PieceKind { Theta, ThetaRel, OmegaAbs, OmegaRel };
std::string to_string(PieceKind k);

/**
 * Degree-p piece as a rational subspace (independent rows). Theta pieces sit
 * in M (x) Q; OmegaAbs pieces in wedge^r N (x) Q; OmegaRel pieces in
 * wedge^r (N / Z rho) (x) Q, where N / Z rho keeps every coordinate except e_0^*.
 */
struct GradedPiece {
    IntVector degree;
    PieceKind kind = PieceKind::Theta;
    int r = 1;
    std::size_t ambient_dim = 0;
    std::vector<RatVector> basis;

    std::size_t dim() const { return basis.size(); }
    /// x lies in the span of basis.
    bool contains(const RatVector& x) const;
};

GradedPiece theta_graded_piece(const MonoidData& m, const IntVector& p);
/// Throws RhoNotInterior unless rho is interior to F.
GradedPiece theta_rel_graded_piece(const MonoidData& m, const IntVector& p);
/// Zero unless 0 <= <v_i, p> <= k for some i; otherwise the order-infinity piece.
GradedPiece theta_xk_graded_piece(const MonoidData& m, const IntVector& p, int k, bool rel = false);

/// wedge^r of the intersection of Q_j^gp over j with p in Q_j, for p in P \ ((k+1) rho + P).
GradedPiece omega_graded_piece(const MonoidData& m, const IntVector& p, int r, int k, bool rel);

/// The face omega_i of Delta_i (vertex indices) on which every n of the normal cone of omega is minimal.
FaceSet delta_face(const MonoidData& m, const FaceSet& omega, std::size_t i);

/// Membership in P_{omega, omega', k}; throws NotAFace when omega is not a face of tau inside omega'.
bool p_omega_set_member(const MonoidData& m, const FaceSet& omega, const FaceSet& omega_prime, const IntVector& p,
                        int k);

/// Degree-p piece of Omega^r_{omega,k} restricted to V^k_{omega'} (omega' = omega by default).
GradedPiece omega_face_graded_piece(const MonoidData& m, const FaceSet& omega, const IntVector& p, int r, int k,
                                    bool rel);
GradedPiece omega_face_graded_piece(const MonoidData& m, const FaceSet& omega, const FaceSet& omega_prime,
                                    const IntVector& p, int r, int k, bool rel);

/// All faces of tau as vertex index sets, by dimension.
std::vector<FaceSet> faces_of_tau(const MonoidData& m);

/**
 * Degree-p slice of 0 -> Omega^r_k -> C^0 -> C^1 -> ... over chains of faces
 * of tau. dims[m] = dim C^m_p, ranks[m] = rank of d^m, cohomology[m] =
 * dim H^m of the slice, and exact says H^0 is the image of Omega^r_k and
 * every higher group vanishes.
 */
struct ExactnessReport {
    IntVector degree;
    int r = 0, k = 0;
    bool rel = false;
    long global_dim = 0;
    long augmentation_rank = 0;
    std::vector<long> dims, ranks, cohomology;
    bool exact = false;
    nlohmann::json to_json() const;
};

ExactnessReport barycentric_resolution_check(const MonoidData& m, int r, int k, const IntVector& p, bool rel = false);

/// Matrix of n -> p ^ n from wedge^r to wedge^{r+1} of Q^{dim p}.
IntMatrix graded_differential(const IntVector& p, std::size_t r);

struct WedgeDivision {
    bool solvable = false;
    RatVector tau;  // an (r-1)-form with p ^ tau = omega when solvable
};

/// Solves p ^ tau = omega for an r-form omega; throws ZeroVector for p = 0.
WedgeDivision wedge_divide(const IntVector& p, const RatVector& omega, std::size_t r);

enum class FibreSmoothness { Smooth, OrbifoldCodim4, Neither };
std::string to_string(FibreSmoothness s);

/// Classifies Conv(U Delta_i x {e_i}): standard simplex, elementary simplex, or neither.
FibreSmoothness generic_fibre_smoothness(const std::vector<LatticePolytope>& deltas);

/// Parsed local-model request.
struct LocalModelRequest {
    LatticePolytope tau;
    std::vector<LatticePolytope> deltas;
    int k = 0;
    int degree_bound = 1;
};

LocalModelRequest local_model_request_from_json(const nlohmann::json& j);

/**
 * Report over every degree with |coordinates| <= degree_bound: dimensions of
 * all graded pieces for r = 0..rank, and the resolution exactness per r.
 */
nlohmann::json local_model_report(const LocalModelRequest& req, unsigned jobs = 1);

}  // namespace ahodge
