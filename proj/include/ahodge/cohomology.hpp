#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ahodge/complex.hpp"
#include "ahodge/sparse.hpp"

namespace ahodge {

enum class SystemKind { WedgeLambdaCheck, WedgeLambda, WedgeAff };

/**
 * One of the local systems i_* wedge^r Lambda-check, i_* wedge^r Lambda or
 * i_* wedge^r Aff on an n-dimensional complex. Aff fibres are Z * 1 + Lambda-check
 * with coordinate 0 the constant term; the subsystem wedge^{r-1} Lambda-check
 * sits in Aff as the wedge tuples that contain index 0.
 */
struct LocalSystem {
    SystemKind kind = SystemKind::WedgeLambdaCheck;
    int r = 0;
    int n = 0;

    std::size_t fiber_dim() const { return kind == SystemKind::WedgeAff ? std::size_t(n) + 1 : std::size_t(n); }
    std::size_t rank() const;
    std::string name() const;
};

/// Fibre map of the system along v -> v2 inside sigma, built from the parallel transport of Lambda.
IntMatrix fiber_transport(const IntegralAffineComplex& c, const LocalSystem& s, int v, int v2, int sigma);

/// Memoised fiber_transport for repeated use on one complex.
class TransportCache {
public:
    TransportCache(const IntegralAffineComplex& c, LocalSystem s) : c_(c), s_(s) {}
    const IntMatrix& operator()(int v, int v2, int sigma);
    const LocalSystem& system() const { return s_; }

private:
    const IntegralAffineComplex& c_;
    LocalSystem s_;
    std::map<std::tuple<int, int, int>, IntMatrix> cache_;
};

/**
 * Loop generators for the flag pair tau1 <= tau2 acting on the fibre at
 * v(tau1): one per (rho, g, g') with rho a codimension one cell containing
 * tau2 and g != g' vertices of tau1, conjugated to v(tau1) inside the
 * lower-id maximal cell over rho.
 */
std::vector<IntMatrix> monodromy_generators(const IntegralAffineComplex& c, TransportCache& t, int tau1, int tau2);

/// Saturated lattice of common fixed vectors (HNF rows); the whole fibre when tau2 is maximal.
IntMatrix invariant_sections(const IntegralAffineComplex& c, TransportCache& t, int tau1, int tau2);

using Flag = std::vector<int>;

/// Strict chains sigma_0 < ... < sigma_q of the face poset, per q, sorted lexicographically.
std::vector<std::vector<Flag>> enumerate_flags(const IntegralAffineComplex& c);

/**
 * Flag-Čech complex. C^q has one block per chain of length q + 1, holding
 * coordinates in the invariant lattice of (sigma_0, sigma_q) at v(sigma_0).
 * d[q] : C^q -> C^{q+1} is stored with rows indexing C^{q+1}.
 */
struct CechComplex {
    LocalSystem sys;
    std::vector<std::vector<Flag>> flags;
    std::vector<std::vector<std::size_t>> offset;
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix> d;
    std::map<std::pair<int, int>, IntMatrix> invariants;

    int top_degree() const { return int(flags.size()) - 1; }
    std::size_t flag_index(int q, const Flag& f) const;
    const IntMatrix& basis(const Flag& f) const { return invariants.at({f.front(), f.back()}); }
    /// Actual fibre vector of block i of a degree-q cochain.
    RatVector block_vector(int q, std::size_t i, const RatVector& cochain) const;
};

/**
 * Assembles the complex, transporting the leading term from v(sigma_1) to
 * v(sigma_0) through the lowest-id maximal cell over the last flag cell.
 * Throws TransportAmbiguity when another maximal cell gives a different map
 * on the invariant lattice or a section leaves the target lattice; d^2 = 0 is
 * asserted.
 */
CechComplex cech_complex(const IntegralAffineComplex& c, const LocalSystem& s);
CechComplex cech_aff_complex(const IntegralAffineComplex& c, int r);

/// dim_Q H^q for q = 0..n.
std::vector<long> betti_numbers(const CechComplex& cc);

/**
 * H^q with chosen cocycle representatives. Coboundaries are entered first,
 * then a kernel basis of d_q; the kernel vectors that stay independent are
 * the representatives.
 */
struct CohomologyGroup {
    int q = 0;
    std::size_t ambient = 0;
    std::vector<SparseVec> representatives;
    IncrementalEchelon echelon;

    std::size_t dim() const { return representatives.size(); }
    /// Coordinates of a cocycle in the representative basis; throws when it is not closed.
    RatVector coordinates(const SparseVec& cocycle) const;
};

CohomologyGroup cohomology_group(const CechComplex& cc, int q);

/**
 * h[q][p] = dim H^q(B, i_* wedge^p Lambda-check (x) Q). Warnings are attached when
 * the simplicity certificate fails somewhere (the numbers are then labelled
 * as the Čech model) and when the Poincaré-type symmetry fails.
 */
struct HodgeDiamond {
    int n = 0;
    std::vector<std::vector<long>> h;
    std::vector<std::vector<long>> dual_betti;  // dim H^q(wedge^p Lambda), when requested
    std::string model;
    bool poincare_symmetric = true;
    std::vector<std::string> warnings;

    nlohmann::json to_json() const;
};

struct HodgeOptions {
    unsigned jobs = 1;
    bool strict_simplicity = false;
    bool with_lambda = false;
};

HodgeDiamond hodge_numbers(const IntegralAffineComplex& c, const HodgeOptions& opt = {});

}  // namespace ahodge
