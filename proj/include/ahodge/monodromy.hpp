#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ahodge/complex.hpp"

namespace ahodge {

/**
 * Orientation conventions, also written into every report:
 *  - loop transport T = transport(v- -> v+ through sigma-) * transport(v+ -> v- through sigma+), acting on Lambda_{v+};
 *  - for a codimension one cell rho, sigma+ is its lower-id maximal cell;
 *  - dcheck_rho is primitive, vanishes on rho and is positive on sigma+;
 *  - d_omega is primitive and points from the first to the second listed vertex of omega.
 * With these choices kappa does not depend on the labelling of sigma+-.
 */
inline constexpr const char* kMonodromyConvention =
    "T = P(v-->v+ | sigma-) P(v+->v- | sigma+) on Lambda_{v+}; sigma+ = lower-id maximal cell; "
    "dcheck_rho primitive, zero on rho, positive on sigma+; d_omega primitive from first to second vertex";

struct FacetMonodromy {
    int rho = 0, v_plus = 0, v_minus = 0, sigma_plus = 0, sigma_minus = 0;
    IntVector d_check;  // covector on Lambda_{v+}
    IntVector m;        // vector in Lambda_{v+}; T(x) = x + <d_check, x> m
};

struct EdgeMonodromy {
    int omega = 0, sigma_plus = 0, sigma_minus = 0, v_plus = 0, v_minus = 0;
    IntVector d;  // vector in Lambda_{v+}
    IntVector n;  // covector; T(x) = x + <n, x> d
};

struct KappaEntry {
    int omega = 0, rho = 0;
    Int kappa;
};

struct MonodromyData {
    std::vector<FacetMonodromy> facets;
    std::vector<EdgeMonodromy> edges;
    std::vector<KappaEntry> kappas;
    nlohmann::json to_json() const;
};

IntMatrix loop_transport(const IntegralAffineComplex& c, int v_plus, int v_minus, int sigma_plus, int sigma_minus);
/// Primitive covector at v vanishing on rho and positive on the lower-id maximal cell over rho.
IntVector facet_covector(const IntegralAffineComplex& c, int rho, int v);

FacetMonodromy facet_monodromy(const IntegralAffineComplex& c, int rho, int v_plus, int v_minus);
EdgeMonodromy edge_monodromy(const IntegralAffineComplex& c, int omega, int sigma_plus, int sigma_minus);
/// kappa_{omega rho} for an edge omega of a codimension one cell rho (0 is the ZeroLoop case).
Int kappa(const IntegralAffineComplex& c, int omega, int rho);

/// Every facet pair, every edge pair and every kappa of the complex.
MonodromyData compute_monodromy(const IntegralAffineComplex& c, unsigned jobs = 1);
bool check_positive(const IntegralAffineComplex& c);

struct SimplicityCertificate {
    int tau = 0;
    int base_vertex = 0;
    int reference_cell = 0;
    std::vector<std::vector<int>> omegas;  // edges of tau, per group
    std::vector<std::vector<int>> rs;      // codimension one cells containing tau, per group
    std::vector<LatticePolytope> deltas;   // in Lambda at the base vertex
    std::vector<LatticePolytope> deltas_check;
    bool elementary_ok = true;
    bool bigtheorem_ok = true;
    std::string failure;  // empty when simple at tau
    nlohmann::json to_json() const;
};

/**
 * Simplicity data for every cell 0 < dim < n. With strict set, the first
 * failure raises SimplicityFailure; otherwise failures are recorded in the
 * certificate and its flags.
 */
std::vector<SimplicityCertificate> check_simple(const IntegralAffineComplex& c, bool strict = false);

/// Radiance cocycle c_{tau0 tau1} = psi_{v(tau0), sigma}(v(tau1)), sigma the lowest-id maximal cell over tau1.
std::map<std::pair<int, int>, IntVector> radiance_cocycle(const IntegralAffineComplex& c);
/// Cocycle identity c_{02} = c_{01} + P(v1 -> v0) c_{12} on every chain of length three.
bool radiance_cocycle_closed(const IntegralAffineComplex& c, const std::map<std::pair<int, int>, IntVector>& rc);

}  // namespace ahodge
