#pragma once

#include <vector>

#include <json.hpp>

#include "ahodge/cohomology.hpp"

namespace ahodge {

/// Global sign of the residue operator, chosen so that N is +(contraction with c_B) on tori.
inline constexpr int kResidueSign = 1;

/// The radiance cocycle as a 1-cochain of the Čech complex of Lambda; asserts that it is closed.
RatVector radiance_cochain(const IntegralAffineComplex& c, const CechComplex& lambda);

/**
 * (eta cup alpha)_{s0..s(q+1)} = iota(eta_{s0 s1}) transport(alpha_{s1..s(q+1)}),
 * for eta in C^1(Lambda), alpha in C^q(wedge^p Lambda-check), landing in
 * C^{q+1}(wedge^{p-1} Lambda-check). Throws RangeError for p = 0.
 */
RatVector cup_contract(const IntegralAffineComplex& c, const CechComplex& lambda, const RatVector& eta,
                       const CechComplex& src, int q, const RatVector& alpha, const CechComplex& dst);

/**
 * Čech complexes of Lambda and of every wedge^p Lambda-check, the groups
 * H^q(wedge^p Lambda-check) with representatives, and the block layout of
 * their direct sum (blocks ordered by p, then q).
 */
struct HodgeModel {
    int n = 0;
    CechComplex lambda;
    std::vector<CechComplex> forms;
    std::vector<std::vector<CohomologyGroup>> groups;  // [p][q]
    std::vector<std::vector<std::size_t>> block_offset;
    std::size_t total_dim = 0;

    /// Matrix of iota(eta) cup on the direct sum, for a closed eta in C^1(Lambda).
    RatMatrix cup_operator(const IntegralAffineComplex& c, const RatVector& eta) const;
    nlohmann::json blocks_json() const;
};

HodgeModel build_hodge_model(const IntegralAffineComplex& c, unsigned jobs = 1);

struct ResidueOperator {
    RatMatrix matrix;
    int nilpotency = 0;  // least k >= 1 with N^k = 0
    nlohmann::json blocks;
    nlohmann::json to_json() const;
};

/// N = kResidueSign * (c_B cup) on the direct sum of all H^q(wedge^p Lambda-check).
ResidueOperator residue_operator(const IntegralAffineComplex& c, const HodgeModel& m);

/// Matrices iota(eta_i) cup for the representative basis eta_i of H^1(Lambda).
struct ModuliConnection {
    std::vector<RatMatrix> matrices;
    nlohmann::json to_json() const;
};

ModuliConnection moduli_connection(const IntegralAffineComplex& c, const HodgeModel& m);

struct SeriesTerm {
    std::vector<int> indices;  // (i_1, ..., i_k)
    RatVector coefficient;      // eta_{i_1} ... eta_{i_k} alpha / k!
};

/// Nonzero terms of the flat extension of the class alpha (coordinates on the direct sum).
std::vector<SeriesTerm> flat_section(const ModuliConnection& conn, const RatVector& alpha);

/// Dense integral computation for small complexes: free ranks and torsion invariant factors per degree.
struct IntegralCohomology {
    std::vector<long> free_rank;
    std::vector<std::vector<Int>> torsion;
    nlohmann::json to_json() const;
};

IntegralCohomology integral_cohomology(const CechComplex& cc);

/**
 * Rank bookkeeping for 0 -> wedge^{r-1} Lambda-check -> wedge^r Aff -> wedge^r Lambda-check -> 0
 * with connecting maps c_B cup. exact is true when
 * dim H^q(Aff) = dim H^q(sub) - rank(delta_{q-1}) + dim H^q(quot) - rank(delta_q) for every q.
 */
struct LongExactSequenceCheck {
    int r = 0;
    std::vector<long> sub, aff, quotient, connecting_rank;
    bool exact = false;
    nlohmann::json to_json() const;
};

LongExactSequenceCheck aff_long_exact_sequence(const IntegralAffineComplex& c, const HodgeModel& m, int r);

nlohmann::json rational_json(const Rat& x);
nlohmann::json matrix_json(const RatMatrix& m);

}  // namespace ahodge
