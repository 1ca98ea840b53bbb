#pragma once

#include <json.hpp>

#include "ahodge/complex.hpp"
#include "ahodge/polytope.hpp"

namespace ahodge {

/// Facet inequalities <a_F, x> >= -1 for every facet and 0 in the interior.
bool is_reflexive(const LatticePolytope& p);

/// conv{a_F} for the facet normals of a reflexive polytope (its polar dual).
LatticePolytope polar_dual(const LatticePolytope& p);

/**
 * B = boundary of a reflexive polytope Xi, decomposed by a regular unimodular
 * refinement of its proper faces that uses every boundary lattice point.
 * The chart at a vertex v projects along v onto a lattice complement of Zv;
 * phi is N * (gauge of Xi) + (triangulation height) for the first N in
 * 0, 1, 2, 4, ... that makes phi strictly convex. Throws NotReflexive.
 */
IntegralAffineComplex from_reflexive_polytope(const LatticePolytope& xi);

/// Polytope JSON {"vertices": [[...], ...]}; a complex JSON carrying "source_polytope" is accepted too.
LatticePolytope reflexive_input_from_json(const nlohmann::json& j);

}  // namespace ahodge
