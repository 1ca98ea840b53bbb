#pragma once

#include "ahodge/complex.hpp"

namespace ahodge {

/**
 * Discrete Legendre transform by the dual-cell recipe. Cell ids are kept:
 * the dual of a cell tau carries the id of tau, has dimension n - dim tau,
 * its vertices are the maximal cells over tau and its faces are the cells
 * having tau as a facet. The maximal cell dual to a vertex v is the Newton
 * polytope conv{-f_{v,sigma}} of phi_v, the chart at (sigma, v) is the
 * transpose of A_{v,sigma}, and the dual function has slope
 * -(coord_sigma(w) - coord_sigma(w_0)) on the cell dual to w.
 * Throws NotStrictlyConvex, and UnsupportedStructure when the dual cells do
 * not glue to a valid complex.
 */
IntegralAffineComplex legendre_transform(const IntegralAffineComplex& c);

/**
 * True when b equals a under the identity on cell ids: same cells, same
 * charts, maximal cell coordinates equal up to translation, and phi equal up
 * to a linear function at each vertex. This is the form in which the double
 * transform returns its input.
 */
bool same_up_to_normalization(const IntegralAffineComplex& a, const IntegralAffineComplex& b);

}  // namespace ahodge
