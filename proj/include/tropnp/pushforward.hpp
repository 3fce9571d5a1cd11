#ifndef TROPNP_PUSHFORWARD_HPP
#define TROPNP_PUSHFORWARD_HPP

/** Images of weighted cone collections under integral linear maps: product
 *  collections, Minkowski-sum images, coordinatewise-square images, and the
 *  push-forward multiplicity formula
 *
 *      m_w = (1/delta) * sum over fiber representatives v of
 *            m_v * [saturation of A(span_v) : A(span_v lattice)],
 *
 *  evaluated with exact lattice indices.  Multiplicities are point-local:
 *  geometric images carry pending weights until a sample-point evaluation
 *  assigns them. */

#include <vector>

#include "tropnp/fan.hpp"
#include "tropnp/numeric.hpp"

namespace tropnp {

/** An integral monomial map between tropical ambient spaces.  A is d x r
 *  (target dimension d, source dimension r); delta is the generic fiber
 *  cardinality of the underlying map and divides the multiplicity sum;
 *  lambda rows generate the source lineality lattice (0 x r when absent). */
struct MonomialMapSpec {
  ZMat A;
  Int delta = 1;
  ZMat lambda;
};

/** One fiber representative feeding the multiplicity formula: the point v
 *  mapping to w, generators (rows) of the span of the source cone whose
 *  relative interior contains v, and that cone's weight. */
struct FiberContribution {
  QVec point;
  ZMat span_rows;
  Int multiplicity;
};

/** Product collection in R^{n1+n2}: every pair of cones, rays embedded
 *  block-wise, lineality the block sum, weight the product of the two
 *  weights (pending if either factor is pending). */
TropicalCollection product_fan(const TropicalCollection& t1, const TropicalCollection& t2);

/** Set-theoretic image of a pure collection under map.A: images of all
 *  cones, keeping only those of the expected image dimension
 *  (pure dim of t minus the rank the map collapses from the lineality),
 *  canonicalized.  Weights are left pending (0): they are point-local and
 *  assigned by the multiplicity routines. */
TropicalCollection minkowski_image(const TropicalCollection& t, const MonomialMapSpec& map);

/** Evaluates the push-forward multiplicity at w from an explicit complete
 *  list of fiber representatives.  Throws NonIntegralResult when the
 *  weighted index sum is not divisible by delta (incomplete fibers or wrong
 *  delta), InfiniteFiber when a fiber cone meets ker(A) outside the source
 *  lineality, and NonPrimitiveLattice when the image of the source
 *  lineality lattice is not saturated. */
Int pushforward_multiplicity(const QVec& w, const std::vector<FiberContribution>& fibers,
                             const ZMat& w_cone_span, const MonomialMapSpec& map);

/** Multiplicity of the coordinatewise-square image at one regular point w:
 *  enumerates fibers by scanning all ordered pairs of cones of t whose sum
 *  contains w, then applies the push-forward formula.  Throws
 *  GenericityViolation when w touches a fiber-cone boundary (pick another
 *  point) and InfiniteFiber when a fiber fails to be isolated. */
Int hadamard_multiplicity_at(const TropicalCollection& t, const QVec& w, Int delta);

/** Image of t under (I | I) on t x t — the tropical coordinatewise square —
 *  with multiplicities assigned at deterministic interior sample points of
 *  every image cone (bounded retries route around non-generic samples).
 *  delta is caller-supplied: the fan alone cannot reveal the generic fiber
 *  cardinality of the underlying square map. */
TropicalCollection hadamard_square(const TropicalCollection& t, Int delta);

/** Projects the collection along the primitive lattice spanned by the rows
 *  of l_rows, which must lie in the collection's lineality span
 *  (NotInLineality otherwise).  Cones keep their weights; coordinates are
 *  the integral complement coordinates of the lattice quotient.  l_rows
 *  with zero rows returns t unchanged. */
TropicalCollection quotient_by_lineality(const TropicalCollection& t, const ZMat& l_rows);

}  // namespace tropnp

#endif  // TROPNP_PUSHFORWARD_HPP
