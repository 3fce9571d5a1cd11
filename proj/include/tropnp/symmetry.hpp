#ifndef TROPNP_SYMMETRY_HPP
#define TROPNP_SYMMETRY_HPP

/** Finite coordinate symmetry groups: permutations of the ambient
 *  coordinates, orbits of vectors and cones, canonical orbit
 *  representatives, stabilizer orders.  Groups are given by generators in
 *  one-line notation and act by (sigma . v)[sigma[i]] = v[i]; full element
 *  enumeration happens lazily and is capped, while orbits only ever walk
 *  the generators and stay as small as the orbit itself. */

#include <vector>

#include "tropnp/fan.hpp"
#include "tropnp/numeric.hpp"

namespace tropnp {

/** A group of coordinate permutations on n_coords coordinates.  Immutable
 *  after construction; the element cache is filled on first use by
 *  group_elements (fill it before sharing a group across threads). */
struct CoordSymmetryGroup {
  Index n_coords = 0;
  std::vector<std::vector<Index>> generators;  // one-line notation
  mutable std::vector<std::vector<Index>> element_cache;
};

/** The group containing only the identity. */
CoordSymmetryGroup trivial_group(Index n);

/** Builds a group after checking every generator is a permutation of
 *  {0..n-1}.  Throws BadInput otherwise. */
CoordSymmetryGroup make_group(Index n, std::vector<std::vector<Index>> generators);

/** The full symmetry group of the m-cube acting on its 2^m vertices,
 *  realized as coordinate permutations of the 2^m coordinates indexed by
 *  bit strings in lexicographic order.  Generated by one bit flip per axis
 *  and the adjacent axis swaps; the order is 2^m * m!.  Throws TooLarge
 *  for m > 8 (enumeration bound) and BadInput for m < 1. */
CoordSymmetryGroup hyperoctahedral_on_cube(Index m);

/** Applies a permutation to a vector: result[perm[i]] = v[i]. */
ZVec apply_permutation(const std::vector<Index>& perm, const ZVec& v);
QVec apply_permutation(const std::vector<Index>& perm, const QVec& v);

/** Applies a permutation to every row of m: result(i, perm[j]) = m(i, j). */
ZMat permute_columns(const std::vector<Index>& perm, const ZMat& m);

/** All group elements by breadth-first closure of the generators, sorted
 *  lexicographically and cached on the group.  Throws TooLarge past 10^6
 *  elements. */
const std::vector<std::vector<Index>>& group_elements(const CoordSymmetryGroup& g);

/** Number of group elements (enumerates on first call). */
Int group_order(const CoordSymmetryGroup& g);

/** Orbit of v under the group, sorted lexicographically.  Walks the
 *  generators only, so it works even when the group itself is too large to
 *  enumerate.  Throws DimensionMismatch if v has the wrong length. */
std::vector<ZVec> orbit(const CoordSymmetryGroup& g, const ZVec& v);

/** Lexicographic minimum of orbit(g, v); constant on each orbit. */
ZVec canonical_rep(const CoordSymmetryGroup& g, const ZVec& v);

/** Number of group elements fixing v, counted over the enumerated
 *  elements (so the orbit-stabilizer identity is a genuine cross-check
 *  against the generator-walk orbit). */
Int stabilizer_order(const CoordSymmetryGroup& g, const ZVec& v);

/** Orbit of a weighted cone: the group acts on the coordinates of every
 *  ray; each image cone is canonicalized by lex-sorting its rays and the
 *  distinct images are returned in lexicographic order, all carrying the
 *  original multiplicity.  Rays are expected primitive (the action
 *  preserves primitivity).  The ambient lineality space must be group
 *  invariant for the result to be meaningful; expand_orbit_collection
 *  checks that. */
std::vector<WeightedCone> orbit_cones(const CoordSymmetryGroup& g, const WeightedCone& c);

/** Expands a collection of orbit representatives into the full collection:
 *  checks the lineality space is invariant under every generator (BadInput
 *  otherwise), takes the orbit of every cone, and merges the results,
 *  throwing MultiplicityConflict when two representatives meet in the same
 *  cone with different weights.  Cones come out lex-sorted. */
TropicalCollection expand_orbit_collection(const CoordSymmetryGroup& g,
                                           const TropicalCollection& reps);

}  // namespace tropnp

#endif  // TROPNP_SYMMETRY_HPP
