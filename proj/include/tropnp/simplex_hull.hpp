#ifndef TROPNP_SIMPLEX_HULL_HPP
#define TROPNP_SIMPLEX_HULL_HPP

#include <vector>

#include "tropnp/exact_linalg.hpp"

namespace tropnp {

/** One simplicial facet of an incrementally built hull: exactly dim vertex
 *  indices, outward normal, and the tight value normal . x = offset. */
struct SimplexFacet {
  std::vector<Index> verts;
  ZVec normal;
  Rat offset;
};

/** Triangulated convex hull of a full-dimensional point set, built by exact
 *  beneath-beyond insertion in the given point order (a placing
 *  triangulation).  Facets are simplicial and may be coplanar in groups; use
 *  merged_facets() style post-processing downstream for face-lattice work.
 *
 *  Points must affinely span the ambient space; lower-dimensional inputs are
 *  the caller's job to reduce first. */
struct TriangulatedHull {
  std::vector<QVec> points;          // the deduplicated input points
  std::vector<SimplexFacet> facets;  // simplicial, outward-oriented
  QVec interior;                     // a strictly interior rational point
};

TriangulatedHull build_hull(const std::vector<QVec>& pts);

/** Star-triangulation of the pointed cone spanned by the given rays: hull of
 *  the origin and the rays, restricted to the facets away from the origin.
 *  Each returned group lists indices into `rays` forming one simplicial
 *  subcone; their union is the original cone and the pieces meet in faces.
 *  Rays are consumed as given (sort them first for a canonical result).
 *  Throws Errc::NonSimplicialCone when the rays do not span a pointed,
 *  full-dimensional cone. */
std::vector<std::vector<Index>> triangulate_pointed_cone(const std::vector<ZVec>& rays);

}  // namespace tropnp

#endif  // TROPNP_SIMPLEX_HULL_HPP
