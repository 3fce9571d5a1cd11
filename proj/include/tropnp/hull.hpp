#ifndef TROPNP_HULL_HPP
#define TROPNP_HULL_HPP

#include <utility>
#include <vector>

#include "tropnp/fan.hpp"

namespace tropnp {

/** One linear inequality normal . x <= bound with a primitive integral
 *  normal. */
struct FacetInequality {
  ZVec normal;
  Int bound;
};

/** Exact V- and H-description of the convex hull of an integral point set,
 *  possibly lower-dimensional in its ambient space.  Facets are the relative
 *  facets (within the affine span); their normals are the unique
 *  representatives inside the direction span, so the data is independent of
 *  how the span sits in the ambient space.  Vertices are lex-sorted and all
 *  index lists refer to that order. */
struct Polytope {
  Index ambient_dim = 0;
  std::vector<ZVec> vertices;
  ZMat span_directions;  // rows: saturated basis of the direction space
  struct Face {
    ZVec normal;                  // primitive, inside the direction span
    Int bound;                    // tight value: normal . v == bound on the face
    std::vector<Index> vertices;  // sorted vertex indices on the face
  };
  std::vector<Face> facets;
  std::vector<std::pair<Index, Index>> edges;  // index pairs (i < j), sorted
};

/** Exact convex hull at desk scale (Errc::ScaleExceeded beyond 10^4 points or
 *  ambient dimension 6).  Duplicates are tolerated; the input must be
 *  nonempty. */
Polytope convex_hull(const std::vector<ZVec>& points);

/** The codimension-one part of the polytope's normal fan, weighted by lattice
 *  edge lengths: one cone per edge (normals of the facets through the edge,
 *  plus the orthogonal complement of the affine span as lineality), with
 *  multiplicity gcd of the edge's coordinate differences.  Returned
 *  normalized. */
TropicalCollection weighted_normal_skeleton(const Polytope& p);

/** Irredundant facet inequalities of the shifted cone apex + cone(rays),
 *  relative to the cone's linear span; computed by incremental exact
 *  insertion with adjacency-based redundancy elimination.  The cone must be
 *  pointed (Errc::BadInput otherwise); caps at 200 rays and ambient dimension
 *  16 (Errc::ScaleExceeded).  An empty ray list yields no facets. */
std::vector<FacetInequality> dual_description(const std::vector<ZVec>& rays, const ZVec& apex);

}  // namespace tropnp

#endif  // TROPNP_HULL_HPP
