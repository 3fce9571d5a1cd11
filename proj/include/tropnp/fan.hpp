#ifndef TROPNP_FAN_HPP
#define TROPNP_FAN_HPP

#include <vector>

#include "tropnp/exact_linalg.hpp"

namespace tropnp {

/** One weighted cone: the rows of `rays` generate it together with the
 *  collection-wide lineality space.  Multiplicity 0 marks a weight that is
 *  still to be computed (mid-pipeline); every consuming operation requires
 *  positive weights. */
struct WeightedCone {
  ZMat rays;  // rows; may have zero rows (the cone is the lineality space)
  Int multiplicity = 1;
};

/** An unordered collection of weighted cones sharing one lineality space.
 *  No fan structure is assumed: cones may overlap or repeat; the collection
 *  is just a set-with-weights presentation of a support. */
struct TropicalCollection {
  Index ambient_dim = 0;
  ZMat lineality;  // rows span the common lineality space; may be 0 x n
  std::vector<WeightedCone> cones;
};

/** Structural validation: matching dimensions, nonnegative multiplicities,
 *  nonzero rays.  Throws Errc::BadInput or Errc::DimensionMismatch. */
void validate_collection(const TropicalCollection& c);

/** Canonical form of a collection:
 *    - lineality replaced by the saturated basis of its span,
 *    - rays primitive, reduced modulo lineality to the canonical coset
 *      representative, deduplicated, lex-sorted within each cone,
 *    - non-simplicial cones split by the placing triangulation of their
 *      lex-sorted rays (star subdivision over the lid facets),
 *    - duplicate cones merged; differing weights on the same cone raise
 *      Errc::MultiplicityConflict,
 *    - cones lex-sorted.
 *  The result is byte-stable: equal supports with equal weights normalize to
 *  identical data.  Throws Errc::NonSimplicialCone when some cone is not
 *  pointed modulo the lineality space. */
TropicalCollection normalized(TropicalCollection c);

/** Common dimension (ray count plus lineality rank) of all cones in a
 *  normalized collection; Errc::BadInput when they are mixed. */
Index pure_dimension(const TropicalCollection& c);

/** Weighted balancing test for a normalized one-dimensional collection (one
 *  ray per cone): the multiplicity-weighted ray sum must lie in the lineality
 *  space.  Errc::NotACurve when a cone has a ray count other than one. */
bool is_balanced_curve(const TropicalCollection& c);

/** Closed-cone membership of a rational point, reported with boundary
 *  information.  Generators (ray rows and lineality rows) must be linearly
 *  independent, which normalized() guarantees. */
enum class Containment { Outside, Boundary, Interior };
Containment cone_containment(const ZMat& rays, const ZMat& lineality, const QVec& w);

/** One transversal crossing of the axis ray {w - t*e_axis : t>0} (or its
 *  ascending mirror {w + t*e_axis : t>0}) with a cone of the collection. */
struct HalfLineCrossing {
  std::size_t cone = 0;
  Rat t;            // strictly positive parameter of the crossing point
  ZVec normal;      // primitive cone normal, oriented with normal(axis) > 0
  Int multiplicity; // weight of the crossed cone
  bool boundary = false;  // the crossing point lies on the cone's boundary
};

/** Strict mode treats any non-transversal incidence as an error:
 *  Errc::ObjectiveInCone when w itself lies in a cone, and
 *  Errc::GenericityViolation for boundary crossings or for rays running
 *  inside a cone's hyperplane; membership outranks grazing when both occur
 *  on one scan, independent of cone order.  Tolerant mode keeps boundary crossings
 *  (flagged) and silently skips in-plane runs; it is meant for window
 *  scanning where only crossing parameters matter. */
enum class ShootMode { Strict, Tolerant };

/** Per-cone caches (normals and coefficient solvers) for a codimension-one
 *  collection.  Construction checks that every cone has dimension exactly
 *  ambient_dim - 1 (Errc::WrongCodimension) and positive weights.  The
 *  collection is copied and kept alongside the caches. */
class CodimOneSolvers {
 public:
  explicit CodimOneSolvers(TropicalCollection c);

  const TropicalCollection& collection() const { return c_; }

  /** Primitive sign-normalized normal of cone k. */
  const ZVec& normal(std::size_t k) const { return cones_[k].normal; }

  /** All crossings of {w - t*e_axis : t > 0} (ascending: {w + t*e_axis})
   *  with the collection, sorted by increasing t (ties in input order). */
  std::vector<HalfLineCrossing> crossings(const QVec& w, Index axis, ShootMode mode,
                                          bool ascending = false) const;

  /** Componentwise bound R with R_i = sum over cones of m * |normal_i|; every
   *  reconstructed vertex satisfies 0 <= v_i <= R_i. */
  ZVec coordinate_bounds() const;

 private:
  struct ConeCache {
    ZVec normal;                // primitive, first nonzero entry positive
    QMat inv;                   // inverse of the pivot-row block of [rays;lin]^T
    std::vector<Index> pivots;  // pivot row indices (size n-1)
    Index check_row = -1;       // the single remaining row, for consistency
    Index n_rays = 0;           // leading coefficients that must stay >= 0
  };

  // Coefficients of q in the cone's generators (rays first, then lineality);
  // q must lie in the cone's hyperplane.
  QVec coefficients(std::size_t k, const QVec& q) const;

  TropicalCollection c_;
  std::vector<ConeCache> cones_;
};

}  // namespace tropnp

#endif  // TROPNP_FAN_HPP
