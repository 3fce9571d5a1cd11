#ifndef TROPNP_NEWTON_HPP
#define TROPNP_NEWTON_HPP

/** Reconstruction of a lattice polytope from the codimension-one skeleton of
 *  its normal fan.  The collection is read as the corner locus of an unknown
 *  piecewise-linear maximum: shooting axis rays from an objective vector
 *  recovers the coordinates of the optimal vertex, walking the crossing
 *  sequence visits neighboring vertices, a two-stage certificate validates
 *  facet inequalities, and a tangent-cone repair loop completes the vertex
 *  set from any nonempty seed.
 *
 *  Convention: objectives are maximized, and every reconstructed polytope is
 *  translated into the positive orthant so that it touches all coordinate
 *  hyperplanes (componentwise minimum over vertices is zero).
 *
 *  All entry points expect the solvers to be built over a normalized()
 *  collection (primitive deduplicated rays, saturated lineality basis). */

#include <cstdint>
#include <string>
#include <vector>

#include "tropnp/fan.hpp"
#include "tropnp/symmetry.hpp"

namespace tropnp {

enum class WitnessSource { Shoot, Walk, FacetRepair };

/** A vertex of the reconstructed polytope plus an integral objective that
 *  attains it: re-shooting the objective reproduces the vertex. */
struct VertexWitness {
  ZVec vertex;
  ZVec objective;
  WitnessSource source = WitnessSource::Shoot;
};

/** An inequality normal . x <= bound valid on the reconstructed polytope;
 *  `certified` records a passed facet certificate (or, for polytopes of
 *  lower dimension than the ambient space, an affine-hull equation checked
 *  against every vertex). */
struct LedgerFacet {
  ZVec normal;
  Int bound = 0;
  bool certified = false;
};

/** The state complete_polytope ends with: vertices (closed under the group
 *  action), certified facets, and the primitive edge directions of the
 *  target polytope (the cone normals, deduplicated up to sign). */
struct PolytopeLedger {
  std::vector<VertexWitness> vertices;  // unique vertices, lex-sorted
  std::vector<LedgerFacet> facets;      // lex-sorted by (normal, bound)
  ZMat edge_directions;                 // rows, sign-normalized, lex-sorted
  CoordSymmetryGroup group;
};

/** The vertex maximizing the integral objective w: coordinate i is the
 *  multiplicity-weighted sum of |normal_i| over all cones crossed by the ray
 *  {w - t e_i : t > 0}.  Throws ObjectiveInCone when w lies on the
 *  collection and GenericityViolation when an axis ray grazes a cone
 *  boundary or runs inside a cone (perturb and retry, or use robust_shoot). */
VertexWitness ray_shoot(const CodimOneSolvers& s, const ZVec& w);

/** ray_shoot with deterministic genericity repair: on GenericityViolation
 *  the shot is re-issued at N*w + p, drawing a fresh seed-derived integral
 *  perturbation p per attempt, with N large enough that every strict
 *  objective comparison between candidate vertices survives, so the result
 *  is still a vertex maximizing w.  The witness carries the objective that
 *  actually landed.  ObjectiveInCone on w itself is never repaired: w on
 *  the collection has no unique optimum to preserve. */
VertexWitness robust_shoot(const CodimOneSolvers& s, const ZVec& w, std::uint64_t seed);

/** Result of one objective inside a batch shoot; `error`/`message` mirror
 *  the exception ray_shoot would have thrown. */
struct ShootOutcome {
  bool ok = false;
  VertexWitness witness;
  Errc error = Errc::Internal;
  std::string message;
};

/** Independent ray_shoot per objective; failures are collected per entry
 *  instead of aborting the batch. */
std::vector<ShootOutcome> ray_shoot_batch(const CodimOneSolvers& s, const std::vector<ZVec>& ws);

/** One transversal crossing (cone, axis, t) of an axis-parallel shot; the
 *  unit consumed by walk(). */
struct IntersectionRecord {
  std::size_t cone = 0;
  Index axis = 0;
  Rat t;
  bool boundary = false;
};

/** All transversal crossings of the n axis rays from w (strict genericity,
 *  same error behavior as ray_shoot), flattened across axes. */
std::vector<IntersectionRecord> shoot_records(const CodimOneSolvers& s, const ZVec& w,
                                              bool ascending = false);

/** Walks every axis crossing sequence away from `vertex`, the optimum at w.
 *  Per axis the records are sorted by parameter and grouped by ties; each
 *  tie group must share one primitive normal direction (NonParallelTie
 *  otherwise), and the walk steps vertex -> vertex -/+ (sum of tied
 *  multiplicities) * normal with the normal oriented positively in the axis
 *  coordinate (minus when descending, plus when ascending).  Each emitted
 *  witness carries an integral objective strictly between the two enclosing
 *  crossing parameters (scaled when no integer fits; past the last crossing
 *  the next integer is used).  InconsistentRecords flags nonpositive
 *  parameters or records whose cone is parallel to their axis. */
std::vector<VertexWitness> walk(const CodimOneSolvers& s, const ZVec& w, const ZVec& vertex,
                                const std::vector<IntersectionRecord>& records,
                                bool ascending = false);

/** An integral vector inside an open chamber of the complement of the
 *  collection, reached from w by stepping coordinates 1..n downward, each
 *  step staying strictly inside the window up to the first positive crossing
 *  (points are rescaled when the window admits no integer; cones are
 *  homogeneous, so membership is unchanged).  Returns w itself when w is
 *  already in no cone.  ExhaustedCoordinates after n steps signals a
 *  corrupt collection. */
ZVec find_chamber_vector(const CodimOneSolvers& s, const ZVec& w);

/** Two-stage facet certificate for normal . x <= bound.  Stage one collects
 *  the normals of every cone containing `normal` and fails unless they span
 *  a space of dimension ambient - lineality - 1 (the inequality's face is a
 *  facet of the polytope exactly then).  Stage two shoots from a chamber
 *  vector next to `normal` and accepts iff the optimal vertex lies on the
 *  proposed hyperplane. */
bool certify_facet(const CodimOneSolvers& s, const ZVec& normal, const Int& bound,
                   std::uint64_t seed);

/** Completes a seed vertex set to the full polytope: per orbit
 *  representative v the tangent cone is spanned by the differences u - v
 *  (u a known vertex) parallel to known edge directions, widened by any
 *  remaining differences it fails to cover; every facet of that cone is
 *  certified, and each failed certificate triggers a repair shot from a
 *  chamber vector near the failing normal, adding the new vertex's orbit
 *  and restarting.  When the tangent rays span less than the polytope
 *  dimension, orthogonal probe directions are certified in +- pairs to
 *  force discovery.  Certificates are cached across restarts.  Throws
 *  SeedMismatch when a seed does not re-shoot to itself, NoProgress when a
 *  full pass certifies nothing new and adds no vertex, and BadInput when
 *  the collection is not invariant under the group. */
PolytopeLedger complete_polytope(const CodimOneSolvers& s, const std::vector<VertexWitness>& seeds,
                                 const CoordSymmetryGroup& group, std::uint64_t seed);

/** grading * vertex; the grading-weighted degrees read off one vertex. */
ZVec multidegree(const ZMat& grading, const ZVec& vertex);

}  // namespace tropnp

#endif  // TROPNP_NEWTON_HPP
