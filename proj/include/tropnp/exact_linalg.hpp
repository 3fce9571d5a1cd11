#ifndef TROPNP_EXACT_LINALG_HPP
#define TROPNP_EXACT_LINALG_HPP

#include <optional>

#include "tropnp/numeric.hpp"

namespace tropnp {

/** Result of a row-style Hermite reduction: H = U * M with U unimodular,
 *  pivots positive, entries above each pivot reduced into [0, pivot), and the
 *  zero rows collected at the bottom. */
struct HnfResult {
  ZMat H;
  ZMat U;
  Index rank = 0;
};

HnfResult hermite_normal_form(const ZMat& M);

/** Smith decomposition U * M * V = D with U, V unimodular and the diagonal
 *  divisor chain d1 | d2 | ... | dr (all positive).  Implemented as its own
 *  two-sided reduction that shares only scalar helpers with the Hermite
 *  path, so the two can check each other. */
struct SnfResult {
  ZMat D;
  ZMat U;
  ZMat V;
  Index rank = 0;
};

SnfResult smith_normal_form(const ZMat& M);

/** Fraction-free determinant of a square integer matrix (Bareiss). */
Int determinant(const ZMat& M);

/** Gcd of all maximal (min(rows,cols)-sized) minors of M, taken positive;
 *  returns zero exactly when the rank of M is below min(rows, cols).  Computed
 *  from Hermite pivots rather than by enumerating minors. */
Int gcd_maximal_minors(const ZMat& M);

/** Gcd-of-minors quotient gcd_mm(A*B0) / gcd_mm(B0), with B0 a basis of the
 *  lattice D generated by the columns of B.  This equals the index of
 *  A(sat D) inside the saturation of the image, where sat D is the
 *  saturation of D in its own span: the quotient is invariant under the
 *  choice of generating set and silently saturates the source, which is
 *  precisely the weight factor the push-forward formula needs.
 *
 *  Throws Errc::ZeroLattice when B has no nonzero column and Errc::RankDrop
 *  when A collapses the rank of D (the quotient is meaningless there; see
 *  image_saturation_index for a rank-drop-tolerant measurement of the image
 *  lattice itself). */
Int lattice_index(const ZMat& A, const ZMat& B);

/** Index of the actual image lattice A(D) inside its own saturation.  Unlike
 *  lattice_index this stays well defined when A drops the rank of D: it
 *  reduces A*B to a basis of the image lattice and measures that basis
 *  directly. */
Int image_saturation_index(const ZMat& A, const ZMat& B);

/** Independent oracle for lattice_index denominators/numerators: the product
 *  of the elementary divisors of M.  Requires full column rank
 *  (Errc::RankDrop otherwise). */
Int smith_index_oracle(const ZMat& M);

/** Exact rectangular solve (fraction-free elimination on a common-denominator
 *  scaling of [M | b]).  Unique reports the single solution; Inconsistent and
 *  Underdetermined are expected outcomes, not exceptions. */
struct SolveOutcome {
  enum class Status { Unique, Inconsistent, Underdetermined };
  Status status = Status::Inconsistent;
  QVec x;  // populated only for Unique

  bool unique() const { return status == Status::Unique; }
};

SolveOutcome solve_exact(const QMat& M, const QVec& b);

/** Rows form a basis of the saturated integer kernel {x : M x = 0} of M; each
 *  row is primitive with its first nonzero entry positive.  Empty (0 x cols)
 *  when the kernel is trivial. */
ZMat kernel_basis(const QMat& M);

/** Primitive integral vector positively parallel to v (direction preserved).
 *  Throws Errc::ZeroVector on the zero vector. */
ZVec make_primitive(const QVec& v);
ZVec make_primitive_z(const ZVec& v);

/** Rank over the rationals. */
Index rank_of(const QMat& M);
Index rank_of_z(const ZMat& M);

/** Columns form a basis of the lattice generated by the columns of B
 *  (column count equals the lattice rank). */
ZMat column_lattice_basis(const ZMat& B);

/** Rows form a basis of rowspan(M) intersected with the integer lattice, i.e.
 *  the saturation of the row lattice. */
ZMat saturated_row_basis(const ZMat& M);

/** True when the rows of L generate a saturated (primitive) sublattice.
 *  L must have full row rank. */
bool is_primitive_lattice(const ZMat& L);

/** Quotient of the ambient lattice by the primitive lattice spanned by the
 *  rows of L.  project() maps x to coordinates in Z^{n-l} with kernel exactly
 *  the L-lattice; lift() is a section of it.  Construction throws
 *  Errc::NonPrimitiveLattice when the rows do not form a primitive basis. */
class LatticeQuotient {
 public:
  explicit LatticeQuotient(const ZMat& L);

  Index ambient_dim() const { return n_; }
  Index quotient_dim() const { return n_ - l_; }

  ZVec project(const ZVec& x) const;
  QVec project(const QVec& x) const;
  ZVec lift(const ZVec& coords) const;

 private:
  Index n_ = 0;
  Index l_ = 0;
  ZMat U_;     // unimodular; projection reads the trailing n-l coordinates
  ZMat Uinv_;  // exact inverse of U_
};

/** First nonzero entry made positive by negating the whole vector if needed;
 *  input must be nonzero. */
ZVec sign_normalize(const ZVec& v);

}  // namespace tropnp

#endif  // TROPNP_EXACT_LINALG_HPP
