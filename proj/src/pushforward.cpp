#include "tropnp/pushforward.hpp"

#include <vector>

#include "tropnp/exact_linalg.hpp"

namespace tropnp {
namespace {

// Coefficients for deterministic interior sample points: distinct primes
// keep the samples away from low-height degeneracies, and shifting the
// start index gives a fresh point on retry.
constexpr long kPrimes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
                            47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103,
                            107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
                            179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241,
                            251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313};
constexpr int kSampleAttempts = 32;

bool zvec_is_zero(const ZVec& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] != 0) return false;
  return true;
}

ZMat vstack(const ZMat& top, const ZMat& bottom) {
  ZMat r(top.rows() + bottom.rows(), top.cols() > 0 ? top.cols() : bottom.cols());
  if (top.rows() > 0) r.topRows(top.rows()) = top;
  if (bottom.rows() > 0) r.bottomRows(bottom.rows()) = bottom;
  return r;
}

// Rows of m embedded into width `total`, starting at column `offset`.
ZMat embed_rows(const ZMat& m, Index total, Index offset) {
  ZMat r = ZMat::Zero(m.rows(), total);
  if (m.rows() > 0 && m.cols() > 0) r.block(0, offset, m.rows(), m.cols()) = m;
  return r;
}

ZMat doubled_identity(Index n) {
  ZMat a(n, 2 * n);
  a.leftCols(n) = ZMat::Identity(n, n);
  a.rightCols(n) = ZMat::Identity(n, n);
  return a;
}

// Span generators (rows, in the product space) of the product cone
// sigma x tau, lineality copies included.
ZMat product_span_rows(const WeightedCone& sigma, const WeightedCone& tau, const ZMat& lin,
                       Index n) {
  ZMat rows(0, 2 * n);
  rows = vstack(rows, embed_rows(sigma.rays, 2 * n, 0));
  rows = vstack(rows, embed_rows(tau.rays, 2 * n, n));
  rows = vstack(rows, embed_rows(lin, 2 * n, 0));
  rows = vstack(rows, embed_rows(lin, 2 * n, n));
  return rows;
}

}  // namespace

TropicalCollection product_fan(const TropicalCollection& t1, const TropicalCollection& t2) {
  validate_collection(t1);
  validate_collection(t2);
  const Index n1 = t1.ambient_dim;
  const Index n2 = t2.ambient_dim;
  TropicalCollection out;
  out.ambient_dim = n1 + n2;
  out.lineality = vstack(embed_rows(t1.lineality.rows() > 0 ? t1.lineality : ZMat(0, n1),
                                    n1 + n2, 0),
                         embed_rows(t2.lineality.rows() > 0 ? t2.lineality : ZMat(0, n2),
                                    n1 + n2, n1));
  out.cones.reserve(t1.cones.size() * t2.cones.size());
  for (const WeightedCone& a : t1.cones)
    for (const WeightedCone& b : t2.cones) {
      WeightedCone wc;
      wc.rays = vstack(embed_rows(a.rays.rows() > 0 ? a.rays : ZMat(0, n1), n1 + n2, 0),
                       embed_rows(b.rays.rows() > 0 ? b.rays : ZMat(0, n2), n1 + n2, n1));
      wc.multiplicity = (a.multiplicity == 0 || b.multiplicity == 0)
                            ? Int(0)
                            : Int(a.multiplicity * b.multiplicity);
      out.cones.push_back(std::move(wc));
    }
  return out;
}

TropicalCollection minkowski_image(const TropicalCollection& t, const MonomialMapSpec& map) {
  TropicalCollection tn = normalized(t);
  if (map.A.rows() < 1) fail(Errc::BadInput, "minkowski_image: map has no target coordinates");
  if (map.A.cols() != tn.ambient_dim)
    fail(Errc::DimensionMismatch, "minkowski_image: map width differs from the ambient dimension");

  const ZMat at = map.A.transpose();
  TropicalCollection out;
  out.ambient_dim = map.A.rows();
  out.lineality =
      tn.lineality.rows() > 0 ? ZMat(tn.lineality * at) : ZMat(0, out.ambient_dim);
  if (tn.cones.empty()) return normalized(out);

  // Expected image dimension: the map collapses the lineality by a fixed
  // amount; cones whose images fall below it are boundary debris.
  const Index e = pure_dimension(tn);
  const Index l = tn.lineality.rows();
  const Index l_img = out.lineality.rows() > 0 ? rank_of_z(out.lineality) : 0;
  const Index d_target = e - l + l_img;

  for (const WeightedCone& wc : tn.cones) {
    ZMat img = wc.rays.rows() > 0 ? ZMat(wc.rays * at) : ZMat(0, out.ambient_dim);
    if (rank_of_z(vstack(img, out.lineality)) != d_target) continue;
    WeightedCone iwc;
    iwc.rays = std::move(img);
    iwc.multiplicity = 0;  // pending: weights are point-local
    out.cones.push_back(std::move(iwc));
  }
  return normalized(out);
}

Int pushforward_multiplicity(const QVec& w, const std::vector<FiberContribution>& fibers,
                             const ZMat& w_cone_span, const MonomialMapSpec& map) {
  if (map.delta < 1) fail(Errc::BadInput, "pushforward_multiplicity: degree must be positive");
  if (fibers.empty()) fail(Errc::BadInput, "pushforward_multiplicity: empty fiber list");
  const Index d = map.A.rows();
  const Index r = map.A.cols();
  if (w.size() != d)
    fail(Errc::DimensionMismatch, "pushforward_multiplicity: point length differs from the target");
  if (w_cone_span.rows() > 0 && w_cone_span.cols() != d)
    fail(Errc::DimensionMismatch, "pushforward_multiplicity: target span width mismatch");

  if (map.lambda.rows() > 0) {
    if (map.lambda.cols() != r)
      fail(Errc::DimensionMismatch, "pushforward_multiplicity: lattice width mismatch");
    if (rank_of_z(map.lambda) != map.lambda.rows())
      fail(Errc::BadInput, "pushforward_multiplicity: source lattice rows are dependent");
    if (!is_primitive_lattice(map.lambda))
      fail(Errc::NonPrimitiveLattice, "pushforward_multiplicity: source lattice is not saturated");
    // The image lattice may have lower rank than the source (the map folds
    // lattice directions together); only its saturation matters, and the
    // zero lattice is trivially saturated.
    const ZMat img_lattice = map.lambda * map.A.transpose();
    bool img_zero = true;
    for (Index i = 0; i < img_lattice.rows() && img_zero; ++i)
      img_zero = zvec_is_zero(img_lattice.row(i).transpose());
    if (!img_zero &&
        image_saturation_index(map.A, ZMat(map.lambda.transpose())) != 1)
      fail(Errc::NonPrimitiveLattice,
           "pushforward_multiplicity: image of the source lattice is not saturated");
  }

  const Index target_rank = w_cone_span.rows() > 0 ? rank_of_z(w_cone_span) : 0;
  const QMat aq = to_qmat(map.A);
  Int total = 0;
  for (const FiberContribution& f : fibers) {
    if (f.point.size() != r)
      fail(Errc::DimensionMismatch, "pushforward_multiplicity: fiber point length mismatch");
    if (f.span_rows.rows() == 0 || f.span_rows.cols() != r)
      fail(Errc::BadInput, "pushforward_multiplicity: fiber span is missing or mismatched");
    if (f.multiplicity < 1)
      fail(Errc::BadInput, "pushforward_multiplicity: fiber weight must be positive");
    QVec image(d);
    for (Index i = 0; i < d; ++i) {
      Rat s = 0;
      for (Index j = 0; j < r; ++j) s += Rat(map.A(i, j)) * f.point[j];
      image[i] = s;
    }
    for (Index i = 0; i < d; ++i)
      if (image[i] != w[i])
        fail(Errc::BadInput, "pushforward_multiplicity: fiber point does not map to w");

    // Directions the map kills inside this fiber's span must come from the
    // source lattice, otherwise the fiber is positive-dimensional.
    ZMat span_perp = kernel_basis(to_qmat(f.span_rows));
    ZMat killed = kernel_basis(to_qmat(vstack(map.A, span_perp)));
    if (killed.rows() > 0) {
      const bool inside_lattice =
          map.lambda.rows() > 0 &&
          rank_of_z(vstack(map.lambda, killed)) == rank_of_z(map.lambda);
      if (!inside_lattice)
        fail(Errc::InfiniteFiber, "pushforward_multiplicity: fiber is not isolated modulo the lattice");
    }

    ZMat basis = saturated_row_basis(f.span_rows);
    ZMat image_span = basis * map.A.transpose();
    if (rank_of_z(image_span) != target_rank)
      fail(Errc::BadInput, "pushforward_multiplicity: fiber span does not map onto the target span");
    total += f.multiplicity * image_saturation_index(map.A, basis.transpose());
  }

  if (total % map.delta != 0)
    fail(Errc::NonIntegralResult,
         "pushforward_multiplicity: index sum is not divisible by the degree");
  return total / map.delta;
}

Int hadamard_multiplicity_at(const TropicalCollection& t, const QVec& w, Int delta) {
  if (delta < 1) fail(Errc::BadInput, "hadamard_multiplicity_at: degree must be positive");
  TropicalCollection tn = normalized(t);
  const Index n = tn.ambient_dim;
  if (w.size() != n)
    fail(Errc::DimensionMismatch, "hadamard_multiplicity_at: point length differs from the ambient");
  for (const WeightedCone& wc : tn.cones)
    if (wc.multiplicity < 1)
      fail(Errc::BadInput, "hadamard_multiplicity_at: source weights are pending");

  const ZMat lin = tn.lineality.rows() > 0 ? tn.lineality : ZMat(0, n);
  const ZMat a2 = doubled_identity(n);
  Int total = 0;
  for (const WeightedCone& sigma : tn.cones)
    for (const WeightedCone& tau : tn.cones) {
      const Index ks = sigma.rays.rows();
      const Index kt = tau.rays.rows();
      QMat m(n, ks + kt + lin.rows());
      for (Index j = 0; j < ks; ++j)
        for (Index i = 0; i < n; ++i) m(i, j) = Rat(sigma.rays(j, i));
      for (Index j = 0; j < kt; ++j)
        for (Index i = 0; i < n; ++i) m(i, ks + j) = Rat(tau.rays(j, i));
      for (Index j = 0; j < lin.rows(); ++j)
        for (Index i = 0; i < n; ++i) m(i, ks + kt + j) = Rat(lin(j, i));

      SolveOutcome sol = solve_exact(m, w);
      if (sol.status == SolveOutcome::Status::Inconsistent) continue;
      if (sol.status == SolveOutcome::Status::Underdetermined)
        fail(Errc::InfiniteFiber, "hadamard_multiplicity_at: fiber is not isolated at this point");

      bool outside = false;
      bool boundary = false;
      for (Index j = 0; j < ks + kt; ++j) {
        if (sol.x[j] < 0) outside = true;
        if (sol.x[j] == 0) boundary = true;
      }
      if (outside) continue;
      if (boundary)
        fail(Errc::GenericityViolation,
             "hadamard_multiplicity_at: point meets a fiber cone boundary");

      ZMat basis = saturated_row_basis(product_span_rows(sigma, tau, lin, n));
      total +=
          sigma.multiplicity * tau.multiplicity * image_saturation_index(a2, basis.transpose());
    }

  if (total == 0)
    fail(Errc::Internal, "hadamard_multiplicity_at: no fiber cone contains the point");
  if (total % delta != 0)
    fail(Errc::NonIntegralResult,
         "hadamard_multiplicity_at: index sum is not divisible by the degree");
  return total / delta;
}

TropicalCollection hadamard_square(const TropicalCollection& t, Int delta) {
  if (delta < 1) fail(Errc::BadInput, "hadamard_square: degree must be positive");
  TropicalCollection tn = normalized(t);
  const Index n = tn.ambient_dim;

  MonomialMapSpec map;
  map.A = doubled_identity(n);
  map.delta = delta;
  map.lambda = vstack(embed_rows(tn.lineality, 2 * n, 0), embed_rows(tn.lineality, 2 * n, n));

  TropicalCollection image = minkowski_image(product_fan(tn, tn), map);
  for (std::size_t k = 0; k < image.cones.size(); ++k) {
    WeightedCone& target = image.cones[k];
    Error last(Errc::GenericityViolation,
               "hadamard_square: no regular sample point found for an image cone");
    bool assigned = false;
    if (target.rays.rows() + kSampleAttempts > Index(sizeof(kPrimes) / sizeof(kPrimes[0])))
      fail(Errc::TooLarge, "hadamard_square: image cone has too many rays to sample");
    for (int attempt = 0; attempt < kSampleAttempts && !assigned; ++attempt) {
      QVec w = QVec::Zero(n);
      for (Index j = 0; j < target.rays.rows(); ++j)
        for (Index i = 0; i < n; ++i) w[i] += Rat(kPrimes[attempt + j]) * Rat(target.rays(j, i));

      bool regular = true;
      for (std::size_t other = 0; other < image.cones.size(); ++other) {
        if (other == k) continue;
        if (cone_containment(image.cones[other].rays, image.lineality, w) != Containment::Outside)
          regular = false;
      }
      if (!regular) continue;

      try {
        target.multiplicity = hadamard_multiplicity_at(tn, w, delta);
        assigned = true;
      } catch (const Error& e) {
        if (e.code() != Errc::GenericityViolation && e.code() != Errc::InfiniteFiber) throw;
        last = e;
      }
    }
    if (!assigned) throw last;
  }
  return image;
}

TropicalCollection quotient_by_lineality(const TropicalCollection& t, const ZMat& l_rows) {
  validate_collection(t);
  if (l_rows.rows() == 0) return t;
  if (l_rows.cols() != t.ambient_dim)
    fail(Errc::DimensionMismatch, "quotient_by_lineality: lattice width differs from the ambient");
  const ZMat lin = t.lineality.rows() > 0 ? t.lineality : ZMat(0, t.ambient_dim);
  if (rank_of_z(vstack(lin, l_rows)) != rank_of_z(lin))
    fail(Errc::NotInLineality, "quotient_by_lineality: lattice leaves the lineality span");

  LatticeQuotient q(l_rows);
  TropicalCollection out;
  out.ambient_dim = q.quotient_dim();
  std::vector<ZVec> lin_rows;
  for (Index i = 0; i < lin.rows(); ++i) {
    ZVec img = q.project(ZVec(lin.row(i).transpose()));
    if (!zvec_is_zero(img)) lin_rows.push_back(std::move(img));
  }
  out.lineality = ZMat(static_cast<Index>(lin_rows.size()), out.ambient_dim);
  for (Index i = 0; i < out.lineality.rows(); ++i)
    out.lineality.row(i) = lin_rows[static_cast<std::size_t>(i)].transpose();

  for (const WeightedCone& wc : t.cones) {
    std::vector<ZVec> rows;
    for (Index i = 0; i < wc.rays.rows(); ++i) {
      ZVec img = q.project(ZVec(wc.rays.row(i).transpose()));
      if (!zvec_is_zero(img)) rows.push_back(std::move(img));
    }
    WeightedCone pc;
    pc.rays = ZMat(static_cast<Index>(rows.size()), out.ambient_dim);
    for (Index i = 0; i < pc.rays.rows(); ++i)
      pc.rays.row(i) = rows[static_cast<std::size_t>(i)].transpose();
    pc.multiplicity = wc.multiplicity;
    out.cones.push_back(std::move(pc));
  }
  return normalized(out);
}

}  // namespace tropnp
