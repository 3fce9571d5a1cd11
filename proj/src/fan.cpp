#include "tropnp/fan.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "tropnp/simplex_hull.hpp"

namespace tropnp {

namespace {

bool zero_row(const ZMat& m, Index i) {
  for (Index j = 0; j < m.cols(); ++j)
    if (m(i, j) != 0) return false;
  return true;
}

bool zero_vec(const ZVec& v) {
  for (Index j = 0; j < v.size(); ++j)
    if (v(j) != 0) return false;
  return true;
}

struct RayListLess {
  bool operator()(const std::vector<ZVec>& a, const std::vector<ZVec>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (lex_less(a[i], b[i])) return true;
      if (lex_less(b[i], a[i])) return false;
    }
    return false;
  }
};

Rat dot_zq(const ZVec& a, const QVec& b) {
  Rat s = 0;
  for (Index j = 0; j < a.size(); ++j) s += Rat(a(j)) * b(j);
  return s;
}

}  // namespace

void validate_collection(const TropicalCollection& c) {
  if (c.ambient_dim < 1) fail(Errc::BadInput, "ambient dimension must be positive");
  if (c.lineality.rows() > 0 && c.lineality.cols() != c.ambient_dim)
    fail(Errc::DimensionMismatch, "lineality width differs from the ambient dimension");
  for (const WeightedCone& k : c.cones) {
    if (k.rays.rows() > 0 && k.rays.cols() != c.ambient_dim)
      fail(Errc::DimensionMismatch, "cone ray width differs from the ambient dimension");
    if (k.multiplicity < 0) fail(Errc::BadInput, "negative cone multiplicity");
    for (Index i = 0; i < k.rays.rows(); ++i)
      if (zero_row(k.rays, i)) fail(Errc::ZeroVector, "zero ray in a cone");
  }
}

TropicalCollection normalized(TropicalCollection c) {
  validate_collection(c);
  const Index n = c.ambient_dim;

  // Canonical lineality: saturated basis of the span in Hermite form, so any
  // presentation of the same space produces identical rows.
  if (c.lineality.rows() > 0) {
    ZMat sat = saturated_row_basis(c.lineality);
    HnfResult hnf = hermite_normal_form(sat);
    c.lineality = hnf.H.topRows(hnf.rank);
  } else {
    c.lineality = ZMat(0, n);
  }
  LatticeQuotient quot(c.lineality);

  std::map<std::vector<ZVec>, Int, RayListLess> merged;
  auto add_cone = [&](std::vector<ZVec> rays, const Int& mult) {
    std::sort(rays.begin(), rays.end(), lex_less);
    auto it = merged.find(rays);
    if (it == merged.end()) {
      merged.emplace(std::move(rays), mult);
    } else if (it->second != mult) {
      fail(Errc::MultiplicityConflict, "one cone carries two different weights");
    }
  };

  for (const WeightedCone& wc : c.cones) {
    // Rays modulo lineality: primitive quotient images, deduplicated, sorted.
    std::vector<ZVec> images;
    for (Index i = 0; i < wc.rays.rows(); ++i) {
      ZVec img = quot.project(ZVec(wc.rays.row(i).transpose()));
      if (zero_vec(img)) continue;  // ray inside the lineality space adds nothing
      img = make_primitive_z(img);
      bool seen = false;
      for (const ZVec& e : images)
        if (e == img) {
          seen = true;
          break;
        }
      if (!seen) images.push_back(std::move(img));
    }
    std::sort(images.begin(), images.end(), lex_less);

    auto lifted = [&](const std::vector<Index>& pick) {
      std::vector<ZVec> rays;
      rays.reserve(pick.size());
      for (Index p : pick) rays.push_back(quot.lift(images[p]));
      return rays;
    };

    if (images.empty()) {
      add_cone({}, wc.multiplicity);
      continue;
    }
    ZMat img_mat(static_cast<Index>(images.size()), quot.quotient_dim());
    for (Index i = 0; i < img_mat.rows(); ++i) img_mat.row(i) = images[i].transpose();
    if (rank_of_z(img_mat) == img_mat.rows()) {
      std::vector<Index> all(images.size());
      for (std::size_t i = 0; i < images.size(); ++i) all[i] = static_cast<Index>(i);
      add_cone(lifted(all), wc.multiplicity);
      continue;
    }

    // Non-simplicial: triangulate in exact coordinates of the saturated span
    // of the images, where the cone is full-dimensional and pointedness is
    // detectable.
    ZMat span = saturated_row_basis(img_mat);
    QMat span_t = to_qmat(span).transpose();
    std::vector<ZVec> coords;
    coords.reserve(images.size());
    for (const ZVec& img : images) {
      SolveOutcome s = solve_exact(span_t, to_qvec(img));
      if (!s.unique() || !is_integral(s.x))
        fail(Errc::Internal, "ray failed to embed in its own saturated span");
      coords.push_back(to_zvec(s.x));
    }
    for (const std::vector<Index>& piece : triangulate_pointed_cone(coords))
      add_cone(lifted(piece), wc.multiplicity);
  }

  TropicalCollection out;
  out.ambient_dim = n;
  out.lineality = c.lineality;
  out.cones.reserve(merged.size());
  for (const auto& [rays, mult] : merged) {
    WeightedCone wc;
    wc.rays = ZMat(static_cast<Index>(rays.size()), n);
    for (Index i = 0; i < wc.rays.rows(); ++i) wc.rays.row(i) = rays[i].transpose();
    wc.multiplicity = mult;
    out.cones.push_back(std::move(wc));
  }
  return out;
}

Index pure_dimension(const TropicalCollection& c) {
  if (c.cones.empty()) fail(Errc::BadInput, "empty collection has no dimension");
  const Index d = c.cones.front().rays.rows() + c.lineality.rows();
  for (const WeightedCone& wc : c.cones)
    if (wc.rays.rows() + c.lineality.rows() != d)
      fail(Errc::BadInput, "collection mixes cones of different dimensions");
  return d;
}

bool is_balanced_curve(const TropicalCollection& c) {
  ZVec sum = ZVec::Zero(c.ambient_dim);
  for (const WeightedCone& wc : c.cones) {
    if (wc.rays.rows() != 1) fail(Errc::NotACurve, "balancing needs one ray per cone");
    if (wc.multiplicity < 1) fail(Errc::BadInput, "balancing needs positive weights");
    sum += wc.multiplicity * ZVec(wc.rays.row(0).transpose());
  }
  if (zero_vec(sum)) return true;
  if (c.lineality.rows() == 0) return false;
  SolveOutcome s = solve_exact(to_qmat(c.lineality).transpose(), to_qvec(sum));
  return s.unique();
}

Containment cone_containment(const ZMat& rays, const ZMat& lineality, const QVec& w) {
  const Index n = w.size();
  const Index kr = rays.rows(), kl = lineality.rows();
  if (kr + kl == 0) {
    for (Index j = 0; j < n; ++j)
      if (w(j) != 0) return Containment::Outside;
    return Containment::Interior;
  }
  QMat B(n, kr + kl);
  for (Index j = 0; j < kr; ++j) B.col(j) = to_qvec(ZVec(rays.row(j).transpose()));
  for (Index j = 0; j < kl; ++j) B.col(kr + j) = to_qvec(ZVec(lineality.row(j).transpose()));
  SolveOutcome s = solve_exact(B, w);
  if (s.status == SolveOutcome::Status::Inconsistent) return Containment::Outside;
  if (s.status == SolveOutcome::Status::Underdetermined)
    fail(Errc::Internal, "dependent cone generators in containment test");
  bool boundary = false;
  for (Index j = 0; j < kr; ++j) {
    if (s.x[j] < 0) return Containment::Outside;
    if (s.x[j] == 0) boundary = true;
  }
  return boundary ? Containment::Boundary : Containment::Interior;
}

CodimOneSolvers::CodimOneSolvers(TropicalCollection c) : c_(std::move(c)) {
  validate_collection(c_);
  const Index n = c_.ambient_dim;
  const Index k = n - 1;
  cones_.reserve(c_.cones.size());
  for (const WeightedCone& wc : c_.cones) {
    if (wc.multiplicity < 1) fail(Errc::BadInput, "cone weight is not positive");
    if (wc.rays.rows() + c_.lineality.rows() != k)
      fail(Errc::WrongCodimension, "cone dimension differs from ambient dimension minus one");

    ConeCache cc;
    cc.n_rays = wc.rays.rows();
    ZMat M(k, n);
    if (wc.rays.rows() > 0) M.topRows(wc.rays.rows()) = wc.rays;
    if (c_.lineality.rows() > 0) M.bottomRows(c_.lineality.rows()) = c_.lineality;
    ZMat ker = kernel_basis(to_qmat(M));
    if (ker.rows() != 1)
      fail(Errc::WrongCodimension, "cone generators are linearly dependent");
    cc.normal = sign_normalize(ZVec(ker.row(0).transpose()));

    // Pivot rows of B = M^T picked greedily; the one left-over row serves as
    // the consistency check in coefficient solves.
    QMat B = to_qmat(M).transpose();
    QMat acc(0, k);
    std::vector<char> used(n, 0);
    for (Index r = 0; r < n && static_cast<Index>(cc.pivots.size()) < k; ++r) {
      QMat trial(acc.rows() + 1, k);
      if (acc.rows() > 0) trial.topRows(acc.rows()) = acc;
      trial.row(acc.rows()) = B.row(r);
      if (rank_of(trial) == trial.rows()) {
        acc = std::move(trial);
        cc.pivots.push_back(r);
        used[r] = 1;
      }
    }
    if (static_cast<Index>(cc.pivots.size()) != k)
      fail(Errc::Internal, "pivot search failed on independent generators");
    for (Index r = 0; r < n; ++r)
      if (!used[r]) cc.check_row = r;

    cc.inv = QMat(k, k);
    for (Index j = 0; j < k; ++j) {
      QVec e = QVec::Zero(k);
      e[j] = 1;
      SolveOutcome s = solve_exact(acc, e);
      if (!s.unique()) fail(Errc::Internal, "singular pivot block despite full rank");
      cc.inv.col(j) = s.x;
    }
    cones_.push_back(std::move(cc));
  }
}

QVec CodimOneSolvers::coefficients(std::size_t k, const QVec& q) const {
  const ConeCache& cc = cones_[k];
  const Index kdim = cc.inv.rows();
  QVec rhs(kdim);
  for (Index i = 0; i < kdim; ++i) rhs[i] = q[cc.pivots[i]];
  QVec x = cc.inv * rhs;
  const WeightedCone& wc = c_.cones[k];
  Rat lhs = 0;
  for (Index j = 0; j < cc.n_rays; ++j) lhs += Rat(wc.rays(j, cc.check_row)) * x[j];
  for (Index j = 0; j < c_.lineality.rows(); ++j)
    lhs += Rat(c_.lineality(j, cc.check_row)) * x[cc.n_rays + j];
  if (lhs != q[cc.check_row])
    fail(Errc::Internal, "coefficient solve left the cone hyperplane");
  return x;
}

std::vector<HalfLineCrossing> CodimOneSolvers::crossings(const QVec& w, Index axis,
                                                         ShootMode mode, bool ascending) const {
  const Index n = c_.ambient_dim;
  if (w.size() != n) fail(Errc::DimensionMismatch, "base point of the wrong dimension");
  if (axis < 0 || axis >= n) fail(Errc::BadInput, "axis out of range");
  const int step = ascending ? 1 : -1;

  std::vector<HalfLineCrossing> hits;
  // Grazing incidences are held back until the whole scan is done: when the
  // base point itself lies in a cone, that is the dominant condition and
  // must be reported no matter which cone the scan meets first.
  const char* grazed = nullptr;
  for (std::size_t k = 0; k < cones_.size(); ++k) {
    const ConeCache& cc = cones_[k];
    const ZVec& l = cc.normal;
    const Rat lw = dot_zq(l, w);
    const Int& li = l(axis);

    if (li == 0) {
      if (lw != 0) continue;  // line parallel to and off the hyperplane
      // The whole line runs inside the cone's hyperplane.  Coefficients are
      // affine in t, x(t) = x0 - t*x1; intersect the ray-coefficient
      // feasibility interval with t >= 0.
      QVec x0 = coefficients(k, w);
      QVec e = QVec::Zero(n);
      e[axis] = -step;  // coefficients are affine in t, x(t) = x0 - t*x1
      QVec x1 = coefficients(k, e);
      bool feasible = true, has_hi = false;
      Rat lo = 0, hi = 0;
      for (Index j = 0; j < cc.n_rays && feasible; ++j) {
        if (x1[j] == 0) {
          if (x0[j] < 0) feasible = false;
        } else if (x1[j] > 0) {
          Rat b = x0[j] / x1[j];
          if (!has_hi || b < hi) {
            hi = b;
            has_hi = true;
          }
        } else {
          Rat b = x0[j] / x1[j];
          if (b > lo) lo = b;
        }
      }
      if (feasible && has_hi && hi < lo) feasible = false;
      if (!feasible) continue;
      if (mode == ShootMode::Tolerant) continue;  // in-plane runs carry no crossing
      bool at_zero = true;
      for (Index j = 0; j < cc.n_rays; ++j)
        if (x0[j] < 0) {
          at_zero = false;
          break;
        }
      if (at_zero) fail(Errc::ObjectiveInCone, "base point lies in a cone of the collection");
      if (!grazed) grazed = "axis ray runs inside a cone";
      continue;
    }

    Rat t = -step * lw / Rat(li);
    if (t < 0) continue;
    if (t == 0) {
      QVec x0 = coefficients(k, w);
      bool inside = true;
      for (Index j = 0; j < cc.n_rays; ++j)
        if (x0[j] < 0) {
          inside = false;
          break;
        }
      if (!inside) continue;
      if (mode == ShootMode::Tolerant) continue;
      fail(Errc::ObjectiveInCone, "base point lies in a cone of the collection");
    }

    QVec q = w;
    q[axis] += step * t;
    QVec x = coefficients(k, q);
    bool neg = false, zero = false;
    for (Index j = 0; j < cc.n_rays; ++j) {
      if (x[j] < 0) {
        neg = true;
        break;
      }
      if (x[j] == 0) zero = true;
    }
    if (neg) continue;
    if (zero && mode == ShootMode::Strict) {
      if (!grazed) grazed = "axis ray meets a cone boundary";
      continue;
    }

    HalfLineCrossing h;
    h.cone = k;
    h.t = t;
    if (li > 0)
      h.normal = l;
    else
      h.normal = -l;
    h.multiplicity = c_.cones[k].multiplicity;
    h.boundary = zero;
    hits.push_back(std::move(h));
  }
  if (grazed) fail(Errc::GenericityViolation, grazed);
  std::stable_sort(hits.begin(), hits.end(),
                   [](const HalfLineCrossing& a, const HalfLineCrossing& b) { return a.t < b.t; });
  return hits;
}

ZVec CodimOneSolvers::coordinate_bounds() const {
  ZVec r = ZVec::Zero(c_.ambient_dim);
  for (std::size_t k = 0; k < cones_.size(); ++k)
    for (Index i = 0; i < r.size(); ++i)
      r[i] += c_.cones[k].multiplicity * abs(cones_[k].normal[i]);
  return r;
}

}  // namespace tropnp
