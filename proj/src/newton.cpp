#include "tropnp/newton.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tropnp/exact_linalg.hpp"
#include "tropnp/hull.hpp"

namespace tropnp {

namespace {

bool same_vec(const ZVec& a, const ZVec& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool zero_vec(const ZVec& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] != 0) return false;
  return true;
}

Int dot_z(const ZVec& a, const ZVec& b) {
  Int s = 0;
  for (Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int rat_floor(const Rat& x) { return floor_div(numerator(x), denominator(x)); }

Int rat_ceil(const Rat& x) { return -floor_div(-numerator(x), denominator(x)); }

/** Integral objective whose optimum is the segment between two consecutive
 *  crossing parameters a < b on one axis: the nearest integer to the
 *  midpoint when the open window holds one, otherwise the whole point is
 *  scaled by the midpoint denominator first (cones are invariant under
 *  positive scaling, so no wall moves). */
ZVec objective_between(const ZVec& w, Index axis, int step, const Rat& a, const Rat& b) {
  const Rat mid = (a + b) / 2;
  const Int lo = rat_floor(a) + 1;
  const Int hi = rat_ceil(b) - 1;
  ZVec obj;
  if (lo <= hi) {
    Int t = nearest_div(numerator(mid), denominator(mid));
    if (t < lo) t = lo;
    if (t > hi) t = hi;
    obj = w;
    obj[axis] += step * t;
  } else {
    obj = w * denominator(mid);
    obj[axis] += step * numerator(mid);
  }
  return obj;
}

/** Rank of the set of normals of every cone whose closure contains z; the
 *  face selected by z is a facet exactly when this reaches one less than
 *  the dimension the collection spans. */
Index containing_normal_rank(const CodimOneSolvers& s, const ZVec& z) {
  const TropicalCollection& c = s.collection();
  const QVec zq = to_qvec(z);
  std::vector<ZVec> norms;
  for (std::size_t k = 0; k < c.cones.size(); ++k)
    if (cone_containment(c.cones[k].rays, c.lineality, zq) != Containment::Outside)
      norms.push_back(s.normal(k));
  if (norms.empty()) return 0;
  QMat m(static_cast<Index>(norms.size()), c.ambient_dim);
  for (Index i = 0; i < m.rows(); ++i) m.row(i) = to_qvec(norms[i]).transpose();
  return rank_of(m);
}

bool collections_equal(const TropicalCollection& a, const TropicalCollection& b) {
  if (a.ambient_dim != b.ambient_dim) return false;
  if (a.lineality.rows() != b.lineality.rows()) return false;
  for (Index i = 0; i < a.lineality.rows(); ++i)
    for (Index j = 0; j < a.ambient_dim; ++j)
      if (a.lineality(i, j) != b.lineality(i, j)) return false;
  if (a.cones.size() != b.cones.size()) return false;
  for (std::size_t k = 0; k < a.cones.size(); ++k) {
    if (a.cones[k].multiplicity != b.cones[k].multiplicity) return false;
    if (a.cones[k].rays.rows() != b.cones[k].rays.rows()) return false;
    for (Index i = 0; i < a.cones[k].rays.rows(); ++i)
      for (Index j = 0; j < a.ambient_dim; ++j)
        if (a.cones[k].rays(i, j) != b.cones[k].rays(i, j)) return false;
  }
  return true;
}

struct LexVecLess {
  bool operator()(const ZVec& a, const ZVec& b) const { return lex_less(a, b); }
};

struct FacetKeyLess {
  bool operator()(const std::pair<ZVec, Int>& a, const std::pair<ZVec, Int>& b) const {
    if (lex_less(a.first, b.first)) return true;
    if (lex_less(b.first, a.first)) return false;
    return a.second < b.second;
  }
};

}  // namespace

VertexWitness ray_shoot(const CodimOneSolvers& s, const ZVec& w) {
  const Index n = s.collection().ambient_dim;
  if (w.size() != n)
    fail(Errc::DimensionMismatch, "ray_shoot: objective does not match the ambient dimension");
  const QVec wq = to_qvec(w);
  VertexWitness out;
  out.vertex = ZVec::Zero(n);
  out.objective = w;
  out.source = WitnessSource::Shoot;
  for (Index axis = 0; axis < n; ++axis)
    for (const HalfLineCrossing& h : s.crossings(wq, axis, ShootMode::Strict))
      out.vertex[axis] += h.multiplicity * h.normal[axis];
  return out;
}

VertexWitness robust_shoot(const CodimOneSolvers& s, const ZVec& w, std::uint64_t seed) {
  const Index n = s.collection().ambient_dim;
  if (w.size() != n)
    fail(Errc::DimensionMismatch, "robust_shoot: objective does not match the ambient dimension");
  try {
    return ray_shoot(s, w);
  } catch (const Error& e) {
    if (e.code() != Errc::GenericityViolation) throw;
  }
  // Deterministic repair: shoot from scale*w + p instead, drawing a fresh
  // nowhere-zero p each attempt so no degenerate alignment can survive the
  // retries.  Every vertex coordinate is bounded by coordinate_bounds(), so
  // with scale beyond 2*sum |p_i|*bound_i the perturbation cannot flip any
  // strict integral comparison w.v > w.u between candidate vertices, and
  // the optimum stays the optimum of w itself.
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  const ZVec bounds = s.coordinate_bounds();
  for (int k = 1;; ++k) {
    ZVec p(n);
    Int reach = 0;
    for (Index i = 0; i < n; ++i) {
      std::int64_t entry = 0;
      while (entry == 0) entry = static_cast<std::int64_t>(rng() % 199) - 99;
      p[i] = entry;
      reach += abs(p[i]) * bounds[i];
    }
    const Int scale = 1 + 2 * reach;
    const ZVec wk = scale * w + p;
    try {
      return ray_shoot(s, wk);
    } catch (const Error& e) {
      // The perturbed point may itself land on the collection even though w
      // is clear of it; that is bad luck of the draw, not a property of w,
      // so it is retried like a graze.
      const bool retryable =
          e.code() == Errc::GenericityViolation || e.code() == Errc::ObjectiveInCone;
      if (!retryable || k >= 16) throw;
    }
  }
}

std::vector<ShootOutcome> ray_shoot_batch(const CodimOneSolvers& s, const std::vector<ZVec>& ws) {
  std::vector<ShootOutcome> out(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    try {
      out[i].witness = ray_shoot(s, ws[i]);
      out[i].ok = true;
    } catch (const Error& e) {
      out[i].error = e.code();
      out[i].message = e.what();
    }
  }
  return out;
}

std::vector<IntersectionRecord> shoot_records(const CodimOneSolvers& s, const ZVec& w,
                                              bool ascending) {
  const Index n = s.collection().ambient_dim;
  if (w.size() != n)
    fail(Errc::DimensionMismatch, "shoot_records: objective does not match the ambient dimension");
  const QVec wq = to_qvec(w);
  std::vector<IntersectionRecord> out;
  for (Index axis = 0; axis < n; ++axis)
    for (const HalfLineCrossing& h : s.crossings(wq, axis, ShootMode::Strict, ascending))
      out.push_back({h.cone, axis, h.t, h.boundary});
  return out;
}

std::vector<VertexWitness> walk(const CodimOneSolvers& s, const ZVec& w, const ZVec& vertex,
                                const std::vector<IntersectionRecord>& records, bool ascending) {
  const TropicalCollection& c = s.collection();
  const Index n = c.ambient_dim;
  if (w.size() != n || vertex.size() != n)
    fail(Errc::DimensionMismatch, "walk: objective and vertex must match the ambient dimension");
  const int step = ascending ? 1 : -1;
  std::vector<VertexWitness> out;
  for (Index axis = 0; axis < n; ++axis) {
    std::vector<IntersectionRecord> recs;
    for (const IntersectionRecord& r : records)
      if (r.axis == axis) recs.push_back(r);
    if (recs.empty()) continue;
    for (const IntersectionRecord& r : recs) {
      if (r.cone >= c.cones.size())
        fail(Errc::InconsistentRecords, "walk: record points at a cone that does not exist");
      if (!(r.t > 0))
        fail(Errc::InconsistentRecords, "walk: crossing parameters must be positive");
    }
    std::sort(recs.begin(), recs.end(),
              [](const IntersectionRecord& a, const IntersectionRecord& b) { return a.t < b.t; });
    // Each axis leaves the optimum on its own; crossings tied at one
    // parameter pass through several cones at once, which must then all
    // lie in the same wall.
    ZVec v = vertex;
    std::size_t lo = 0;
    while (lo < recs.size()) {
      std::size_t hi = lo;
      ZVec wall;
      Int weight = 0;
      while (hi < recs.size() && recs[hi].t == recs[lo].t) {
        ZVec l = s.normal(recs[hi].cone);
        if (l[axis] == 0)
          fail(Errc::InconsistentRecords, "walk: record cone is parallel to its own axis");
        if (l[axis] < 0) l = -l;
        if (hi == lo)
          wall = l;
        else if (!same_vec(wall, l))
          fail(Errc::NonParallelTie, "walk: cones tied at one crossing disagree on the wall");
        weight += c.cones[recs[hi].cone].multiplicity;
        ++hi;
      }
      v += step * weight * wall;
      VertexWitness vw;
      vw.vertex = v;
      if (hi < recs.size()) {
        vw.objective = objective_between(w, axis, step, recs[lo].t, recs[hi].t);
      } else {
        vw.objective = w;
        vw.objective[axis] += step * (rat_floor(recs[lo].t) + 1);
      }
      vw.source = WitnessSource::Walk;
      out.push_back(std::move(vw));
      lo = hi;
    }
  }
  return out;
}

ZVec find_chamber_vector(const CodimOneSolvers& s, const ZVec& w) {
  const TropicalCollection& c = s.collection();
  const Index n = c.ambient_dim;
  if (w.size() != n)
    fail(Errc::DimensionMismatch, "find_chamber_vector: point does not match the ambient dimension");
  auto on_support = [&](const ZVec& q) {
    const QVec qq = to_qvec(q);
    for (const WeightedCone& wc : c.cones)
      if (cone_containment(wc.rays, c.lineality, qq) != Containment::Outside) return true;
    return false;
  };
  ZVec q = w;
  for (Index axis = 0; axis < n; ++axis) {
    if (!on_support(q)) return q;
    const std::vector<HalfLineCrossing> hits = s.crossings(to_qvec(q), axis, ShootMode::Tolerant);
    if (hits.empty()) {
      // No wall ahead on this axis: step far enough that no cone scaled to
      // the current coordinate size can still reach the point.
      Int widest = 0;
      for (Index j = 0; j < n; ++j) {
        Int a = abs(q[j]);
        if (a > widest) widest = a;
      }
      q[axis] -= 1 + 64 * (1 + widest);
    } else {
      Rat first = hits.front().t;
      for (const HalfLineCrossing& h : hits)
        if (h.t < first) first = h.t;
      if (first > 1) {
        q[axis] -= 1;
      } else {
        // Stretch the whole point until the window up to the first wall is
        // wider than one step; scaling moves no cone, so every membership
        // collected so far survives.
        const Int grow = floor_div(denominator(first), numerator(first)) + 1;
        q *= grow;
        q[axis] -= 1;
      }
    }
  }
  if (!on_support(q)) return q;
  fail(Errc::ExhaustedCoordinates,
       "find_chamber_vector: still on the collection after stepping every coordinate");
}

bool certify_facet(const CodimOneSolvers& s, const ZVec& normal, const Int& bound,
                   std::uint64_t seed) {
  const TropicalCollection& c = s.collection();
  if (normal.size() != c.ambient_dim)
    fail(Errc::DimensionMismatch, "certify_facet: normal does not match the ambient dimension");
  if (zero_vec(normal)) fail(Errc::ZeroVector, "certify_facet: the zero vector bounds nothing");
  if (containing_normal_rank(s, normal) != c.ambient_dim - c.lineality.rows() - 1) return false;
  const ZVec probe = find_chamber_vector(s, normal);
  const VertexWitness vw = robust_shoot(s, probe, seed);
  return dot_z(normal, vw.vertex) == bound;
}

PolytopeLedger complete_polytope(const CodimOneSolvers& s, const std::vector<VertexWitness>& seeds,
                                 const CoordSymmetryGroup& group, std::uint64_t seed) {
  const TropicalCollection& c = s.collection();
  const Index n = c.ambient_dim;
  const Index lin = c.lineality.rows();
  const Index dim = n - lin;  // dimension the reconstructed polytope must reach
  if (seeds.empty()) fail(Errc::BadInput, "complete_polytope: at least one seed vertex is needed");
  if (group.n_coords != n)
    fail(Errc::DimensionMismatch, "complete_polytope: group acts on the wrong number of coordinates");

  // Closing vertex sets under the group is only sound when the collection
  // itself cannot tell the coordinates apart, so check invariance first.
  const TropicalCollection canon = normalized(c);
  for (const std::vector<Index>& g : group.generators) {
    TropicalCollection moved;
    moved.ambient_dim = n;
    moved.lineality = permute_columns(g, c.lineality);
    moved.cones.reserve(c.cones.size());
    for (const WeightedCone& wc : c.cones)
      moved.cones.push_back({permute_columns(g, wc.rays), wc.multiplicity});
    if (!collections_equal(normalized(std::move(moved)), canon))
      fail(Errc::BadInput, "complete_polytope: collection is not invariant under the group");
  }

  std::map<ZVec, VertexWitness, LexVecLess> verts;
  auto absorb = [&](const VertexWitness& w0) {
    std::vector<VertexWitness> todo{w0};
    while (!todo.empty()) {
      VertexWitness cur = std::move(todo.back());
      todo.pop_back();
      if (verts.count(cur.vertex)) continue;
      for (const std::vector<Index>& g : group.generators) {
        VertexWitness img;
        img.vertex = apply_permutation(g, cur.vertex);
        img.objective = apply_permutation(g, cur.objective);
        img.source = cur.source;
        todo.push_back(std::move(img));
      }
      verts.emplace(cur.vertex, std::move(cur));
    }
  };

  for (const VertexWitness& sd : seeds) {
    if (sd.vertex.size() != n || sd.objective.size() != n)
      fail(Errc::DimensionMismatch, "complete_polytope: seed does not match the ambient dimension");
    const VertexWitness shot = robust_shoot(s, sd.objective, seed);
    if (!same_vec(shot.vertex, sd.vertex))
      fail(Errc::SeedMismatch, "complete_polytope: seed vertex " + to_string(sd.vertex) +
                                   " is not the optimum of its objective " +
                                   to_string(sd.objective));
    absorb(sd);
  }

  // Every edge of the target polytope is orthogonal to the walls of some
  // cone, so the collection's normals list all possible edge directions.
  std::vector<ZVec> dirs;
  dirs.reserve(c.cones.size());
  for (std::size_t k = 0; k < c.cones.size(); ++k) dirs.push_back(sign_normalize(s.normal(k)));
  std::sort(dirs.begin(), dirs.end(), lex_less);
  dirs.erase(std::unique(dirs.begin(), dirs.end(), same_vec), dirs.end());
  auto is_edge_dir = [&](const ZVec& d0) {
    auto it = std::lower_bound(dirs.begin(), dirs.end(), d0, lex_less);
    return it != dirs.end() && same_vec(*it, d0);
  };

  // Certificates depend on the collection alone, never on the vertex set,
  // so their outcomes (and repair optima) are shared across restarts.
  struct CertRecord {
    bool ok = false;
    ZVec vertex;
    ZVec objective;
  };
  std::map<std::pair<ZVec, Int>, CertRecord, FacetKeyLess> cache;

  std::vector<std::pair<ZVec, Int>> certified;
  while (true) {
    bool grew = false;
    bool complete = true;
    std::string stuck;
    certified.clear();

    std::vector<ZVec> reps;
    for (const auto& entry : verts)
      if (same_vec(canonical_rep(group, entry.first), entry.first)) reps.push_back(entry.first);

    for (const ZVec& v : reps) {
      // Tangent rays at v: differences toward the other known vertices,
      // kept when they run along a possible edge.
      std::vector<ZVec> diffs;
      for (const auto& entry : verts) {
        if (same_vec(entry.first, v)) continue;
        diffs.push_back(make_primitive_z(ZVec(entry.first - v)));
      }
      std::sort(diffs.begin(), diffs.end(), lex_less);
      diffs.erase(std::unique(diffs.begin(), diffs.end(), same_vec), diffs.end());
      std::vector<ZVec> rays;
      for (const ZVec& d0 : diffs)
        if (is_edge_dir(sign_normalize(d0))) rays.push_back(d0);

      // Widen until the cone holds every difference: any difference still
      // outside the span or cut off by a wall joins the generators.  All
      // differences point from v into the polytope, so the widened cone
      // still sits inside the true tangent cone.
      std::vector<FacetInequality> walls;
      while (true) {
        walls = dual_description(rays, v);
        std::vector<ZVec> missing;
        if (rays.empty()) {
          missing = diffs;
        } else {
          ZMat rmat(static_cast<Index>(rays.size()), n);
          for (Index i = 0; i < rmat.rows(); ++i) rmat.row(i) = rays[i].transpose();
          const ZMat perp = kernel_basis(to_qmat(rmat));
          for (const ZVec& d0 : diffs) {
            bool present = false;
            for (const ZVec& r : rays)
              if (same_vec(r, d0)) {
                present = true;
                break;
              }
            if (present) continue;
            bool outside = false;
            for (Index i = 0; i < perp.rows() && !outside; ++i)
              if (dot_z(ZVec(perp.row(i).transpose()), d0) != 0) outside = true;
            if (!outside)
              for (const FacetInequality& f : walls)
                if (dot_z(f.normal, d0) > 0) {
                  outside = true;
                  break;
                }
            if (outside) missing.push_back(d0);
          }
        }
        if (missing.empty()) break;
        for (ZVec& m0 : missing) rays.push_back(std::move(m0));
      }

      std::vector<std::pair<ZVec, Int>> candidates;
      Index span_rank = 0;
      if (!rays.empty()) {
        ZMat rmat(static_cast<Index>(rays.size()), n);
        for (Index i = 0; i < rmat.rows(); ++i) rmat.row(i) = rays[i].transpose();
        span_rank = rank_of_z(rmat);
      }
      if (span_rank < dim) {
        // The known neighbors do not span the polytope yet.  Probe along
        // directions orthogonal to all of them: the polytope cannot lie in
        // such a hyperplane, so one side of each probe pair must fail its
        // certificate and hand back a repair optimum.
        const Index stacked = static_cast<Index>(rays.size()) + lin;
        ZMat probes;
        if (stacked == 0) {
          probes = ZMat::Identity(n, n);
        } else {
          ZMat stack(stacked, n);
          for (std::size_t i = 0; i < rays.size(); ++i)
            stack.row(static_cast<Index>(i)) = rays[i].transpose();
          for (Index i = 0; i < lin; ++i) stack.row(static_cast<Index>(rays.size()) + i) = c.lineality.row(i);
          probes = kernel_basis(to_qmat(stack));
        }
        for (Index i = 0; i < probes.rows(); ++i) {
          const ZVec z = probes.row(i).transpose();
          const Int a = dot_z(z, v);
          candidates.emplace_back(z, a);
          candidates.emplace_back(ZVec(-z), Int(-a));
        }
      }
      for (const FacetInequality& f : walls) candidates.emplace_back(f.normal, f.bound);

      for (const auto& cand : candidates) {
        const std::pair<ZVec, Int>& key = cand;
        auto hit = cache.find(key);
        if (hit == cache.end()) {
          CertRecord rec;
          const bool rank_ok = containing_normal_rank(s, key.first) == n - lin - 1;
          const ZVec probe = find_chamber_vector(s, key.first);
          VertexWitness vw = robust_shoot(s, probe, seed);
          rec.ok = rank_ok && dot_z(key.first, vw.vertex) == key.second;
          rec.vertex = std::move(vw.vertex);
          rec.objective = std::move(vw.objective);
          hit = cache.emplace(key, std::move(rec)).first;
        }
        const CertRecord& rec = hit->second;
        if (rec.ok) {
          certified.push_back(key);
          continue;
        }
        if (!verts.count(rec.vertex)) {
          VertexWitness found;
          found.vertex = rec.vertex;
          found.objective = rec.objective;
          found.source = WitnessSource::FacetRepair;
          absorb(found);
          grew = true;
          break;
        }
        complete = false;
        if (stuck.empty())
          stuck = "vertex " + to_string(v) + " and inequality " + to_string(key.first) +
                  " . x <= " + key.second.str();
      }
      if (grew) break;
    }
    if (grew) continue;
    if (!complete)
      fail(Errc::NoProgress, "complete_polytope: cannot certify or repair past " + stuck);
    break;
  }

  PolytopeLedger ledger;
  ledger.group = group;
  ledger.vertices.reserve(verts.size());
  for (const auto& entry : verts) ledger.vertices.push_back(entry.second);

  // The bound of an inequality is invariant under the group (a permuted
  // normal pairs with the permuted optimum), so certified facets expand
  // orbit by orbit.
  std::map<std::pair<ZVec, Int>, bool, FacetKeyLess> fac;
  for (const auto& [z, a] : certified)
    for (const ZVec& img : orbit(group, z)) fac[{img, a}] = true;

  // A collection with lineality describes a polytope of lower dimension;
  // the lineality directions are constant on it and turn into equations,
  // recorded as inequality pairs.
  if (lin > 0) {
    const ZVec& v0 = ledger.vertices.front().vertex;
    for (Index i = 0; i < lin; ++i) {
      const ZVec lam = c.lineality.row(i).transpose();
      const Int a0 = dot_z(lam, v0);
      for (const auto& entry : verts)
        if (dot_z(lam, entry.first) != a0)
          fail(Errc::Internal, "complete_polytope: vertices disagree on a lineality equation");
      fac[{lam, a0}] = true;
      fac[{ZVec(-lam), Int(-a0)}] = true;
    }
  }
  ledger.facets.reserve(fac.size());
  for (const auto& entry : fac) {
    LedgerFacet f;
    f.normal = entry.first.first;
    f.bound = entry.first.second;
    f.certified = true;
    ledger.facets.push_back(std::move(f));
  }

  ledger.edge_directions = ZMat(static_cast<Index>(dirs.size()), n);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    ledger.edge_directions.row(static_cast<Index>(i)) = dirs[i].transpose();
  return ledger;
}

ZVec multidegree(const ZMat& grading, const ZVec& vertex) {
  if (grading.cols() != vertex.size())
    fail(Errc::DimensionMismatch, "multidegree: grading width differs from the vertex dimension");
  return grading * vertex;
}

}  // namespace tropnp
