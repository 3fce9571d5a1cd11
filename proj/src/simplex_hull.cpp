#include "tropnp/simplex_hull.hpp"

#include <algorithm>
#include <map>

namespace tropnp {

namespace {

// Hyperplane through the dim affinely independent points picked out by
// `verts`, oriented so that `inside` lies strictly on the small side.
// Returns false when the points are affinely dependent or `inside` is on the
// hyperplane.
bool facet_plane(const std::vector<QVec>& pts, const std::vector<Index>& verts,
                 const QVec& inside, ZVec& normal, Rat& offset) {
  const Index d = pts.front().size();
  QMat diffs(static_cast<Index>(verts.size()) - 1, d);
  for (Index i = 1; i < static_cast<Index>(verts.size()); ++i)
    diffs.row(i - 1) = (pts[verts[i]] - pts[verts[0]]).transpose();
  ZMat ker = kernel_basis(diffs);
  if (ker.rows() != 1) return false;
  normal = ker.row(0).transpose();
  offset = 0;
  for (Index j = 0; j < d; ++j) offset += Rat(normal(j)) * pts[verts[0]](j);
  Rat side = 0;
  for (Index j = 0; j < d; ++j) side += Rat(normal(j)) * inside(j);
  if (side == offset) return false;
  if (side > offset) {
    normal = -normal;
    offset = -offset;
  }
  return true;
}

Rat dot_zq(const ZVec& a, const QVec& b) {
  Rat s = 0;
  for (Index j = 0; j < a.size(); ++j) s += Rat(a(j)) * b(j);
  return s;
}

}  // namespace

TriangulatedHull build_hull(const std::vector<QVec>& pts_in) {
  if (pts_in.empty()) fail(Errc::BadInput, "hull of an empty point set");
  const Index d = pts_in.front().size();
  if (d < 1) fail(Errc::BadInput, "hull needs a positive ambient dimension");

  TriangulatedHull hull;
  hull.points.reserve(pts_in.size());
  for (const QVec& p : pts_in) {
    if (p.size() != d) fail(Errc::DimensionMismatch, "hull points of mixed dimension");
    bool dup = false;
    for (const QVec& q : hull.points)
      if (q == p) {
        dup = true;
        break;
      }
    if (!dup) hull.points.push_back(p);
  }
  const std::vector<QVec>& pts = hull.points;
  const Index npts = static_cast<Index>(pts.size());

  // Greedy affinely independent seed simplex, scanning in input order.
  std::vector<Index> seed{0};
  QMat span(0, d);
  for (Index i = 1; i < npts && static_cast<Index>(seed.size()) < d + 1; ++i) {
    QMat trial(span.rows() + 1, d);
    trial.topRows(span.rows()) = span;
    trial.row(span.rows()) = (pts[i] - pts[0]).transpose();
    if (rank_of(trial) == trial.rows()) {
      span = trial;
      seed.push_back(i);
    }
  }
  if (static_cast<Index>(seed.size()) != d + 1)
    fail(Errc::Internal, "hull input does not affinely span the ambient space");

  hull.interior = QVec::Zero(d);
  for (Index s : seed) hull.interior += pts[s];
  hull.interior /= Rat(d + 1);

  // Initial simplex: one facet per omitted seed vertex.
  for (Index omit = 0; omit <= d; ++omit) {
    SimplexFacet f;
    for (Index i = 0; i <= d; ++i)
      if (i != omit) f.verts.push_back(seed[i]);
    std::sort(f.verts.begin(), f.verts.end());
    if (!facet_plane(pts, f.verts, hull.interior, f.normal, f.offset))
      fail(Errc::Internal, "degenerate facet in seed simplex");
    hull.facets.push_back(std::move(f));
  }

  // Beneath-beyond insertion of the remaining points in input order.
  std::vector<char> in_seed(npts, 0);
  for (Index s : seed) in_seed[s] = 1;
  for (Index p = 0; p < npts; ++p) {
    if (in_seed[p]) continue;
    std::vector<char> visible(hull.facets.size(), 0);
    bool any_visible = false;
    for (std::size_t f = 0; f < hull.facets.size(); ++f) {
      if (dot_zq(hull.facets[f].normal, pts[p]) > hull.facets[f].offset) {
        visible[f] = 1;
        any_visible = true;
      }
    }
    if (!any_visible) continue;  // inside the closed hull so far: not a vertex

    // Horizon ridges: (d-1)-subsets shared by exactly one visible facet.
    std::map<std::vector<Index>, std::pair<int, int>> ridge_count;  // {visible, total}
    for (std::size_t f = 0; f < hull.facets.size(); ++f) {
      for (std::size_t omit = 0; omit < hull.facets[f].verts.size(); ++omit) {
        std::vector<Index> ridge;
        for (std::size_t i = 0; i < hull.facets[f].verts.size(); ++i)
          if (i != omit) ridge.push_back(hull.facets[f].verts[i]);
        auto& c = ridge_count[ridge];
        if (visible[f]) ++c.first;
        ++c.second;
      }
    }

    std::vector<SimplexFacet> next;
    for (std::size_t f = 0; f < hull.facets.size(); ++f)
      if (!visible[f]) next.push_back(std::move(hull.facets[f]));
    for (const auto& [ridge, c] : ridge_count) {
      if (c.first == 0 || c.first == c.second) continue;  // interior or fully visible ridge
      SimplexFacet f;
      f.verts = ridge;
      f.verts.push_back(p);
      std::sort(f.verts.begin(), f.verts.end());
      if (!facet_plane(pts, f.verts, hull.interior, f.normal, f.offset))
        fail(Errc::Internal, "degenerate facet during hull insertion");
      next.push_back(std::move(f));
    }
    hull.facets = std::move(next);
  }
  return hull;
}

std::vector<std::vector<Index>> triangulate_pointed_cone(const std::vector<ZVec>& rays) {
  if (rays.empty()) fail(Errc::BadInput, "cannot triangulate an empty ray list");
  const Index d = rays.front().size();
  std::vector<QVec> pts;
  pts.push_back(QVec::Zero(d));
  for (const ZVec& r : rays) pts.push_back(to_qvec(r));

  TriangulatedHull hull;
  try {
    hull = build_hull(pts);
  } catch (const Error& e) {
    if (e.code() == Errc::Internal)
      fail(Errc::NonSimplicialCone, "rays do not span the ambient space of the cone");
    throw;
  }

  // The cone is pointed iff the origin is a vertex of the hull, i.e. the
  // normals of the facets whose hyperplanes pass through the origin span the
  // whole space.  A cone containing a line leaves the origin interior to the
  // hull or stuck inside a proper face.
  std::vector<ZVec> zero_normals;
  for (const SimplexFacet& f : hull.facets)
    if (f.offset == 0) zero_normals.push_back(f.normal);
  if (zero_normals.empty())
    fail(Errc::NonSimplicialCone, "cone is not pointed: origin is interior to the ray hull");
  ZMat nm(static_cast<Index>(zero_normals.size()), d);
  for (Index i = 0; i < nm.rows(); ++i) nm.row(i) = zero_normals[i].transpose();
  if (rank_of_z(nm) != d)
    fail(Errc::NonSimplicialCone, "cone is not pointed: opposite directions present");

  // Map deduplicated hull point indices back to positions in `rays`.
  std::vector<Index> back(hull.points.size(), -1);
  for (std::size_t h = 1; h < hull.points.size(); ++h) {
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (to_qvec(rays[r]) == hull.points[h]) {
        back[h] = static_cast<Index>(r);
        break;
      }
    }
  }

  std::vector<std::vector<Index>> pieces;
  for (const SimplexFacet& f : hull.facets) {
    if (f.offset == 0) continue;  // boundary facet through the origin, not a lid facet
    std::vector<Index> piece;
    for (Index v : f.verts) piece.push_back(back[v]);
    std::sort(piece.begin(), piece.end());
    pieces.push_back(std::move(piece));
  }
  std::sort(pieces.begin(), pieces.end());
  return pieces;
}

}  // namespace tropnp
