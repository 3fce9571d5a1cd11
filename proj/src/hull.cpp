#include "tropnp/hull.hpp"

#include <algorithm>
#include <map>

#include "tropnp/simplex_hull.hpp"

namespace tropnp {

namespace {

// Integral coordinates of p - base in the saturated row basis S.
ZVec span_coordinates(const QMat& span_t, const ZVec& diff) {
  SolveOutcome s = solve_exact(span_t, to_qvec(diff));
  if (!s.unique() || !is_integral(s.x))
    fail(Errc::Internal, "point left the saturated affine span");
  return to_zvec(s.x);
}

// Unique ambient representative of a span-coordinate normal inside the
// direction span: a = S^T (S S^T)^{-1} n, made primitive.  The functional
// a . (S^T y) equals n . y for all y, so tightness and sides carry over.
ZVec lift_span_normal(const ZMat& S, const ZVec& span_normal) {
  QMat gram = to_qmat(ZMat(S * S.transpose()));
  SolveOutcome s = solve_exact(gram, to_qvec(span_normal));
  if (!s.unique()) fail(Errc::Internal, "singular Gram matrix of a saturated basis");
  QVec ambient = to_qmat(S).transpose() * s.x;
  return make_primitive(ambient);
}

Int dot_zz(const ZVec& a, const ZVec& b) {
  Int s = 0;
  for (Index j = 0; j < a.size(); ++j) s += a(j) * b(j);
  return s;
}

struct NormalLess {
  bool operator()(const std::pair<ZVec, Int>& a, const std::pair<ZVec, Int>& b) const {
    if (lex_less(a.first, b.first)) return true;
    if (lex_less(b.first, a.first)) return false;
    return a.second < b.second;
  }
};

}  // namespace

Polytope convex_hull(const std::vector<ZVec>& points) {
  if (points.empty()) fail(Errc::BadInput, "convex hull of an empty point set");
  const Index n = points.front().size();
  if (n > 6) fail(Errc::ScaleExceeded, "hull ambient dimension above 6");
  if (points.size() > 10000) fail(Errc::ScaleExceeded, "hull input above 10^4 points");
  for (const ZVec& p : points)
    if (p.size() != n) fail(Errc::DimensionMismatch, "hull points of mixed dimension");

  // Lex-sorted deduplication: output then depends only on the point set.
  std::vector<ZVec> pts = points;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(), [](const ZVec& a, const ZVec& b) { return a == b; }),
            pts.end());

  Polytope poly;
  poly.ambient_dim = n;

  const ZVec& base = pts.front();
  ZMat diffs(static_cast<Index>(pts.size()) - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i)
    diffs.row(static_cast<Index>(i) - 1) = (pts[i] - base).transpose();
  poly.span_directions = pts.size() > 1 ? saturated_row_basis(diffs) : ZMat(0, n);
  const ZMat& S = poly.span_directions;
  const Index s = S.rows();

  if (s == 0) {
    poly.vertices.push_back(base);
    return poly;
  }

  // Work in exact coordinates of the saturated span, where the point set is
  // full-dimensional by construction.
  QMat span_t = to_qmat(S).transpose();
  std::vector<QVec> coords;
  coords.reserve(pts.size());
  for (const ZVec& p : pts) coords.push_back(to_qvec(span_coordinates(span_t, ZVec(p - base))));
  TriangulatedHull hull = build_hull(coords);

  // Merge coplanar simplicial facets: group by (normal, offset).  Offsets are
  // integral because points and normals are.
  std::map<std::pair<ZVec, Int>, char, NormalLess> planes;
  for (const SimplexFacet& f : hull.facets) planes[{f.normal, to_int(f.offset)}] = 1;

  // Vertices: points whose incident facet normals span the whole span space.
  // This excludes interior points and points stuck inside a higher face.
  std::vector<ZVec> hull_coords;  // span coords per deduplicated hull point
  for (const QVec& q : hull.points) hull_coords.push_back(to_zvec(q));
  std::vector<Index> vertex_ids;
  for (std::size_t i = 0; i < hull_coords.size(); ++i) {
    std::vector<ZVec> active;
    for (const auto& [plane, tag] : planes)
      if (dot_zz(plane.first, hull_coords[i]) == plane.second) active.push_back(plane.first);
    if (active.empty()) continue;
    ZMat am(static_cast<Index>(active.size()), s);
    for (Index r = 0; r < am.rows(); ++r) am.row(r) = active[r].transpose();
    if (rank_of_z(am) == s) vertex_ids.push_back(static_cast<Index>(i));
  }

  // Ambient vertex points, lex-sorted; remember each one's span coordinates.
  std::vector<std::pair<ZVec, ZVec>> verts;  // (ambient, span coords)
  for (Index i : vertex_ids) {
    ZVec ambient = base + S.transpose() * hull_coords[i];
    verts.push_back({std::move(ambient), hull_coords[i]});
  }
  std::sort(verts.begin(), verts.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  for (const auto& [ambient, coord] : verts) poly.vertices.push_back(ambient);

  // Relative facets with ambient normals and sorted vertex incidence.
  for (const auto& [plane, tag] : planes) {
    Polytope::Face face;
    face.normal = lift_span_normal(S, plane.first);
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (dot_zz(plane.first, verts[v].second) == plane.second)
        face.vertices.push_back(static_cast<Index>(v));
    if (face.vertices.empty()) fail(Errc::Internal, "facet without vertices");
    face.bound = dot_zz(face.normal, poly.vertices[face.vertices.front()]);
    poly.facets.push_back(std::move(face));
  }
  std::sort(poly.facets.begin(), poly.facets.end(), [](const Polytope::Face& a, const Polytope::Face& b) {
    if (lex_less(a.normal, b.normal)) return true;
    if (lex_less(b.normal, a.normal)) return false;
    return a.bound < b.bound;
  });

  // Edges.  In span dimension 1 the polytope is a segment; in dimension 2
  // every relative facet is an edge; above that, a vertex pair is an edge
  // exactly when its common facet normals leave a one-dimensional direction.
  const Index nv = static_cast<Index>(poly.vertices.size());
  if (s == 1) {
    if (nv != 2) fail(Errc::Internal, "one-dimensional hull without two endpoints");
    poly.edges.push_back({0, 1});
  } else if (s == 2) {
    for (const Polytope::Face& f : poly.facets) {
      if (f.vertices.size() != 2) fail(Errc::Internal, "polygon facet is not a segment");
      poly.edges.push_back({f.vertices[0], f.vertices[1]});
    }
  } else {
    for (Index u = 0; u < nv; ++u) {
      for (Index v = u + 1; v < nv; ++v) {
        std::vector<ZVec> common;
        for (const Polytope::Face& f : poly.facets) {
          bool has_u = std::binary_search(f.vertices.begin(), f.vertices.end(), u);
          bool has_v = std::binary_search(f.vertices.begin(), f.vertices.end(), v);
          if (has_u && has_v) common.push_back(f.normal);
        }
        if (common.empty()) continue;
        ZMat cm(static_cast<Index>(common.size()), n);
        for (Index r = 0; r < cm.rows(); ++r) cm.row(r) = common[r].transpose();
        if (rank_of_z(cm) == s - 1) poly.edges.push_back({u, v});
      }
    }
  }
  std::sort(poly.edges.begin(), poly.edges.end());
  return poly;
}

TropicalCollection weighted_normal_skeleton(const Polytope& p) {
  TropicalCollection c;
  c.ambient_dim = p.ambient_dim;
  c.lineality = p.span_directions.rows() > 0 ? kernel_basis(to_qmat(p.span_directions))
                                             : ZMat::Identity(p.ambient_dim, p.ambient_dim);
  for (const auto& [u, v] : p.edges) {
    WeightedCone wc;
    std::vector<ZVec> rays;
    for (const Polytope::Face& f : p.facets) {
      bool has_u = std::binary_search(f.vertices.begin(), f.vertices.end(), u);
      bool has_v = std::binary_search(f.vertices.begin(), f.vertices.end(), v);
      if (has_u && has_v) rays.push_back(f.normal);
    }
    wc.rays = ZMat(static_cast<Index>(rays.size()), p.ambient_dim);
    for (Index r = 0; r < wc.rays.rows(); ++r) wc.rays.row(r) = rays[r].transpose();
    ZVec diff = p.vertices[v] - p.vertices[u];
    Int g = 0;
    for (Index j = 0; j < diff.size(); ++j) g = gcd(g, diff[j]);
    wc.multiplicity = g;
    c.cones.push_back(std::move(wc));
  }
  return normalized(std::move(c));
}

std::vector<FacetInequality> dual_description(const std::vector<ZVec>& rays, const ZVec& apex) {
  const Index n = apex.size();
  if (n > 16) fail(Errc::ScaleExceeded, "dual description above dimension 16");
  if (rays.size() > 200) fail(Errc::ScaleExceeded, "dual description above 200 rays");
  if (rays.empty()) return {};
  ZMat rm(static_cast<Index>(rays.size()), n);
  for (Index i = 0; i < rm.rows(); ++i) {
    if (rays[i].size() != n) fail(Errc::DimensionMismatch, "ray width differs from the apex");
    rm.row(i) = rays[i].transpose();
  }

  ZMat S = saturated_row_basis(rm);
  const Index s = S.rows();
  QMat span_t = to_qmat(S).transpose();
  std::vector<QVec> pts;
  pts.push_back(QVec::Zero(s));
  for (const ZVec& r : rays) pts.push_back(to_qvec(span_coordinates(span_t, r)));
  TriangulatedHull hull = build_hull(pts);

  // Facets of the cone are the hull facets through the origin; pointedness
  // means their normals span the whole span space.
  std::map<std::pair<ZVec, Int>, char, NormalLess> planes;
  std::vector<ZVec> zero_normals;
  for (const SimplexFacet& f : hull.facets) {
    if (f.offset != 0) continue;
    if (planes.emplace(std::pair<ZVec, Int>{f.normal, 0}, 1).second)
      zero_normals.push_back(f.normal);
  }
  if (zero_normals.empty()) fail(Errc::BadInput, "cone contains a line (origin not a vertex)");
  ZMat zm(static_cast<Index>(zero_normals.size()), s);
  for (Index i = 0; i < zm.rows(); ++i) zm.row(i) = zero_normals[i].transpose();
  if (rank_of_z(zm) != s) fail(Errc::BadInput, "cone contains a line (origin not a vertex)");

  std::vector<FacetInequality> out;
  for (const auto& [plane, tag] : planes) {
    FacetInequality ineq;
    ineq.normal = lift_span_normal(S, plane.first);
    ineq.bound = dot_zz(ineq.normal, apex);
    out.push_back(std::move(ineq));
  }
  std::sort(out.begin(), out.end(), [](const FacetInequality& a, const FacetInequality& b) {
    return lex_less(a.normal, b.normal);
  });
  return out;
}

}  // namespace tropnp
