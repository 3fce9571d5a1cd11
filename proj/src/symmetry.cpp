#include "tropnp/symmetry.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "tropnp/exact_linalg.hpp"

namespace tropnp {
namespace {

constexpr std::size_t kElementCap = 1000000;

struct VecLexLess {
  bool operator()(const ZVec& a, const ZVec& b) const { return lex_less(a, b); }
};

// Row-major lexicographic order on ray matrices of equal shape.
struct MatLexLess {
  bool operator()(const ZMat& a, const ZMat& b) const {
    if (a.rows() != b.rows()) return a.rows() < b.rows();
    if (a.cols() != b.cols()) return a.cols() < b.cols();
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j) {
        if (a(i, j) < b(i, j)) return true;
        if (a(i, j) > b(i, j)) return false;
      }
    return false;
  }
};

std::vector<Index> identity_perm(Index n) {
  std::vector<Index> p(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

// (after . before)(i) = after[before[i]]
std::vector<Index> compose(const std::vector<Index>& after, const std::vector<Index>& before) {
  std::vector<Index> r(before.size());
  for (std::size_t i = 0; i < before.size(); ++i)
    r[i] = after[static_cast<std::size_t>(before[i])];
  return r;
}

ZMat sorted_rows(ZMat m) {
  std::vector<ZVec> rows;
  rows.reserve(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(m.row(i).transpose());
  std::sort(rows.begin(), rows.end(), lex_less);
  for (Index i = 0; i < m.rows(); ++i) m.row(i) = rows[static_cast<std::size_t>(i)].transpose();
  return m;
}

// Canonical row basis of the lattice spanned by the rows: saturate, then
// Hermite-reduce, so equal subspaces compare equal.
ZMat canonical_subspace(const ZMat& m, Index n) {
  if (m.rows() == 0) return ZMat(0, n);
  ZMat sat = saturated_row_basis(m);
  if (sat.rows() == 0) return ZMat(0, n);
  HnfResult h = hermite_normal_form(sat);
  return h.H.topRows(h.rank);
}

}  // namespace

CoordSymmetryGroup trivial_group(Index n) {
  if (n <= 0) fail(Errc::BadInput, "trivial_group: need a positive coordinate count");
  CoordSymmetryGroup g;
  g.n_coords = n;
  return g;
}

CoordSymmetryGroup make_group(Index n, std::vector<std::vector<Index>> generators) {
  if (n <= 0) fail(Errc::BadInput, "make_group: need a positive coordinate count");
  for (const auto& perm : generators) {
    if (perm.size() != static_cast<std::size_t>(n))
      fail(Errc::BadInput, "make_group: generator length differs from the coordinate count");
    std::vector<bool> seen(perm.size(), false);
    for (Index img : perm) {
      if (img < 0 || img >= n || seen[static_cast<std::size_t>(img)])
        fail(Errc::BadInput, "make_group: generator is not a permutation");
      seen[static_cast<std::size_t>(img)] = true;
    }
  }
  CoordSymmetryGroup g;
  g.n_coords = n;
  g.generators = std::move(generators);
  return g;
}

CoordSymmetryGroup hyperoctahedral_on_cube(Index m) {
  if (m < 1) fail(Errc::BadInput, "hyperoctahedral_on_cube: need at least one axis");
  if (m > 8) fail(Errc::TooLarge, "hyperoctahedral_on_cube: enumeration bound is eight axes");
  const Index n = Index(1) << m;
  std::vector<std::vector<Index>> gens;
  for (Index p = 0; p < m; ++p) {  // reflect one axis: flip bit p of the vertex label
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i ^ (Index(1) << p);
    gens.push_back(std::move(perm));
  }
  for (Index p = 0; p + 1 < m; ++p) {  // swap two adjacent axes of the cube
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      const Index lo = (i >> p) & 1;
      const Index hi = (i >> (p + 1)) & 1;
      Index j = i & ~(Index(3) << p);
      j |= (lo << (p + 1)) | (hi << p);
      perm[static_cast<std::size_t>(i)] = j;
    }
    gens.push_back(std::move(perm));
  }
  return make_group(n, std::move(gens));
}

ZVec apply_permutation(const std::vector<Index>& perm, const ZVec& v) {
  ZVec r(v.size());
  for (Index i = 0; i < v.size(); ++i) r[perm[static_cast<std::size_t>(i)]] = v[i];
  return r;
}

QVec apply_permutation(const std::vector<Index>& perm, const QVec& v) {
  QVec r(v.size());
  for (Index i = 0; i < v.size(); ++i) r[perm[static_cast<std::size_t>(i)]] = v[i];
  return r;
}

ZMat permute_columns(const std::vector<Index>& perm, const ZMat& m) {
  ZMat r(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) r.col(perm[static_cast<std::size_t>(j)]) = m.col(j);
  return r;
}

const std::vector<std::vector<Index>>& group_elements(const CoordSymmetryGroup& g) {
  if (!g.element_cache.empty()) return g.element_cache;
  std::set<std::vector<Index>> seen;
  std::queue<std::vector<Index>> frontier;
  seen.insert(identity_perm(g.n_coords));
  frontier.push(identity_perm(g.n_coords));
  while (!frontier.empty()) {
    std::vector<Index> cur = std::move(frontier.front());
    frontier.pop();
    for (const auto& gen : g.generators) {
      std::vector<Index> next = compose(gen, cur);
      if (seen.insert(next).second) {
        if (seen.size() > kElementCap)
          fail(Errc::TooLarge, "group_elements: closure exceeds the element cap");
        frontier.push(std::move(next));
      }
    }
  }
  g.element_cache.assign(seen.begin(), seen.end());
  return g.element_cache;
}

Int group_order(const CoordSymmetryGroup& g) {
  return Int(group_elements(g).size());
}

std::vector<ZVec> orbit(const CoordSymmetryGroup& g, const ZVec& v) {
  if (v.size() != g.n_coords)
    fail(Errc::DimensionMismatch, "orbit: vector length differs from the coordinate count");
  std::set<ZVec, VecLexLess> seen;
  std::queue<ZVec> frontier;
  seen.insert(v);
  frontier.push(v);
  while (!frontier.empty()) {
    ZVec cur = std::move(frontier.front());
    frontier.pop();
    for (const auto& gen : g.generators) {
      ZVec next = apply_permutation(gen, cur);
      if (seen.insert(next).second) {
        if (seen.size() > kElementCap) fail(Errc::TooLarge, "orbit: exceeds the element cap");
        frontier.push(std::move(next));
      }
    }
  }
  return std::vector<ZVec>(seen.begin(), seen.end());
}

ZVec canonical_rep(const CoordSymmetryGroup& g, const ZVec& v) {
  return orbit(g, v).front();
}

Int stabilizer_order(const CoordSymmetryGroup& g, const ZVec& v) {
  if (v.size() != g.n_coords)
    fail(Errc::DimensionMismatch, "stabilizer_order: vector length differs from the coordinate count");
  Int count = 0;
  for (const auto& e : group_elements(g))
    if (apply_permutation(e, v) == v) ++count;
  return count;
}

std::vector<WeightedCone> orbit_cones(const CoordSymmetryGroup& g, const WeightedCone& c) {
  if (c.rays.rows() > 0 && c.rays.cols() != g.n_coords)
    fail(Errc::DimensionMismatch, "orbit_cones: ray length differs from the coordinate count");
  ZMat start = sorted_rows(c.rays.rows() > 0 ? c.rays : ZMat(0, g.n_coords));
  std::set<ZMat, MatLexLess> seen;
  std::queue<ZMat> frontier;
  seen.insert(start);
  frontier.push(start);
  while (!frontier.empty()) {
    ZMat cur = std::move(frontier.front());
    frontier.pop();
    for (const auto& gen : g.generators) {
      ZMat next = sorted_rows(permute_columns(gen, cur));
      if (seen.insert(next).second) {
        if (seen.size() > kElementCap)
          fail(Errc::TooLarge, "orbit_cones: exceeds the element cap");
        frontier.push(std::move(next));
      }
    }
  }
  std::vector<WeightedCone> out;
  out.reserve(seen.size());
  for (const ZMat& rays : seen) {
    WeightedCone wc;
    wc.rays = rays;
    wc.multiplicity = c.multiplicity;
    out.push_back(std::move(wc));
  }
  return out;
}

TropicalCollection expand_orbit_collection(const CoordSymmetryGroup& g,
                                           const TropicalCollection& reps) {
  if (reps.ambient_dim != g.n_coords)
    fail(Errc::DimensionMismatch,
         "expand_orbit_collection: collection and group coordinate counts differ");
  validate_collection(reps);

  const ZMat lin_canon = canonical_subspace(
      reps.lineality.rows() > 0 ? reps.lineality : ZMat(0, reps.ambient_dim), reps.ambient_dim);
  for (const auto& gen : g.generators) {
    if (canonical_subspace(permute_columns(gen, lin_canon), reps.ambient_dim) != lin_canon)
      fail(Errc::BadInput,
           "expand_orbit_collection: lineality space is not invariant under the group");
  }

  std::map<ZMat, Int, MatLexLess> merged;
  for (const WeightedCone& rep : reps.cones) {
    for (WeightedCone& img : orbit_cones(g, rep)) {
      auto [it, fresh] = merged.emplace(std::move(img.rays), img.multiplicity);
      if (!fresh && it->second != img.multiplicity)
        fail(Errc::MultiplicityConflict,
             "expand_orbit_collection: overlapping orbits disagree on a weight");
    }
  }

  TropicalCollection out;
  out.ambient_dim = reps.ambient_dim;
  out.lineality = reps.lineality;
  out.cones.reserve(merged.size());
  for (const auto& [rays, mult] : merged) {
    WeightedCone wc;
    wc.rays = rays;
    wc.multiplicity = mult;
    out.cones.push_back(std::move(wc));
  }
  return out;
}

}  // namespace tropnp
