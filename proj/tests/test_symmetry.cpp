#include "tropnp/symmetry.hpp"

#include <random>

#include "doctest.h"
#include "test_support.hpp"
#include "tropnp/exact_linalg.hpp"

using namespace tropnp;
using namespace tropnp::testing;

namespace {

ZVec random_zvec(std::mt19937_64& rng, Index n, long lo, long hi) {
  ZVec v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
  return v;
}

// The sixteen-coordinate vertex whose stabilizer in the 4-cube symmetry
// group has order two; used as a frozen orbit-size witness.
ZVec deep_vertex() {
  return zvec({0, 0, 1, 17, 13, 6, 17, 1, 17, 1, 6, 13, 1, 17, 0, 0});
}

WeightedCone cone_of(std::initializer_list<std::initializer_list<long>> rays, long m) {
  WeightedCone wc;
  wc.rays = zmat(rays);
  wc.multiplicity = m;
  return wc;
}

}  // namespace

TEST_CASE("make_group validates permutations") {
  CHECK_THROWS_AS(make_group(3, {{0, 1}}), Error);
  CHECK_THROWS_AS(make_group(3, {{0, 1, 1}}), Error);
  CHECK_THROWS_AS(make_group(3, {{0, 1, 3}}), Error);
  CHECK_THROWS_AS(make_group(0, {}), Error);
  CHECK(group_order(trivial_group(5)) == 1);
}

TEST_CASE("hyperoctahedral_on_cube orders") {
  CHECK(group_order(hyperoctahedral_on_cube(1)) == 2);
  CHECK(group_order(hyperoctahedral_on_cube(2)) == 8);
  CHECK(group_order(hyperoctahedral_on_cube(3)) == 48);
  CHECK(group_order(hyperoctahedral_on_cube(4)) == 384);
  CHECK_THROWS_AS(hyperoctahedral_on_cube(0), Error);
  try {
    hyperoctahedral_on_cube(9);
    FAIL("expected a size rejection");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooLarge);
  }
}

TEST_CASE("group element closure cap fires") {
  // Full symmetric group on ten coordinates: order 3628800 > cap.
  std::vector<Index> cycle{1, 2, 3, 4, 5, 6, 7, 8, 9, 0};
  std::vector<Index> swap01{1, 0, 2, 3, 4, 5, 6, 7, 8, 9};
  CoordSymmetryGroup g = make_group(10, {cycle, swap01});
  try {
    group_order(g);
    FAIL("expected the element cap");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TooLarge);
  }
}

TEST_CASE("orbit sizes under the 4-cube group") {
  CoordSymmetryGroup b4 = hyperoctahedral_on_cube(4);
  CHECK(orbit(b4, ZVec::Constant(16, 3)).size() == 1);
  CHECK(orbit(b4, deep_vertex()).size() == 192);
  ZVec generic(16);
  for (Index i = 0; i < 16; ++i) generic[i] = i;
  CHECK(orbit(b4, generic).size() == 384);
  CHECK_THROWS_AS(orbit(b4, ZVec::Zero(5)), Error);
}

TEST_CASE("orbit-stabilizer identity") {
  CoordSymmetryGroup b4 = hyperoctahedral_on_cube(4);
  std::mt19937_64 rng(321);
  std::vector<ZVec> samples{ZVec::Constant(16, 1), deep_vertex()};
  for (int i = 0; i < 6; ++i) samples.push_back(random_zvec(rng, 16, 0, 3));
  for (const ZVec& v : samples)
    CHECK(Int(orbit(b4, v).size()) * stabilizer_order(b4, v) == 384);
}

TEST_CASE("orbit agrees across two generating sets of the same group") {
  CoordSymmetryGroup a = hyperoctahedral_on_cube(3);
  // Minimal presentation: one axis reflection plus the two adjacent swaps.
  CoordSymmetryGroup b = make_group(8, {{4, 5, 6, 7, 0, 1, 2, 3},
                                        {0, 1, 4, 5, 2, 3, 6, 7},
                                        {0, 2, 1, 3, 4, 6, 5, 7}});
  CHECK(group_order(b) == 48);
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 20; ++iter) {
    ZVec v = random_zvec(rng, 8, -4, 4);
    std::vector<ZVec> oa = orbit(a, v);
    std::vector<ZVec> ob = orbit(b, v);
    REQUIRE(oa.size() == ob.size());
    for (std::size_t i = 0; i < oa.size(); ++i) CHECK(oa[i] == ob[i]);
  }
}

TEST_CASE("canonical_rep is the lex minimum and orbit-constant") {
  CoordSymmetryGroup swap2 = make_group(2, {{1, 0}});
  CHECK(canonical_rep(swap2, zvec({1, 0})) == zvec({0, 1}));
  CHECK(canonical_rep(swap2, zvec({2, 2})) == zvec({2, 2}));

  CoordSymmetryGroup b3 = hyperoctahedral_on_cube(3);
  std::mt19937_64 rng(1999);
  for (int iter = 0; iter < 100; ++iter) {
    ZVec v = random_zvec(rng, 8, -3, 5);
    ZVec rep = canonical_rep(b3, v);
    CHECK(canonical_rep(b3, rep) == rep);
    for (const ZVec& u : orbit(b3, v)) {
      CHECK(!lex_less(u, rep));
      CHECK(canonical_rep(b3, u) == rep);
    }
  }
}

TEST_CASE("orbit_cones: fixed cone, coordinate rays, edge pairs") {
  CoordSymmetryGroup b2 = hyperoctahedral_on_cube(2);

  auto fixed = orbit_cones(b2, cone_of({{1, 1, 1, 1}}, 1));
  CHECK(fixed.size() == 1);

  auto axes = orbit_cones(b2, cone_of({{1, 0, 0, 0}}, 7));
  CHECK(axes.size() == 4);
  for (const WeightedCone& wc : axes) CHECK(wc.multiplicity == 7);

  // {00,01} spans an edge of the square; its orbit is the four edges.
  auto edges = orbit_cones(b2, cone_of({{1, 0, 0, 0}, {0, 1, 0, 0}}, 1));
  CHECK(edges.size() == 4);

  // Orbit sizes divide the group order.
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 15; ++iter) {
    WeightedCone wc;
    wc.rays = ZMat(2, 4);
    wc.rays.row(0) = random_zvec(rng, 4, -2, 2).transpose();
    wc.rays.row(1) = random_zvec(rng, 4, -2, 2).transpose();
    wc.multiplicity = 1;
    CHECK(Int(8) % Int(orbit_cones(b2, wc).size()) == 0);
  }
}

TEST_CASE("expand_orbit_collection reproduces the plane line") {
  CoordSymmetryGroup swap2 = make_group(2, {{1, 0}});
  TropicalCollection reps;
  reps.ambient_dim = 2;
  reps.lineality = ZMat(0, 2);
  reps.cones.push_back(cone_of({{1, 1}}, 1));
  reps.cones.push_back(cone_of({{-1, 0}}, 1));

  TropicalCollection full = expand_orbit_collection(swap2, reps);
  REQUIRE(full.cones.size() == 3);

  TropicalCollection expected;
  expected.ambient_dim = 2;
  expected.cones.push_back(cone_of({{1, 1}}, 1));
  expected.cones.push_back(cone_of({{-1, 0}}, 1));
  expected.cones.push_back(cone_of({{0, -1}}, 1));
  expected = normalized(expected);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(full.cones[i].rays == expected.cones[i].rays);
    CHECK(full.cones[i].multiplicity == expected.cones[i].multiplicity);
  }

  // The group action sends each cone's normal to the image cone's normal
  // up to sign.
  CodimOneSolvers solvers{normalized(full)};
  for (Index k = 0; k < 3; ++k) {
    ZVec moved = apply_permutation({1, 0}, solvers.normal(k));
    bool found = false;
    for (Index j = 0; j < 3; ++j)
      if (solvers.normal(j) == moved || solvers.normal(j) == ZVec(-moved)) found = true;
    CHECK(found);
  }
}

TEST_CASE("expand_orbit_collection rejects conflicting weights and moving lineality") {
  CoordSymmetryGroup swap2 = make_group(2, {{1, 0}});

  TropicalCollection clash;
  clash.ambient_dim = 2;
  clash.lineality = ZMat(0, 2);
  clash.cones.push_back(cone_of({{-1, 0}}, 1));
  clash.cones.push_back(cone_of({{0, -1}}, 2));
  try {
    expand_orbit_collection(swap2, clash);
    FAIL("expected a weight conflict");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MultiplicityConflict);
  }

  TropicalCollection tilted;
  tilted.ambient_dim = 2;
  tilted.lineality = zmat({{1, 0}});
  tilted.cones.push_back(cone_of({{1, 1}}, 1));
  try {
    expand_orbit_collection(swap2, tilted);
    FAIL("expected a lineality rejection");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadInput);
  }

  TropicalCollection diag;
  diag.ambient_dim = 2;
  diag.lineality = zmat({{2, 2}});  // invariant subspace, non-canonical basis
  diag.cones.push_back(cone_of({{1, -1}}, 1));
  CHECK(expand_orbit_collection(swap2, diag).cones.size() == 2);
}
