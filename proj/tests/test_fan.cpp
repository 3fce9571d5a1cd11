#include "tropnp/fan.hpp"

#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace tropnp;
using namespace tropnp::testing;

namespace {

WeightedCone cone_of(std::initializer_list<std::initializer_list<long>> rays, long mult = 1) {
  WeightedCone c;
  c.rays = zmat(rays);
  c.multiplicity = mult;
  return c;
}

// The corner locus of max(x, y, 0): three rays from the origin.
TropicalCollection plane_line() {
  TropicalCollection c;
  c.ambient_dim = 2;
  c.lineality = ZMat(0, 2);
  c.cones.push_back(cone_of({{1, 1}}));
  c.cones.push_back(cone_of({{-1, 0}}));
  c.cones.push_back(cone_of({{0, -1}}));
  return c;
}

}  // namespace

TEST_CASE("normalized: rays become primitive and cones deduplicate") {
  TropicalCollection c;
  c.ambient_dim = 2;
  c.cones.push_back(cone_of({{2, 2}}, 3));
  c.cones.push_back(cone_of({{1, 1}}, 3));
  TropicalCollection n = normalized(c);
  REQUIRE(n.cones.size() == 1);
  CHECK(n.cones[0].rays == zmat({{1, 1}}));
  CHECK(n.cones[0].multiplicity == 3);
}

TEST_CASE("normalized: conflicting weights on one cone are rejected") {
  TropicalCollection c;
  c.ambient_dim = 2;
  c.cones.push_back(cone_of({{1, 1}}, 1));
  c.cones.push_back(cone_of({{2, 2}}, 2));
  try {
    normalized(c);
    FAIL("expected a weight conflict");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MultiplicityConflict);
  }
}

TEST_CASE("normalized: non-simplicial cones are split with weights preserved") {
  TropicalCollection c;
  c.ambient_dim = 2;
  c.cones.push_back(cone_of({{0, 1}, {1, 0}, {1, 1}}, 5));
  TropicalCollection n = normalized(c);
  REQUIRE(n.cones.size() == 2);
  CHECK(n.cones[0].rays == zmat({{0, 1}, {1, 1}}));
  CHECK(n.cones[1].rays == zmat({{1, 0}, {1, 1}}));
  CHECK(n.cones[0].multiplicity == 5);
  CHECK(n.cones[1].multiplicity == 5);
}

TEST_CASE("normalized: presentations differing by lineality agree") {
  TropicalCollection a;
  a.ambient_dim = 3;
  a.lineality = zmat({{1, 1, 1}});
  a.cones.push_back(cone_of({{1, 0, 0}}, 2));

  TropicalCollection b;
  b.ambient_dim = 3;
  b.lineality = zmat({{2, 2, 2}});       // same space, scaled basis
  b.cones.push_back(cone_of({{2, 1, 1}}, 2));  // same ray modulo (1,1,1)

  TropicalCollection na = normalized(a);
  TropicalCollection nb = normalized(b);
  CHECK(na.lineality == nb.lineality);
  REQUIRE(na.cones.size() == 1);
  REQUIRE(nb.cones.size() == 1);
  CHECK(na.cones[0].rays == nb.cones[0].rays);
  CHECK(na.cones[0].multiplicity == nb.cones[0].multiplicity);
}

TEST_CASE("normalized: rays inside the lineality space are dropped") {
  TropicalCollection c;
  c.ambient_dim = 2;
  c.lineality = zmat({{1, 0}});
  c.cones.push_back(cone_of({{3, 0}}, 7));  // a lineality direction, nothing more
  TropicalCollection n = normalized(c);
  REQUIRE(n.cones.size() == 1);
  CHECK(n.cones[0].rays.rows() == 0);
  CHECK(n.cones[0].multiplicity == 7);
}

TEST_CASE("normalized rejects a cone with opposite rays") {
  TropicalCollection c;
  c.ambient_dim = 2;
  c.cones.push_back(cone_of({{1, 1}, {-1, -1}, {1, 0}}));
  CHECK_THROWS_AS(normalized(c), Error);
}

TEST_CASE("pure_dimension flags mixed collections") {
  TropicalCollection c;
  c.ambient_dim = 2;
  c.cones.push_back(cone_of({{1, 1}}));
  CHECK(pure_dimension(c) == 1);
  c.cones.push_back(cone_of({{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(pure_dimension(c), Error);
}

TEST_CASE("balancing of one-dimensional collections") {
  SUBCASE("the plane line balances") { CHECK(is_balanced_curve(plane_line())); }
  SUBCASE("a broken line does not") {
    TropicalCollection c = plane_line();
    c.cones[0].multiplicity = 2;
    CHECK(!is_balanced_curve(c));
  }
  SUBCASE("imbalance inside the lineality space is invisible") {
    TropicalCollection c;
    c.ambient_dim = 2;
    c.lineality = zmat({{1, 0}});
    c.cones.push_back(cone_of({{1, 1}}));
    c.cones.push_back(cone_of({{1, -1}}));
    // Ray sum (2,0) lies in the lineality space.
    CHECK(is_balanced_curve(normalized(c)));
  }
  SUBCASE("higher-dimensional cones are not a curve") {
    TropicalCollection c;
    c.ambient_dim = 2;
    c.cones.push_back(cone_of({{1, 0}, {0, 1}}));
    CHECK_THROWS_AS(is_balanced_curve(c), Error);
  }
}

TEST_CASE("cone_containment classifies points") {
  ZMat rays = zmat({{1, 0, 0}, {0, 1, 0}});
  ZMat lin(0, 3);
  CHECK(cone_containment(rays, lin, to_qvec(zvec({2, 3, 0}))) == Containment::Interior);
  CHECK(cone_containment(rays, lin, to_qvec(zvec({2, 0, 0}))) == Containment::Boundary);
  CHECK(cone_containment(rays, lin, to_qvec(zvec({-1, 3, 0}))) == Containment::Outside);
  CHECK(cone_containment(rays, lin, to_qvec(zvec({1, 1, 1}))) == Containment::Outside);
  SUBCASE("with lineality") {
    ZMat l2 = zmat({{0, 0, 1}});
    CHECK(cone_containment(rays, l2, to_qvec(zvec({2, 3, -5}))) == Containment::Interior);
    CHECK(cone_containment(rays, l2, to_qvec(zvec({0, 3, 4}))) == Containment::Boundary);
  }
  SUBCASE("the origin cone") {
    ZMat none(0, 2);
    CHECK(cone_containment(none, none, to_qvec(zvec({0, 0}))) == Containment::Interior);
    CHECK(cone_containment(none, none, to_qvec(zvec({1, 0}))) == Containment::Outside);
  }
}

TEST_CASE("crossings: the plane line shot from a generic point") {
  TropicalCollection c = normalized(plane_line());
  CodimOneSolvers solver(c);
  QVec w = to_qvec(zvec({2, 1}));

  auto hits0 = solver.crossings(w, 0, ShootMode::Strict);
  REQUIRE(hits0.size() == 1);
  CHECK(hits0[0].t == 1);
  CHECK(hits0[0].normal == zvec({1, -1}));
  CHECK(hits0[0].multiplicity == 1);
  CHECK(!hits0[0].boundary);

  auto hits1 = solver.crossings(w, 1, ShootMode::Strict);
  CHECK(hits1.empty());
}

TEST_CASE("crossings: boundary and in-plane incidences are policed") {
  TropicalCollection c;
  c.ambient_dim = 3;
  c.cones.push_back(cone_of({{1, 0, 0}, {0, 1, 0}}));
  c = normalized(c);
  CodimOneSolvers solver(c);

  SUBCASE("transversal interior crossing passes strict mode") {
    auto hits = solver.crossings(to_qvec(zvec({1, 2, 5})), 2, ShootMode::Strict);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].t == 5);
    CHECK(hits[0].normal == zvec({0, 0, 1}));
  }
  SUBCASE("boundary crossing: strict throws, tolerant flags") {
    QVec w = to_qvec(zvec({1, 0, 5}));
    try {
      solver.crossings(w, 2, ShootMode::Strict);
      FAIL("expected a genericity error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::GenericityViolation);
    }
    auto hits = solver.crossings(w, 2, ShootMode::Tolerant);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].boundary);
  }
  SUBCASE("base point on the cone") {
    try {
      solver.crossings(to_qvec(zvec({1, 1, 0})), 2, ShootMode::Strict);
      FAIL("expected the base point to be flagged");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ObjectiveInCone);
    }
  }
  SUBCASE("ray running inside the cone's plane") {
    // From (-1, 2, 0) the first axis decreases inside the plane z = 0 and
    // never reaches the cone; from (3, 2, 0) it starts inside the cone.
    auto hits = solver.crossings(to_qvec(zvec({-1, 2, 0})), 0, ShootMode::Strict);
    CHECK(hits.empty());
    try {
      solver.crossings(to_qvec(zvec({3, 2, 0})), 0, ShootMode::Strict);
      FAIL("expected the base point to be flagged");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ObjectiveInCone);
    }
    // From (5, -1, 0) the ray {(5-t, -1, 0)} runs in the plane and misses
    // the cone; from (5, 1, 0) the base point already lies inside it.
    CHECK(solver.crossings(to_qvec(zvec({5, -1, 0})), 0, ShootMode::Strict).empty());
  }
  SUBCASE("feasible in-plane run ahead of the base point") {
    TropicalCollection cc;
    cc.ambient_dim = 2;
    cc.cones.push_back(cone_of({{0, -1}}));
    cc = normalized(cc);
    CodimOneSolvers s2(cc);
    QVec w = to_qvec(zvec({0, 5}));
    try {
      s2.crossings(w, 1, ShootMode::Strict);
      FAIL("expected a genericity error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::GenericityViolation);
    }
    CHECK(s2.crossings(w, 1, ShootMode::Tolerant).empty());
  }
}

TEST_CASE("crossings: point cone on the line") {
  TropicalCollection c;
  c.ambient_dim = 1;
  WeightedCone pt;
  pt.rays = ZMat(0, 1);
  pt.multiplicity = 2;
  c.cones.push_back(pt);
  CodimOneSolvers solver(c);
  auto hits = solver.crossings(to_qvec(zvec({3})), 0, ShootMode::Strict);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].t == 3);
  CHECK(hits[0].multiplicity == 2);
  CHECK(hits[0].normal == zvec({1}));
}

TEST_CASE("coordinate_bounds sums weighted normal entries") {
  CodimOneSolvers solver(normalized(plane_line()));
  // Normals: (1,-1) for the diagonal, (0,1) for the horizontal ray's cone,
  // (1,0) for the vertical ray's cone.
  CHECK(solver.coordinate_bounds() == zvec({2, 2}));
}

TEST_CASE("solver rejects wrong codimension and pending weights") {
  TropicalCollection c;
  c.ambient_dim = 3;
  c.cones.push_back(cone_of({{1, 0, 0}}));
  try {
    CodimOneSolvers solver(c);
    FAIL("expected a codimension error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::WrongCodimension);
  }

  TropicalCollection p;
  p.ambient_dim = 2;
  p.cones.push_back(cone_of({{1, 1}}, 0));
  CHECK_THROWS_AS((void)CodimOneSolvers(p), Error);
}
