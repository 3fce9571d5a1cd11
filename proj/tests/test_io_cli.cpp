#include "tropnp/io.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"
#include "tropnp/newton.hpp"
#include "tropnp/symmetry.hpp"

using namespace tropnp;
using namespace tropnp::testing;

namespace {

bool same_vec(const ZVec& a, const ZVec& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool same_mat(const ZMat& a, const ZMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

/* Serialize-parse-deserialize, the exact path a file takes. */
Json reparse(const Json& j) { return Json::parse(json_to_text(j)); }

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "io_cli_" + name;
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
  return path;
}

struct CliResult {
  int status = -1;
  std::string out;
};

/* Runs the driver binary with the given arguments, capturing stdout; the
 * human log on stderr is dropped.  The binary path comes from ctest. */
CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("TROPNP_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "TROPNP_BIN must point at the driver binary");
  const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("integers round-trip through decimal strings") {
  const Int big = Int("123456789012345678901234567890123456789");
  CHECK(json_to_int(reparse(int_to_json(big)), "t") == big);
  CHECK(json_to_int(reparse(int_to_json(Int(-big))), "t") == -big);
  CHECK(json_to_int(reparse(int_to_json(Int(0))), "t") == 0);
  CHECK(int_to_json(Int(-7)).get<std::string>() == "-7");

  // Native JSON integers are accepted, including the unsigned extremes.
  CHECK(json_to_int(Json(42), "t") == 42);
  CHECK(json_to_int(Json(-9007199254740993LL), "t") == Int("-9007199254740993"));
  CHECK(json_to_int(Json(18446744073709551615ULL), "t") == Int("18446744073709551615"));

  // A leading zero must stay decimal, never octal.
  CHECK(json_to_int(Json("007"), "t") == 7);
  CHECK(json_to_int(Json("-0"), "t") == 0);

  CHECK(code_of([] { json_to_int(Json(1.5), "t"); }) == Errc::BadInput);
  CHECK(code_of([] { json_to_int(Json("1.5"), "t"); }) == Errc::BadInput);
  CHECK(code_of([] { json_to_int(Json(""), "t"); }) == Errc::BadInput);
  CHECK(code_of([] { json_to_int(Json("-"), "t"); }) == Errc::BadInput);
  CHECK(code_of([] { json_to_int(Json("12a"), "t"); }) == Errc::BadInput);
  CHECK(code_of([] { json_to_int(Json("+5"), "t"); }) == Errc::BadInput);
  CHECK(code_of([] { json_to_int(Json::array(), "t"); }) == Errc::BadInput);
}

TEST_CASE("vectors and matrices round-trip and reject ragged rows") {
  const ZVec v = zvec({3, -1, 0});
  CHECK(same_vec(json_to_vector(reparse(vector_to_json(v)), "t"), v));
  CHECK(json_to_vector(Json::array(), "t").size() == 0);

  const ZMat m = zmat({{1, 2, 3}, {-4, 5, -6}});
  CHECK(same_mat(json_to_matrix(reparse(matrix_to_json(m)), "t"), m));
  const ZMat empty = json_to_matrix(Json::array(), "t");
  CHECK(empty.rows() == 0);
  CHECK(empty.cols() == 0);

  CHECK(code_of([] { json_to_vector(Json::object(), "t"); }) == Errc::BadInput);
  CHECK(code_of([] { json_to_matrix(Json::parse("[[1,2],[3]]"), "t"); }) == Errc::BadInput);
  CHECK(code_of([] { json_to_matrix(Json::parse("[1,2]"), "t"); }) == Errc::BadInput);
}

TEST_CASE("collections round-trip bit-exactly") {
  TropicalCollection c;
  c.ambient_dim = 3;
  c.lineality = zmat({{1, 1, 1}});
  WeightedCone k1;
  k1.rays = zmat({{1, 0, -1}, {0, 2, 5}});
  k1.multiplicity = Int("1180591620717411303424");  // 2^70, past any int64
  WeightedCone k2;
  k2.rays = ZMat(0, 3);
  k2.multiplicity = 1;
  c.cones = {k1, k2};

  const TropicalCollection back = collection_from_json(reparse(collection_to_json(c)));
  CHECK(back.ambient_dim == 3);
  CHECK(same_mat(back.lineality, c.lineality));
  REQUIRE(back.cones.size() == 2);
  CHECK(same_mat(back.cones[0].rays, k1.rays));
  CHECK(back.cones[0].multiplicity == k1.multiplicity);
  CHECK(back.cones[1].rays.rows() == 0);
  CHECK(back.cones[1].rays.cols() == 3);
  CHECK(back.cones[1].multiplicity == 1);

  // Serialization is a pure function of the value.
  CHECK(json_to_text(collection_to_json(c)) == json_to_text(collection_to_json(back)));

  SUBCASE("optional fields default") {
    const Json j = Json::parse(R"({"ambient_dim": 2, "cones": [{"rays": [[1, 0]]}]})");
    const TropicalCollection d = collection_from_json(j);
    CHECK(d.lineality.rows() == 0);
    CHECK(d.cones.size() == 1);
    CHECK(d.cones[0].multiplicity == 1);
  }
  SUBCASE("an empty cone list is a valid collection") {
    const Json j = Json::parse(R"({"ambient_dim": 2, "cones": []})");
    CHECK(collection_from_json(j).cones.empty());
  }
  SUBCASE("missing fields are named in errors") {
    CHECK(code_of([] { collection_from_json(Json::parse(R"({"cones": []})")); }) ==
          Errc::BadInput);
    CHECK(code_of([] { collection_from_json(Json::parse(R"({"ambient_dim": 2})")); }) ==
          Errc::BadInput);
    CHECK(code_of([] { collection_from_json(Json::parse("[]")); }) == Errc::BadInput);
  }
  SUBCASE("structural validation still runs") {
    const Json j = Json::parse(R"({"ambient_dim": 2, "cones": [{"rays": [[0, 0]]}]})");
    CHECK(code_of([&] { collection_from_json(j); }) == Errc::ZeroVector);
  }
}

TEST_CASE("orbit-compressed collections expand on load") {
  const Json j = Json::parse(R"({
    "ambient_dim": 2,
    "group": {"n_coords": 2, "generators": [[1, 0]]},
    "orbit_representatives": [{"rays": [[1, 0]], "multiplicity": 2}]
  })");
  const TropicalCollection c = collection_from_json(j);
  REQUIRE(c.cones.size() == 2);
  CHECK(same_mat(c.cones[0].rays, zmat({{0, 1}})));
  CHECK(same_mat(c.cones[1].rays, zmat({{1, 0}})));
  CHECK(c.cones[0].multiplicity == 2);
  CHECK(c.cones[1].multiplicity == 2);

  SUBCASE("an invariant lineality space passes") {
    Json inv = j;
    inv["lineality"] = Json::parse("[[1, 1]]");
    CHECK(collection_from_json(inv).cones.size() == 2);
  }
  SUBCASE("a non-invariant lineality space is refused") {
    Json bad = j;
    bad["lineality"] = Json::parse("[[1, 0]]");
    CHECK(code_of([&] { collection_from_json(bad); }) == Errc::BadInput);
  }
  SUBCASE("the group must act on the ambient coordinates") {
    Json bad = j;
    bad["group"] = Json::parse(R"({"n_coords": 3, "generators": []})");
    CHECK(code_of([&] { collection_from_json(bad); }) == Errc::BadInput);
  }
}

TEST_CASE("groups round-trip and accept the cube shorthand") {
  const CoordSymmetryGroup g = make_group(3, {{1, 2, 0}, {0, 2, 1}});
  const CoordSymmetryGroup back = group_from_json(reparse(group_to_json(g)));
  CHECK(back.n_coords == 3);
  REQUIRE(back.generators.size() == 2);
  CHECK(back.generators[0] == g.generators[0]);
  CHECK(back.generators[1] == g.generators[1]);

  const CoordSymmetryGroup cube = group_from_json(Json::parse(R"({"hyperoctahedral_cube": 2})"));
  CHECK(cube.n_coords == 4);
  CHECK(group_order(cube) == 8);

  CHECK(code_of([] {
          group_from_json(Json::parse(R"({"n_coords": 3, "generators": [[0, 0, 1]]})"));
        }) == Errc::BadInput);
  CHECK(code_of([] { group_from_json(Json::parse(R"({"generators": []})")); }) == Errc::BadInput);
}

TEST_CASE("maps store lattice generators as columns") {
  // One generator (1,2,3) of a rank-1 lattice in the 3-dimensional source:
  // the file holds it as a column, the in-memory spec as a row.
  const Json j = Json::parse(R"({
    "A": [[1, 0, 1], [0, 1, 1]],
    "delta": "2",
    "lambda": [[1], [2], [3]]
  })");
  const MonomialMapSpec m = map_from_json(j);
  CHECK(same_mat(m.A, zmat({{1, 0, 1}, {0, 1, 1}})));
  CHECK(m.delta == 2);
  CHECK(same_mat(m.lambda, zmat({{1, 2, 3}})));

  const Json back = map_to_json(m);
  CHECK(back["lambda"] == Json::parse("[[\"1\"], [\"2\"], [\"3\"]]"));
  const MonomialMapSpec again = map_from_json(reparse(back));
  CHECK(same_mat(again.lambda, m.lambda));
  CHECK(again.delta == m.delta);

  SUBCASE("delta and lambda are optional") {
    const MonomialMapSpec d = map_from_json(Json::parse(R"({"A": [[1, 1]]})"));
    CHECK(d.delta == 1);
    CHECK(d.lambda.rows() == 0);
    CHECK(d.lambda.cols() == 2);
    CHECK(map_to_json(d)["lambda"] == Json::array());
  }
  SUBCASE("shape errors are refused") {
    CHECK(code_of([] { map_from_json(Json::parse(R"({"A": []})")); }) == Errc::BadInput);
    CHECK(code_of([] { map_from_json(Json::parse(R"({"A": [[1, 1]], "delta": 0})")); }) ==
          Errc::BadInput);
    CHECK(code_of([] {
            map_from_json(Json::parse(R"({"A": [[1, 0, 1]], "lambda": [[1], [2]]})"));
          }) == Errc::BadInput);
  }
}

TEST_CASE("polynomial supports parse") {
  const Json j = Json::parse(R"({"n": 2, "monomials": [[0, 0], [1, 0], [0, 1]]})");
  const std::vector<ZVec> e = exponents_from_json(j);
  REQUIRE(e.size() == 3);
  CHECK(same_vec(e[2], zvec({0, 1})));

  const std::vector<ZVec> back = exponents_from_json(reparse(exponents_to_json(2, e)));
  CHECK(back.size() == 3);
  CHECK(same_vec(back[1], e[1]));

  CHECK(code_of([] {
          exponents_from_json(Json::parse(R"({"n": 2, "monomials": [[1, 2, 3]]})"));
        }) == Errc::BadInput);
  CHECK(code_of([] { exponents_from_json(Json::parse(R"({"n": 2, "monomials": []})")); }) ==
        Errc::BadInput);
  CHECK(code_of([] { exponents_from_json(Json::parse(R"({"n": 0, "monomials": [[]]})")); }) ==
        Errc::BadInput);
}

TEST_CASE("ledgers round-trip with vertex CSV") {
  PolytopeLedger l;
  VertexWitness w1;
  w1.vertex = zvec({0, 0});
  w1.objective = zvec({-1, -2});
  VertexWitness w2;
  w2.vertex = zvec({2, 1});
  w2.objective = zvec({3, 1});
  l.vertices = {w1, w2};
  LedgerFacet f;
  f.normal = zvec({1, 2});
  f.bound = 4;
  f.certified = true;
  l.facets = {f};
  l.edge_directions = zmat({{2, 1}});
  l.group = trivial_group(2);

  const PolytopeLedger back = ledger_from_json(reparse(ledger_to_json(l)));
  REQUIRE(back.vertices.size() == 2);
  CHECK(same_vec(back.vertices[1].vertex, w2.vertex));
  CHECK(same_vec(back.vertices[1].objective, w2.objective));
  REQUIRE(back.facets.size() == 1);
  CHECK(same_vec(back.facets[0].normal, f.normal));
  CHECK(back.facets[0].bound == 4);
  CHECK(back.facets[0].certified);
  CHECK(same_mat(back.edge_directions, l.edge_directions));

  CHECK(ledger_vertices_csv(l) == "0,0\n2,1\n");

  SUBCASE("edge directions are optional on load") {
    Json j = ledger_to_json(l);
    j.erase("edge_directions");
    CHECK(ledger_from_json(j).edge_directions.rows() == 0);
  }
  SUBCASE("field types are checked") {
    Json j = ledger_to_json(l);
    j["facets"][0]["certified"] = "yes";
    CHECK(code_of([&] { ledger_from_json(j); }) == Errc::BadInput);
    Json k = ledger_to_json(l);
    k["vertices"][0]["objective"] = Json::parse("[1]");
    CHECK(code_of([&] { ledger_from_json(k); }) == Errc::BadInput);
  }
}

TEST_CASE("json files read and write") {
  const Json j = collection_to_json(normalized(six_ray_curve()));
  const std::string path = "io_cli_roundtrip.json";
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
  CHECK(read_file(path) == json_to_text(j));

  CHECK(code_of([] { read_json_file("io_cli_missing_file.json"); }) == Errc::BadInput);
  const std::string broken = write_temp("broken.json", "{ \"ambient_dim\": ");
  CHECK(code_of([&] { read_json_file(broken); }) == Errc::BadInput);
}

TEST_CASE("the driver shoots and reports errors as JSON") {
  const std::string fan = write_temp("tri_fan.json", R"({
    "ambient_dim": 2,
    "cones": [{"rays": [[1, 1]]}, {"rays": [[-1, 0]]}, {"rays": [[0, -1]]}]
  })");
  const std::string objective = write_temp("tri_obj.json", "[2, 1]");

  const CliResult shot = run_cli("shoot --fan " + fan + " --objective " + objective);
  CHECK(shot.status == 0);
  const Json out = Json::parse(shot.out);
  CHECK(out["vertex"] == Json::parse(R"(["1", "0"])"));
  CHECK(out["objective"] == Json::parse(R"(["2", "1"])"));

  SUBCASE("an objective on the support is a structured error") {
    const std::string on = write_temp("tri_on.json", "[3, 3]");
    const CliResult r = run_cli("shoot --fan " + fan + " --objective " + on);
    CHECK(r.status == 1);
    const Json e = Json::parse(r.out);
    CHECK(e["error"]["operation"] == "shoot");
    CHECK(e["error"]["kind"] == "ObjectiveInCone");
    CHECK(e["error"]["message"].is_string());
  }
  SUBCASE("robust shooting repairs a grazing objective") {
    const std::string grazing = write_temp("tri_graze.json", "[3, 0]");
    const CliResult plain = run_cli("shoot --fan " + fan + " --objective " + grazing);
    CHECK(plain.status == 1);
    CHECK(Json::parse(plain.out)["error"]["kind"] == "GenericityViolation");
    const CliResult fixed =
        run_cli("shoot --fan " + fan + " --objective " + grazing + " --robust --seed 0");
    CHECK(fixed.status == 0);
    CHECK(Json::parse(fixed.out)["vertex"] == Json::parse(R"(["1", "0"])"));
  }
  SUBCASE("the walk crosses the triangle edge") {
    const CliResult r = run_cli("walk --fan " + fan + " --objective " + objective);
    CHECK(r.status == 0);
    const Json w = Json::parse(r.out);
    CHECK(w["start"]["vertex"] == Json::parse(R"(["1", "0"])"));
    REQUIRE(w["steps"].size() == 1);
    CHECK(w["steps"][0]["vertex"] == Json::parse(R"(["0", "1"])"));
  }
  SUBCASE("certification answers both ways") {
    const std::string normal = write_temp("tri_normal.json", "[1, 1]");
    const CliResult yes =
        run_cli("certify --fan " + fan + " --normal " + normal + " --bound 1");
    CHECK(yes.status == 0);
    CHECK(Json::parse(yes.out)["certified"] == true);
    const CliResult no = run_cli("certify --fan " + fan + " --normal " + normal + " --bound 2");
    CHECK(no.status == 0);
    CHECK(Json::parse(no.out)["certified"] == false);
  }
  SUBCASE("usage errors are structured too") {
    const CliResult r = run_cli("frobnicate --fan " + fan);
    CHECK(r.status == 1);
    const Json e = Json::parse(r.out);
    CHECK(e["error"]["operation"] == "usage");
    CHECK(e["error"]["kind"] == "UsageError");
  }
}

TEST_CASE("the driver completes ledgers deterministically") {
  const std::string fan = write_temp("det_fan.json", R"({
    "ambient_dim": 2,
    "cones": [{"rays": [[1, 1]]}, {"rays": [[-1, 0]]}, {"rays": [[0, -1]]}]
  })");
  const std::string out1 = "io_cli_ledger1.json";
  const std::string csv = "io_cli_vertices.csv";
  const CliResult r1 = run_cli("complete --fan " + fan + " --seed 5 --out " + out1 +
                               " --csv " + csv);
  const CliResult r2 = run_cli("complete --fan " + fan + " --seed 5");
  CHECK(r1.status == 0);
  CHECK(r2.status == 0);
  CHECK(r1.out == r2.out);          // byte-identical reruns
  CHECK(read_file(out1) == r1.out); // the --out mirror is the same bytes

  const Json ledger = Json::parse(r1.out);
  CHECK(ledger["vertices"].size() == 3);
  CHECK(ledger["facets"].size() == 3);
  CHECK(read_file(csv) == "0,0\n0,1\n1,0\n");

  SUBCASE("a ledger restarts a completion") {
    const CliResult r3 =
        run_cli("complete --fan " + fan + " --seed-vertex " + out1 + " --seed 5");
    CHECK(r3.status == 0);
    CHECK(Json::parse(r3.out) == ledger);
  }
}

TEST_CASE("malformed inputs produce structured errors") {
  const std::vector<std::string> bad_fans = {
      "{",                                                      // truncated
      R"({"ambient_dim": 2.5, "cones": []})",                   // float dimension
      R"({"ambient_dim": 2, "cones": [{"rays": [[1.25, 0]]}]})",// float entry
      R"({"ambient_dim": 2, "cones": [{"rays": [[1, 0], [1]]}]})", // ragged rays
      R"({"cones": []})",                                       // missing dimension
      R"({"ambient_dim": 2, "cones": [{"rays": [[0, 0]]}]})",   // zero ray
      R"({"ambient_dim": 2, "cones": [{"rays": [[1, 0]], "multiplicity": -1}]})",
      R"([1, 2, 3])",                                           // not an object
  };
  const std::string objective = write_temp("fuzz_obj.json", "[1, 2]");
  for (std::size_t i = 0; i < bad_fans.size(); ++i) {
    CAPTURE(i);
    const std::string fan = write_temp("fuzz_fan_" + std::to_string(i) + ".json", bad_fans[i]);
    const CliResult r = run_cli("shoot --fan " + fan + " --objective " + objective);
    CHECK(r.status == 1);
    const Json e = Json::parse(r.out, nullptr, false);
    REQUIRE_MESSAGE(!e.is_discarded(), "error output must stay valid JSON");
    CHECK(e["error"]["kind"].is_string());
    CHECK(e["error"]["operation"] == "shoot");
  }
  const CliResult missing =
      run_cli("shoot --fan io_cli_no_such_file.json --objective " + objective);
  CHECK(missing.status == 1);
  CHECK(Json::parse(missing.out)["error"]["kind"] == "BadInput");
}

TEST_CASE("the oracle and multidegree subcommands match their contracts") {
  const std::string poly = write_temp("oracle_poly.json", R"({
    "n": 2, "monomials": [[0, 0], [1, 0], [0, 1]]
  })");
  const CliResult r = run_cli("oracle --poly " + poly + " --check-shoot 20 --jobs 2 --seed 1");
  CHECK(r.status == 0);
  const Json out = Json::parse(r.out);
  CHECK(out["checks"]["requested"] == "20");
  CHECK(out["checks"]["matched"] == "20");
  CHECK(out["f_vector"] == Json::parse(R"(["3", "3", "3"])"));

  const std::string grading = write_temp("grading.json", "[[1, 0], [0, 2]]");
  const std::string vertex = write_temp("md_vertex.json", "[3, 5]");
  const CliResult md = run_cli("multidegree --grading " + grading + " --vertex " + vertex);
  CHECK(md.status == 0);
  CHECK(Json::parse(md.out)["multidegree"] == Json::parse(R"(["3", "10"])"));
}

TEST_CASE("fan pipelines compose through files") {
  const TropicalCollection curve = six_ray_curve();
  const std::string curve_path = "io_cli_curve.json";
  write_json_file(curve_path, collection_to_json(curve));

  const std::string square_path = "io_cli_curve_square.json";
  const CliResult sq =
      run_cli("hadamard --fan " + curve_path + " --delta 1 --out " + square_path);
  CHECK(sq.status == 0);
  const TropicalCollection square = load_collection(square_path);
  CHECK(square.cones.size() == 15);
  for (const WeightedCone& k : square.cones) CHECK(k.multiplicity > 0);

  const CliResult led = run_cli("complete --fan " + square_path +
                                " --seed-vertex auto --group trivial");
  CHECK(led.status == 0);
  const Json ledger = Json::parse(led.out);
  CHECK(ledger["vertices"].size() == 16);
  CHECK(ledger["facets"].size() == 11);

  SUBCASE("the product of two curves feeds the same square") {
    const std::string prod_path = "io_cli_prod.json";
    const CliResult prod = run_cli("product --left " + curve_path + " --right " + curve_path +
                                   " --out " + prod_path);
    CHECK(prod.status == 0);
    CHECK(load_collection(prod_path).cones.size() == 36);

    const std::string map_path =
        write_temp("sum_map.json",
                   R"({"A": [[1,0,0,1,0,0],[0,1,0,0,1,0],[0,0,1,0,0,1]], "delta": 1})");
    const CliResult mink =
        run_cli("minkowski --fan " + prod_path + " --map " + map_path);
    CHECK(mink.status == 0);
    const Json image = Json::parse(mink.out);
    CHECK(image["cones"].size() == 15);
    for (const Json& cone : image["cones"]) CHECK(cone["multiplicity"] == "0");
  }
  SUBCASE("orbit expansion at load time matches the orbit subcommand") {
    const std::string group_path = write_temp("cube_group.json", R"({"hyperoctahedral_cube": 2})");
    const std::string vec_path = write_temp("orbit_vec.json", "[1, 2, 3, 4]");
    const CliResult orb = run_cli("orbit --group " + group_path + " --vector " + vec_path);
    CHECK(orb.status == 0);
    const Json out = Json::parse(orb.out);
    CHECK(out["size"] == "8");
    CHECK(out["group_order"] == "8");
    CHECK(out["elements"].size() == 8);
    CHECK(out["elements"][0] == out["canonical"]);
  }
}
