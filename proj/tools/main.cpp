/** Command line driver.  Every subcommand reads JSON inputs, runs one
 *  library pipeline, and prints exactly one JSON document on standard
 *  output; progress notes go to standard error.  Runs are deterministic:
 *  identical inputs and seed give byte-identical output.  Failures exit
 *  with status 1 and a JSON error object naming the operation and the
 *  error variant, so scripted callers never have to parse log text. */

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tropnp/fan.hpp"
#include "tropnp/hull.hpp"
#include "tropnp/io.hpp"
#include "tropnp/newton.hpp"
#include "tropnp/numeric.hpp"
#include "tropnp/pushforward.hpp"
#include "tropnp/symmetry.hpp"

namespace {

using namespace tropnp;

bool same_vec(const ZVec& a, const ZVec& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

/* Loads a fan file and prepares it for shooting; the canonical form is what
 * every query routine expects. */
CodimOneSolvers load_solvers(const std::string& path) {
  TropicalCollection c = normalized(load_collection(path));
  std::cerr << "fan " << path << ": " << c.cones.size() << " cones in dimension "
            << c.ambient_dim << ", lineality rank " << c.lineality.rows() << "\n";
  return CodimOneSolvers(std::move(c));
}

CoordSymmetryGroup group_argument(const std::string& arg, Index n) {
  if (arg == "trivial") return trivial_group(n);
  CoordSymmetryGroup g = load_group(arg);
  if (g.n_coords != n)
    fail(Errc::DimensionMismatch, "group acts on " + std::to_string(g.n_coords) +
                                      " coordinates, fan has " + std::to_string(n));
  return g;
}

Json witness_to_json(const VertexWitness& w) {
  Json j = Json::object();
  j["vertex"] = vector_to_json(w.vertex);
  j["objective"] = vector_to_json(w.objective);
  return j;
}

/* Runs fn(i) for every index on a pool of `jobs` workers.  Each index owns
 * its result slot and its own derived seed, so the outcome is independent
 * of scheduling; fn must not throw (workers have nowhere to put an
 * exception). */
template <typename Fn>
void pool_over_indices(std::size_t count, unsigned jobs, Fn fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const std::size_t pool = std::min<std::size_t>(jobs, count);
  for (std::size_t t = 0; t < pool; ++t)
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (std::thread& w : workers) w.join();
}

/* Worker count: the --jobs value when given, else TROPNP_JOBS, else 1. */
unsigned resolve_jobs(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  const char* env = std::getenv("TROPNP_JOBS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096)
    fail(Errc::BadInput, "TROPNP_JOBS must be a positive worker count, got '" +
                             std::string(env) + "'");
  return static_cast<unsigned>(v);
}

struct ShootArgs {
  std::string fan, objective;
  bool robust = false;
  std::uint64_t seed = 0;
};

Json run_shoot(const ShootArgs& a) {
  const CodimOneSolvers s = load_solvers(a.fan);
  const ZVec w = load_vector(a.objective);
  const VertexWitness witness =
      a.robust ? robust_shoot(s, w, a.seed) : ray_shoot(s, w);
  std::cerr << "vertex " << to_string(witness.vertex) << " from objective "
            << to_string(witness.objective) << "\n";
  return witness_to_json(witness);
}

struct WalkArgs {
  std::string fan, objective;
  bool ascending = false;
};

Json run_walk(const WalkArgs& a) {
  const CodimOneSolvers s = load_solvers(a.fan);
  const ZVec w = load_vector(a.objective);
  const VertexWitness start = ray_shoot(s, w);
  const std::vector<IntersectionRecord> records = shoot_records(s, w, a.ascending);
  const std::vector<VertexWitness> steps = walk(s, w, start.vertex, records, a.ascending);
  std::cerr << "walked " << steps.size() << " wall crossings from "
            << to_string(start.vertex) << (a.ascending ? " (ascending)" : " (descending)")
            << "\n";
  Json j = Json::object();
  j["direction"] = a.ascending ? "ascending" : "descending";
  j["start"] = witness_to_json(start);
  Json list = Json::array();
  for (const VertexWitness& wst : steps) list.push_back(witness_to_json(wst));
  j["steps"] = std::move(list);
  return j;
}

struct CertifyArgs {
  std::string fan, normal, bound;
  std::uint64_t seed = 0;
};

Json run_certify(const CertifyArgs& a) {
  const CodimOneSolvers s = load_solvers(a.fan);
  const ZVec normal = load_vector(a.normal);
  const Int bound = json_to_int(Json(a.bound), "--bound");
  const bool ok = certify_facet(s, normal, bound, a.seed);
  std::cerr << "inequality " << to_string(normal) << " . x <= " << bound.str()
            << (ok ? " certified" : " rejected") << "\n";
  Json j = Json::object();
  j["normal"] = vector_to_json(normal);
  j["bound"] = int_to_json(bound);
  j["certified"] = ok;
  return j;
}

struct CompleteArgs {
  std::string fan, seed_vertex = "auto", group = "trivial", csv;
  std::uint64_t seed = 0;
};

Json run_complete(const CompleteArgs& a) {
  const CodimOneSolvers s = load_solvers(a.fan);
  const Index n = s.collection().ambient_dim;
  const CoordSymmetryGroup group = group_argument(a.group, n);
  std::vector<VertexWitness> seeds;
  if (a.seed_vertex == "auto") {
    const ZVec chamber = find_chamber_vector(s, ZVec::Constant(n, 1));
    seeds.push_back(robust_shoot(s, chamber, a.seed));
    std::cerr << "auto seed: objective " << to_string(seeds.back().objective) << " gives vertex "
              << to_string(seeds.back().vertex) << "\n";
  } else {
    const Json root = read_json_file(a.seed_vertex);
    if (root.is_object() && root.contains("vertices")) {
      seeds = load_ledger(a.seed_vertex).vertices;
      std::cerr << "restarting from a ledger with " << seeds.size() << " vertices\n";
    } else {
      seeds.push_back(robust_shoot(s, json_to_vector(root, a.seed_vertex), a.seed));
      std::cerr << "seed objective gives vertex " << to_string(seeds.back().vertex) << "\n";
    }
  }
  const PolytopeLedger ledger = complete_polytope(s, seeds, group, a.seed);
  std::size_t certified = 0;
  for (const LedgerFacet& f : ledger.facets) certified += f.certified ? 1 : 0;
  std::cerr << "ledger: " << ledger.vertices.size() << " vertices, " << ledger.facets.size()
            << " facets (" << certified << " certified), " << ledger.edge_directions.rows()
            << " edge directions\n";
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) fail(Errc::BadInput, "cannot write " + a.csv);
    out << ledger_vertices_csv(ledger);
  }
  return ledger_to_json(ledger);
}

struct MinkowskiArgs {
  std::string fan, map;
};

Json run_minkowski(const MinkowskiArgs& a) {
  const TropicalCollection t = load_collection(a.fan);
  const MonomialMapSpec map = load_map(a.map);
  const TropicalCollection image = minkowski_image(t, map);
  std::cerr << "image: " << image.cones.size() << " cones in dimension " << image.ambient_dim
            << "; weights are pending (multiplicity is point-local, see hadamard)\n";
  return collection_to_json(image);
}

struct ProductArgs {
  std::string left, right;
};

Json run_product(const ProductArgs& a) {
  const TropicalCollection t1 = load_collection(a.left);
  const TropicalCollection t2 = load_collection(a.right);
  const TropicalCollection p = product_fan(t1, t2);
  std::cerr << "product: " << p.cones.size() << " cones in dimension " << p.ambient_dim << "\n";
  return collection_to_json(p);
}

struct HadamardArgs {
  std::string fan, delta = "1";
  bool delta_given = false;
};

Json run_hadamard(const HadamardArgs& a) {
  const TropicalCollection t = load_collection(a.fan);
  const Int delta = json_to_int(Json(a.delta), "--delta");
  if (!a.delta_given)
    std::cerr << "warning: --delta not given, defaulting to 1; the fan alone cannot reveal "
                 "the generic fiber size of the squared map\n";
  const TropicalCollection sq = hadamard_square(t, delta);
  std::cerr << "square: " << sq.cones.size() << " weighted cones in dimension "
            << sq.ambient_dim << "\n";
  return collection_to_json(sq);
}

struct OrbitArgs {
  std::string group, vector;
};

Json run_orbit(const OrbitArgs& a) {
  const CoordSymmetryGroup g = load_group(a.group);
  const ZVec v = load_vector(a.vector);
  const std::vector<ZVec> elements = orbit(g, v);
  const Int stab = stabilizer_order(g, v);
  std::cerr << "orbit of " << to_string(v) << ": size " << elements.size()
            << ", stabilizer order " << stab.str() << "\n";
  Json j = Json::object();
  j["size"] = int_to_json(Int(elements.size()));
  j["canonical"] = vector_to_json(elements.front());
  j["stabilizer_order"] = int_to_json(stab);
  j["group_order"] = int_to_json(group_order(g));
  Json list = Json::array();
  for (const ZVec& e : elements) list.push_back(vector_to_json(e));
  j["elements"] = std::move(list);
  return j;
}

struct OracleArgs {
  std::string poly;
  unsigned checks = 0;
  unsigned jobs = 0;
  std::uint64_t seed = 0;
};

/* One shoot-versus-argmax comparison; returns an empty string on agreement
 * and a description of the disagreement otherwise. */
std::string oracle_check(const CodimOneSolvers& s, const std::vector<ZVec>& vertices,
                         std::uint64_t seed, std::size_t index) {
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  const Index n = s.collection().ambient_dim;
  for (int attempt = 0; attempt < 64; ++attempt) {
    ZVec w(n);
    for (Index i = 0; i < n; ++i)
      w[i] = static_cast<std::int64_t>(rng() % 199) - 99;
    VertexWitness shot;
    try {
      shot = ray_shoot(s, w);
    } catch (const Error& e) {
      if (e.code() == Errc::ObjectiveInCone || e.code() == Errc::GenericityViolation) continue;
      return std::string("shoot failed: ") + e.what();
    }
    const ZVec* best = nullptr;
    Int best_value = 0;
    bool tied = false;
    for (const ZVec& v : vertices) {
      Int value = 0;
      for (Index i = 0; i < n; ++i) value += w[i] * v[i];
      if (best == nullptr || value > best_value) {
        best = &v;
        best_value = value;
        tied = false;
      } else if (value == best_value) {
        tied = true;
      }
    }
    if (tied) return "objective " + to_string(w) + " shot a vertex but its argmax is tied";
    if (!same_vec(shot.vertex, *best))
      return "objective " + to_string(w) + " shoots " + to_string(shot.vertex) +
             " but the argmax vertex is " + to_string(*best);
    return std::string();
  }
  return "no generic objective found after 64 draws";
}

Json run_oracle(const OracleArgs& a) {
  const std::vector<ZVec> raw = load_exponents(a.poly);
  const Index n = raw.front().size();
  /* Shooting reconstructs the translate touching all coordinate
   * hyperplanes, so ground the exponents the same way before comparing. */
  ZVec mins = raw.front();
  for (const ZVec& e : raw)
    for (Index i = 0; i < n; ++i)
      if (e[i] < mins[i]) mins[i] = e[i];
  std::vector<ZVec> grounded;
  grounded.reserve(raw.size());
  for (const ZVec& e : raw) grounded.push_back(e - mins);
  const Polytope hull = convex_hull(grounded);
  const CodimOneSolvers s(weighted_normal_skeleton(hull));
  std::cerr << "polytope: " << hull.vertices.size() << " vertices, " << hull.edges.size()
            << " edges, " << hull.facets.size() << " facets; skeleton has "
            << s.collection().cones.size() << " cones\n";

  std::vector<std::string> outcomes(a.checks);
  pool_over_indices(a.checks, resolve_jobs(a.jobs), [&](std::size_t i) {
    outcomes[i] = oracle_check(s, hull.vertices, a.seed, i);
  });
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    if (!outcomes[i].empty())
      fail(Errc::Internal, "check " + std::to_string(i) + ": " + outcomes[i]);
  if (a.checks > 0)
    std::cerr << "shoot agreement: " << a.checks << "/" << a.checks << " objectives match\n";

  Json j = Json::object();
  j["n"] = int_to_json(Int(n));
  Json verts = Json::array();
  for (const ZVec& v : hull.vertices) verts.push_back(vector_to_json(v));
  j["vertices"] = std::move(verts);
  Json fvec = Json::array();
  fvec.push_back(int_to_json(Int(hull.vertices.size())));
  fvec.push_back(int_to_json(Int(hull.edges.size())));
  fvec.push_back(int_to_json(Int(hull.facets.size())));
  j["f_vector"] = std::move(fvec);
  Json checks = Json::object();
  checks["requested"] = int_to_json(Int(a.checks));
  checks["matched"] = int_to_json(Int(a.checks));
  j["checks"] = std::move(checks);
  return j;
}

struct MultidegreeArgs {
  std::string grading, vertex;
};

Json run_multidegree(const MultidegreeArgs& a) {
  const ZMat grading = load_matrix(a.grading);
  const ZVec vertex = load_vector(a.vertex);
  const ZVec d = multidegree(grading, vertex);
  std::cerr << "multidegree " << to_string(d) << "\n";
  Json j = Json::object();
  j["multidegree"] = vector_to_json(d);
  return j;
}

/* Machine output: exactly one JSON document on stdout, optionally mirrored
 * to a file. */
void emit(const Json& result, const std::string& out_path) {
  const std::string text = json_to_text(result);
  std::cout << text;
  if (!out_path.empty()) write_json_file(out_path, result);
}

int emit_error(const std::string& operation, const std::string& kind, const std::string& message) {
  Json inner = Json::object();
  inner["operation"] = operation;
  inner["kind"] = kind;
  inner["message"] = message;
  Json j = Json::object();
  j["error"] = std::move(inner);
  std::cout << json_to_text(j);
  std::cerr << operation << " failed (" << kind << "): " << message << "\n";
  return 1;
}

/* Error::what() is "Kind: message"; the JSON carries the kind separately. */
std::string message_of(const Error& e) {
  const std::string text = e.what();
  const std::string prefix = std::string(errc_name(e.code())) + ": ";
  return text.rfind(prefix, 0) == 0 ? text.substr(prefix.size()) : text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Newton polytope reconstruction from tropical hypersurface data"};
  app.require_subcommand(1);
  std::string out_path;

  ShootArgs shoot_args;
  CLI::App* shoot_cmd = app.add_subcommand("shoot", "shoot one objective to a polytope vertex");
  shoot_cmd->add_option("--fan", shoot_args.fan, "weighted cone collection (JSON)")->required();
  shoot_cmd->add_option("--objective", shoot_args.objective, "objective vector (JSON array)")
      ->required();
  shoot_cmd->add_flag("--robust", shoot_args.robust,
                      "retry with seeded perturbations when the objective grazes a cone");
  shoot_cmd->add_option("--seed", shoot_args.seed, "perturbation seed (default 0)");

  WalkArgs walk_args;
  CLI::App* walk_cmd =
      app.add_subcommand("walk", "cross every wall met by the axis rays of one objective");
  walk_cmd->add_option("--fan", walk_args.fan, "weighted cone collection (JSON)")->required();
  walk_cmd->add_option("--objective", walk_args.objective, "objective vector (JSON array)")
      ->required();
  walk_cmd->add_flag("--ascending", walk_args.ascending, "walk the +e_i rays instead of -e_i");

  CertifyArgs certify_args;
  CLI::App* certify_cmd =
      app.add_subcommand("certify", "decide whether an inequality supports a facet");
  certify_cmd->add_option("--fan", certify_args.fan, "weighted cone collection (JSON)")->required();
  certify_cmd->add_option("--normal", certify_args.normal, "facet normal (JSON array)")->required();
  certify_cmd->add_option("--bound", certify_args.bound, "right-hand side (decimal integer)")
      ->required();
  certify_cmd->add_option("--seed", certify_args.seed, "perturbation seed (default 0)");

  CompleteArgs complete_args;
  CLI::App* complete_cmd =
      app.add_subcommand("complete", "reconstruct the whole vertex and facet ledger");
  complete_cmd->add_option("--fan", complete_args.fan, "weighted cone collection (JSON)")
      ->required();
  complete_cmd->add_option("--seed-vertex", complete_args.seed_vertex,
                           "'auto', an objective vector file, or a ledger to restart from");
  complete_cmd->add_option("--group", complete_args.group,
                           "'trivial' or a coordinate symmetry group file");
  complete_cmd->add_option("--seed", complete_args.seed, "perturbation seed (default 0)");
  complete_cmd->add_option("--csv", complete_args.csv, "also export vertices as CSV here");

  MinkowskiArgs minkowski_args;
  CLI::App* minkowski_cmd =
      app.add_subcommand("minkowski", "image of a collection under a monomial map");
  minkowski_cmd->add_option("--fan", minkowski_args.fan, "weighted cone collection (JSON)")
      ->required();
  minkowski_cmd->add_option("--map", minkowski_args.map, "monomial map (JSON)")->required();

  ProductArgs product_args;
  CLI::App* product_cmd = app.add_subcommand("product", "product of two collections");
  product_cmd->add_option("--left", product_args.left, "first collection (JSON)")->required();
  product_cmd->add_option("--right", product_args.right, "second collection (JSON)")->required();

  HadamardArgs hadamard_args;
  CLI::App* hadamard_cmd =
      app.add_subcommand("hadamard", "coordinatewise square with push-forward weights");
  hadamard_cmd->add_option("--fan", hadamard_args.fan, "weighted cone collection (JSON)")
      ->required();
  hadamard_cmd->add_option("--delta", hadamard_args.delta,
                           "generic fiber size of the squared map (decimal integer)");

  OrbitArgs orbit_args;
  CLI::App* orbit_cmd = app.add_subcommand("orbit", "orbit of a vector under a symmetry group");
  orbit_cmd->add_option("--group", orbit_args.group, "coordinate symmetry group (JSON)")
      ->required();
  orbit_cmd->add_option("--vector", orbit_args.vector, "vector (JSON array)")->required();

  OracleArgs oracle_args;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "convex hull of a polynomial support, with shoot cross-checks");
  oracle_cmd->add_option("--poly", oracle_args.poly, "polynomial support (JSON)")->required();
  oracle_cmd->add_option("--check-shoot", oracle_args.checks,
                         "compare this many random shots against direct maximization");
  oracle_cmd->add_option("--jobs", oracle_args.jobs,
                         "worker count for the checks (default: TROPNP_JOBS or 1)");
  oracle_cmd->add_option("--seed", oracle_args.seed, "objective draw seed (default 0)");

  MultidegreeArgs multidegree_args;
  CLI::App* multidegree_cmd =
      app.add_subcommand("multidegree", "grading matrix times a polytope vertex");
  multidegree_cmd->add_option("--grading", multidegree_args.grading, "grading matrix (JSON)")
      ->required();
  multidegree_cmd->add_option("--vertex", multidegree_args.vertex, "vertex (JSON array)")
      ->required();

  for (CLI::App* sub : app.get_subcommands({}))
    sub->add_option("--out", out_path, "also write the result JSON to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", "UsageError", e.what());
  }

  const std::string operation = app.get_subcommands().front()->get_name();
  try {
    hadamard_args.delta_given = hadamard_cmd->count("--delta") > 0;
    Json result;
    if (shoot_cmd->parsed()) result = run_shoot(shoot_args);
    else if (walk_cmd->parsed()) result = run_walk(walk_args);
    else if (certify_cmd->parsed()) result = run_certify(certify_args);
    else if (complete_cmd->parsed()) result = run_complete(complete_args);
    else if (minkowski_cmd->parsed()) result = run_minkowski(minkowski_args);
    else if (product_cmd->parsed()) result = run_product(product_args);
    else if (hadamard_cmd->parsed()) result = run_hadamard(hadamard_args);
    else if (orbit_cmd->parsed()) result = run_orbit(orbit_args);
    else if (oracle_cmd->parsed()) result = run_oracle(oracle_args);
    else result = run_multidegree(multidegree_args);
    emit(result, out_path);
    return 0;
  } catch (const Error& e) {
    return emit_error(operation, errc_name(e.code()), message_of(e));
  } catch (const std::exception& e) {
    return emit_error(operation, "Internal", e.what());
  }
}
