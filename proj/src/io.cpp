#include "tropnp/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>

namespace tropnp {

namespace {

/* Decimal-string parsing is done digit by digit on purpose: string
 * constructors of the big-integer type auto-detect C-style bases, so a
 * leading zero would silently switch to octal. */
Int parse_decimal(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  const bool negative = !s.empty() && s[0] == '-';
  if (negative) pos = 1;
  if (pos == s.size()) fail(Errc::BadInput, what + ": '" + s + "' is not a decimal integer");
  Int acc = 0;
  for (; pos < s.size(); ++pos) {
    const char ch = s[pos];
    if (ch < '0' || ch > '9')
      fail(Errc::BadInput, what + ": '" + s + "' is not a decimal integer");
    acc *= 10;
    acc += ch - '0';
  }
  return negative ? Int(-acc) : acc;
}

const Json& require_key(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) fail(Errc::BadInput, what + " must be a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) fail(Errc::BadInput, what + " is missing the \"" + key + "\" field");
  return *it;
}

/* Small nonnegative integer fields (dimensions, permutation entries). */
Index json_to_index(const Json& j, const std::string& what) {
  const Int v = json_to_int(j, what);
  if (v < 0 || v > 1000000000)
    fail(Errc::BadInput, what + " is out of range: " + v.str());
  return static_cast<Index>(v.convert_to<long long>());
}

WeightedCone cone_from_json(const Json& j, Index n, const std::string& what) {
  WeightedCone k;
  k.rays = json_to_matrix(require_key(j, "rays", what), what + ".rays");
  if (k.rays.rows() == 0) k.rays.resize(0, n);
  if (j.contains("multiplicity")) k.multiplicity = json_to_int(j["multiplicity"], what + ".multiplicity");
  return k;
}

Json cone_to_json(const WeightedCone& k) {
  Json j = Json::object();
  j["rays"] = matrix_to_json(k.rays);
  j["multiplicity"] = int_to_json(k.multiplicity);
  return j;
}

}  // namespace

Json int_to_json(const Int& v) { return Json(v.str()); }

Int json_to_int(const Json& j, const std::string& what) {
  if (j.is_string()) return parse_decimal(j.get<std::string>(), what);
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_float())
    fail(Errc::BadInput, what + " must be an integer or decimal string, not a float");
  fail(Errc::BadInput, what + " must be an integer or decimal string");
}

Json vector_to_json(const ZVec& v) {
  Json j = Json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(int_to_json(v[i]));
  return j;
}

ZVec json_to_vector(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(Errc::BadInput, what + " must be an array");
  ZVec v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i)
    v[i] = json_to_int(j[static_cast<std::size_t>(i)], what + "[" + std::to_string(i) + "]");
  return v;
}

Json matrix_to_json(const ZMat& m) {
  Json j = Json::array();
  for (Index i = 0; i < m.rows(); ++i) j.push_back(vector_to_json(m.row(i).transpose()));
  return j;
}

ZMat json_to_matrix(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(Errc::BadInput, what + " must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) return ZMat(0, 0);
  std::vector<ZVec> parsed;
  parsed.reserve(static_cast<std::size_t>(rows));
  for (Index i = 0; i < rows; ++i)
    parsed.push_back(
        json_to_vector(j[static_cast<std::size_t>(i)], what + "[" + std::to_string(i) + "]"));
  const Index cols = parsed.front().size();
  ZMat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (parsed[static_cast<std::size_t>(i)].size() != cols)
      fail(Errc::BadInput, what + " has rows of unequal length");
    m.row(i) = parsed[static_cast<std::size_t>(i)].transpose();
  }
  return m;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(Errc::BadInput, path + ": " + e.what());
  }
}

std::string json_to_text(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::BadInput, "cannot write " + path);
  out << json_to_text(j);
  if (!out) fail(Errc::BadInput, "write to " + path + " failed");
}

TropicalCollection collection_from_json(const Json& j) {
  TropicalCollection c;
  c.ambient_dim = json_to_index(require_key(j, "ambient_dim", "collection"), "ambient_dim");
  c.lineality = ZMat(0, c.ambient_dim);
  if (j.contains("lineality")) {
    const ZMat l = json_to_matrix(j["lineality"], "lineality");
    if (l.rows() > 0) c.lineality = l;
  }
  const bool compressed = j.contains("orbit_representatives");
  const char* list_key = compressed ? "orbit_representatives" : "cones";
  const Json& list = require_key(j, list_key, "collection");
  if (!list.is_array()) fail(Errc::BadInput, std::string(list_key) + " must be an array");
  for (std::size_t i = 0; i < list.size(); ++i)
    c.cones.push_back(
        cone_from_json(list[i], c.ambient_dim, std::string(list_key) + "[" + std::to_string(i) + "]"));
  if (compressed) {
    const CoordSymmetryGroup g = group_from_json(require_key(j, "group", "collection"));
    if (g.n_coords != c.ambient_dim)
      fail(Errc::BadInput, "group acts on " + std::to_string(g.n_coords) +
                               " coordinates but the collection lives in dimension " +
                               std::to_string(c.ambient_dim));
    c = expand_orbit_collection(g, c);
  }
  validate_collection(c);
  return c;
}

Json collection_to_json(const TropicalCollection& c) {
  Json j = Json::object();
  j["ambient_dim"] = int_to_json(Int(c.ambient_dim));
  j["lineality"] = matrix_to_json(c.lineality);
  Json cones = Json::array();
  for (const WeightedCone& k : c.cones) cones.push_back(cone_to_json(k));
  j["cones"] = std::move(cones);
  return j;
}

TropicalCollection load_collection(const std::string& path) {
  return collection_from_json(read_json_file(path));
}

CoordSymmetryGroup group_from_json(const Json& j) {
  if (j.is_object() && j.contains("hyperoctahedral_cube"))
    return hyperoctahedral_on_cube(json_to_index(j["hyperoctahedral_cube"], "hyperoctahedral_cube"));
  const Index n = json_to_index(require_key(j, "n_coords", "group"), "n_coords");
  const Json& gens = require_key(j, "generators", "group");
  if (!gens.is_array()) fail(Errc::BadInput, "generators must be an array");
  std::vector<std::vector<Index>> generators;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const std::string what = "generators[" + std::to_string(gi) + "]";
    const Json& row = gens[gi];
    if (!row.is_array()) fail(Errc::BadInput, what + " must be an array");
    std::vector<Index> perm;
    for (std::size_t i = 0; i < row.size(); ++i)
      perm.push_back(json_to_index(row[i], what + "[" + std::to_string(i) + "]"));
    generators.push_back(std::move(perm));
  }
  return make_group(n, std::move(generators));
}

Json group_to_json(const CoordSymmetryGroup& g) {
  Json j = Json::object();
  j["n_coords"] = int_to_json(Int(g.n_coords));
  Json gens = Json::array();
  for (const std::vector<Index>& perm : g.generators) {
    Json row = Json::array();
    for (Index v : perm) row.push_back(int_to_json(Int(v)));
    gens.push_back(std::move(row));
  }
  j["generators"] = std::move(gens);
  return j;
}

CoordSymmetryGroup load_group(const std::string& path) {
  return group_from_json(read_json_file(path));
}

MonomialMapSpec map_from_json(const Json& j) {
  MonomialMapSpec m;
  m.A = json_to_matrix(require_key(j, "A", "map"), "A");
  if (m.A.rows() == 0 || m.A.cols() == 0)
    fail(Errc::BadInput, "map matrix A must have at least one row and column");
  if (j.contains("delta")) {
    m.delta = json_to_int(j["delta"], "delta");
    if (m.delta < 1) fail(Errc::BadInput, "delta must be positive, got " + m.delta.str());
  }
  m.lambda = ZMat(0, m.A.cols());
  if (j.contains("lambda")) {
    const ZMat columns = json_to_matrix(j["lambda"], "lambda");
    if (columns.rows() > 0) {
      if (columns.rows() != m.A.cols())
        fail(Errc::BadInput,
             "lambda stores lattice generators as columns, so it needs one row per source "
             "coordinate (" +
                 std::to_string(m.A.cols()) + "), got " + std::to_string(columns.rows()));
      m.lambda = columns.transpose();
    }
  }
  return m;
}

Json map_to_json(const MonomialMapSpec& m) {
  Json j = Json::object();
  j["A"] = matrix_to_json(m.A);
  j["delta"] = int_to_json(m.delta);
  j["lambda"] = m.lambda.rows() == 0 ? Json::array() : matrix_to_json(m.lambda.transpose());
  return j;
}

MonomialMapSpec load_map(const std::string& path) { return map_from_json(read_json_file(path)); }

std::vector<ZVec> exponents_from_json(const Json& j) {
  const Index n = json_to_index(require_key(j, "n", "polynomial"), "n");
  if (n < 1) fail(Errc::BadInput, "polynomial needs at least one variable");
  const Json& rows = require_key(j, "monomials", "polynomial");
  if (!rows.is_array() || rows.empty())
    fail(Errc::BadInput, "monomials must be a nonempty array");
  std::vector<ZVec> exponents;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ZVec e = json_to_vector(rows[i], "monomials[" + std::to_string(i) + "]");
    if (e.size() != n)
      fail(Errc::BadInput, "monomials[" + std::to_string(i) + "] has " +
                               std::to_string(e.size()) + " exponents, expected " +
                               std::to_string(n));
    exponents.push_back(std::move(e));
  }
  return exponents;
}

Json exponents_to_json(Index n, const std::vector<ZVec>& monomials) {
  Json j = Json::object();
  j["n"] = int_to_json(Int(n));
  Json rows = Json::array();
  for (const ZVec& e : monomials) rows.push_back(vector_to_json(e));
  j["monomials"] = std::move(rows);
  return j;
}

std::vector<ZVec> load_exponents(const std::string& path) {
  return exponents_from_json(read_json_file(path));
}

Json ledger_to_json(const PolytopeLedger& l) {
  Json j = Json::object();
  Json vertices = Json::array();
  for (const VertexWitness& w : l.vertices) {
    Json entry = Json::object();
    entry["v"] = vector_to_json(w.vertex);
    entry["objective"] = vector_to_json(w.objective);
    vertices.push_back(std::move(entry));
  }
  j["vertices"] = std::move(vertices);
  Json facets = Json::array();
  for (const LedgerFacet& f : l.facets) {
    Json entry = Json::object();
    entry["normal"] = vector_to_json(f.normal);
    entry["bound"] = int_to_json(f.bound);
    entry["certified"] = f.certified;
    facets.push_back(std::move(entry));
  }
  j["facets"] = std::move(facets);
  j["edge_directions"] = matrix_to_json(l.edge_directions);
  return j;
}

PolytopeLedger ledger_from_json(const Json& j) {
  PolytopeLedger l;
  const Json& vertices = require_key(j, "vertices", "ledger");
  if (!vertices.is_array()) fail(Errc::BadInput, "vertices must be an array");
  Index n = -1;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string what = "vertices[" + std::to_string(i) + "]";
    VertexWitness w;
    w.vertex = json_to_vector(require_key(vertices[i], "v", what), what + ".v");
    w.objective = json_to_vector(require_key(vertices[i], "objective", what), what + ".objective");
    if (n < 0) n = w.vertex.size();
    if (w.vertex.size() != n || w.objective.size() != n)
      fail(Errc::BadInput, what + " has mismatched coordinate counts");
    l.vertices.push_back(std::move(w));
  }
  const Json& facets = require_key(j, "facets", "ledger");
  if (!facets.is_array()) fail(Errc::BadInput, "facets must be an array");
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const std::string what = "facets[" + std::to_string(i) + "]";
    LedgerFacet f;
    f.normal = json_to_vector(require_key(facets[i], "normal", what), what + ".normal");
    f.bound = json_to_int(require_key(facets[i], "bound", what), what + ".bound");
    const Json& c = require_key(facets[i], "certified", what);
    if (!c.is_boolean()) fail(Errc::BadInput, what + ".certified must be a boolean");
    f.certified = c.get<bool>();
    if (n < 0) n = f.normal.size();
    if (f.normal.size() != n) fail(Errc::BadInput, what + " has mismatched coordinate counts");
    l.facets.push_back(std::move(f));
  }
  if (n < 0) n = 0;
  l.edge_directions = ZMat(0, n);
  if (j.contains("edge_directions")) {
    const ZMat dirs = json_to_matrix(j["edge_directions"], "edge_directions");
    if (dirs.rows() > 0) {
      if (dirs.cols() != n)
        fail(Errc::BadInput, "edge_directions width differs from the vertex coordinates");
      l.edge_directions = dirs;
    }
  }
  l.group = trivial_group(n);
  return l;
}

PolytopeLedger load_ledger(const std::string& path) {
  return ledger_from_json(read_json_file(path));
}

std::string ledger_vertices_csv(const PolytopeLedger& l) {
  std::ostringstream out;
  for (const VertexWitness& w : l.vertices) {
    for (Index i = 0; i < w.vertex.size(); ++i) {
      if (i > 0) out << ',';
      out << w.vertex[i].str();
    }
    out << '\n';
  }
  return out.str();
}

ZVec load_vector(const std::string& path) {
  return json_to_vector(read_json_file(path), path);
}

ZMat load_matrix(const std::string& path) {
  return json_to_matrix(read_json_file(path), path);
}

}  // namespace tropnp
