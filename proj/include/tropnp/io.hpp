#ifndef TROPNP_IO_HPP
#define TROPNP_IO_HPP

/** On-disk formats: JSON readers and writers for weighted cone collections
 *  (plain or orbit-compressed), coordinate symmetry groups, monomial map
 *  specifications, polynomial exponent lists, reconstruction ledgers, and
 *  bare vectors and matrices.  Integers travel as decimal strings so values
 *  of any size survive every JSON parser bit-exactly; readers also accept
 *  native JSON integers but refuse floating-point numbers.  All readers
 *  throw Errc::BadInput with a message naming the offending field. */

#include <string>
#include <vector>

#include "json.hpp"
#include "tropnp/fan.hpp"
#include "tropnp/newton.hpp"
#include "tropnp/numeric.hpp"
#include "tropnp/pushforward.hpp"
#include "tropnp/symmetry.hpp"

namespace tropnp {

/** Insertion-ordered JSON so writers emit keys in the documented order and
 *  identical data always serializes to identical bytes. */
using Json = nlohmann::ordered_json;

/** Decimal-string encoding of one integer. */
Json int_to_json(const Int& v);

/** Decodes a decimal string or a native JSON integer; `what` names the field
 *  in error messages.  Floating-point numbers, malformed strings, and every
 *  other JSON type are Errc::BadInput. */
Int json_to_int(const Json& j, const std::string& what);

Json vector_to_json(const ZVec& v);
ZVec json_to_vector(const Json& j, const std::string& what);

/** Matrices are arrays of equal-length rows; [] is the 0 x 0 matrix. */
Json matrix_to_json(const ZMat& m);
ZMat json_to_matrix(const Json& j, const std::string& what);

/** Parses the file at `path`; parse failures and unreadable files are
 *  Errc::BadInput. */
Json read_json_file(const std::string& path);

/** Serializes with two-space indentation and a trailing newline.  The text
 *  is a pure function of the value, so equal values give equal bytes. */
std::string json_to_text(const Json& j);
void write_json_file(const std::string& path, const Json& j);

/** Weighted cone collection:
 *    { "ambient_dim": n, "lineality": [[...],...],
 *      "cones": [ { "rays": [[...],...], "multiplicity": m } ] }
 *  "lineality" may be omitted (no lineality space) and "multiplicity"
 *  defaults to 1.  The orbit-compressed variant replaces "cones" with
 *  "group" (a group object, see group_from_json) plus
 *  "orbit_representatives" (same cone objects) and is expanded on load.
 *  Structural validation runs on the result; the collection is returned as
 *  stored, not normalized. */
TropicalCollection collection_from_json(const Json& j);
Json collection_to_json(const TropicalCollection& c);
TropicalCollection load_collection(const std::string& path);

/** Coordinate symmetry group, either
 *    { "n_coords": n, "generators": [[one-line permutation], ...] }
 *  or the shorthand { "hyperoctahedral_cube": m } for the symmetries of the
 *  m-cube acting on its 2^m vertex coordinates. */
CoordSymmetryGroup group_from_json(const Json& j);
Json group_to_json(const CoordSymmetryGroup& g);
CoordSymmetryGroup load_group(const std::string& path);

/** Monomial map { "A": [[...]], "delta": k, "lambda": [[...]] }.  The stored
 *  "lambda" holds lattice generators as columns (r rows, one column per
 *  generator); in memory the generators are rows, so readers and writers
 *  transpose.  "delta" defaults to 1 and "lambda" to no generators. */
MonomialMapSpec map_from_json(const Json& j);
Json map_to_json(const MonomialMapSpec& m);
MonomialMapSpec load_map(const std::string& path);

/** Polynomial support { "n": n, "monomials": [[e1,...,en], ...] };
 *  coefficients are irrelevant to the Newton polytope and absent. */
std::vector<ZVec> exponents_from_json(const Json& j);
Json exponents_to_json(Index n, const std::vector<ZVec>& monomials);
std::vector<ZVec> load_exponents(const std::string& path);

/** Reconstruction ledger
 *    { "vertices": [ { "v": [...], "objective": [...] } ],
 *      "facets": [ { "normal": [...], "bound": a, "certified": b } ],
 *      "edge_directions": [[...],...] }
 *  Loading tolerates a missing "edge_directions" and leaves the group
 *  trivial; witness provenance is an in-memory detail and not stored. */
Json ledger_to_json(const PolytopeLedger& l);
PolytopeLedger ledger_from_json(const Json& j);
PolytopeLedger load_ledger(const std::string& path);

/** Vertices as plain CSV, one row per vertex, no header, for external
 *  convex-hull cross-checks. */
std::string ledger_vertices_csv(const PolytopeLedger& l);

ZVec load_vector(const std::string& path);
ZMat load_matrix(const std::string& path);

}  // namespace tropnp

#endif  // TROPNP_IO_HPP
