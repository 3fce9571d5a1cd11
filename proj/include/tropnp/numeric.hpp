#ifndef TROPNP_NUMERIC_HPP
#define TROPNP_NUMERIC_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace tropnp {

// All arithmetic in this library is exact.  Integers and rationals are
// GMP-backed and unbounded; nothing here ever rounds.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using ZVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using ZMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using QVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using QMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

/** Error variants surfaced by the library.  Every throwing path names one of
 *  these so callers (and the command line driver) can branch on the kind of
 *  failure instead of parsing message text. */
enum class Errc {
  RankDrop,
  ZeroLattice,
  ZeroVector,
  NonSimplicialCone,
  SingularSystem,
  WrongCodimension,
  MultiplicityConflict,
  NotACurve,
  GenericityViolation,
  ObjectiveInCone,
  NonParallelTie,
  InconsistentRecords,
  ExhaustedCoordinates,
  NonIntegralResult,
  InfiniteFiber,
  NotInLineality,
  NonPrimitiveLattice,
  DimensionMismatch,
  TooLarge,
  ScaleExceeded,
  NoProgress,
  SeedMismatch,
  BadInput,
  Internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

/** Floor division a/b (rounds toward minus infinity; b must be nonzero). */
Int floor_div(const Int& a, const Int& b);

/** Division with the remainder minimized in absolute value; used to keep
 *  intermediate entries small during lattice reductions. */
Int nearest_div(const Int& a, const Int& b);

bool is_integral(const Rat& x);
bool is_integral(const QVec& v);
bool is_integral(const QMat& m);

/** Exact conversion helpers; the to_* forms throw Errc::NonIntegralResult when
 *  a denominator other than one survives. */
Int to_int(const Rat& x);
ZVec to_zvec(const QVec& v);
ZMat to_zmat(const QMat& m);
QVec to_qvec(const ZVec& v);
QMat to_qmat(const ZMat& m);

/** Strict lexicographic order on equal-length integer vectors. */
bool lex_less(const ZVec& a, const ZVec& b);

std::string to_string(const ZVec& v);
std::string to_string(const QVec& v);

}  // namespace tropnp

#endif  // TROPNP_NUMERIC_HPP
