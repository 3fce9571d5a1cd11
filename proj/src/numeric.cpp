#include "tropnp/numeric.hpp"

#include <sstream>

namespace tropnp {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::RankDrop: return "RankDrop";
    case Errc::ZeroLattice: return "ZeroLattice";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NonSimplicialCone: return "NonSimplicialCone";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::WrongCodimension: return "WrongCodimension";
    case Errc::MultiplicityConflict: return "MultiplicityConflict";
    case Errc::NotACurve: return "NotACurve";
    case Errc::GenericityViolation: return "GenericityViolation";
    case Errc::ObjectiveInCone: return "ObjectiveInCone";
    case Errc::NonParallelTie: return "NonParallelTie";
    case Errc::InconsistentRecords: return "InconsistentRecords";
    case Errc::ExhaustedCoordinates: return "ExhaustedCoordinates";
    case Errc::NonIntegralResult: return "NonIntegralResult";
    case Errc::InfiniteFiber: return "InfiniteFiber";
    case Errc::NotInLineality: return "NotInLineality";
    case Errc::NonPrimitiveLattice: return "NonPrimitiveLattice";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ScaleExceeded: return "ScaleExceeded";
    case Errc::NoProgress: return "NoProgress";
    case Errc::SeedMismatch: return "SeedMismatch";
    case Errc::BadInput: return "BadInput";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

Int nearest_div(const Int& a, const Int& b) {
  Int q = floor_div(a, b);
  Int r = a - q * b;  // carries the sign of b, |r| < |b|
  // Stepping q up replaces r by r - b, which shrinks it whenever the floor
  // remainder passed the halfway mark; ties stay on the floor side.
  if (2 * abs(r) > abs(b)) ++q;
  return q;
}

bool is_integral(const Rat& x) { return denominator(x) == 1; }

bool is_integral(const QVec& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!is_integral(v[i])) return false;
  return true;
}

bool is_integral(const QMat& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_integral(m(i, j))) return false;
  return true;
}

Int to_int(const Rat& x) {
  if (!is_integral(x)) fail(Errc::NonIntegralResult, "expected an integer, got " + x.str());
  return numerator(x);
}

ZVec to_zvec(const QVec& v) {
  ZVec out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = to_int(v[i]);
  return out;
}

ZMat to_zmat(const QMat& m) {
  ZMat out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = to_int(m(i, j));
  return out;
}

QVec to_qvec(const ZVec& v) {
  QVec out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

QMat to_qmat(const ZMat& m) {
  QMat out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

bool lex_less(const ZVec& a, const ZVec& b) {
  if (a.size() != b.size())
    fail(Errc::DimensionMismatch, "lex_less on vectors of different length");
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::string to_string(const ZVec& v) {
  std::ostringstream os;
  os << "(";
  for (Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string to_string(const QVec& v) {
  std::ostringstream os;
  os << "(";
  for (Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace tropnp
