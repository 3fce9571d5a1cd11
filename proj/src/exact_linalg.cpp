#include "tropnp/exact_linalg.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace tropnp {

namespace {

void swap_rows(ZMat& m, Index a, Index b) {
  if (a != b) m.row(a).swap(m.row(b));
}

// Row index of the entry of minimal absolute value among the nonzero entries
// of column c at or below row r, or -1 if the column is zero there.
Index min_abs_row(const ZMat& m, Index r, Index c) {
  Index best = -1;
  for (Index i = r; i < m.rows(); ++i) {
    if (m(i, c) == 0) continue;
    if (best < 0 || abs(m(i, c)) < abs(m(best, c))) best = i;
  }
  return best;
}

bool all_zero(const ZMat& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

}  // namespace

HnfResult hermite_normal_form(const ZMat& M) {
  const Index rows = M.rows(), cols = M.cols();
  HnfResult res;
  res.H = M;
  res.U = ZMat::Identity(rows, rows);
  ZMat& H = res.H;
  ZMat& U = res.U;

  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    // Euclidean sweep: shrink the column below row r until one entry is left.
    while (true) {
      Index p = min_abs_row(H, r, c);
      if (p < 0) break;
      swap_rows(H, r, p);
      swap_rows(U, r, p);
      bool clean = true;
      for (Index i = r + 1; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        Int q = nearest_div(H(i, c), H(r, c));
        H.row(i) -= q * H.row(r);
        U.row(i) -= q * U.row(r);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      H.row(r) = -H.row(r);
      U.row(r) = -U.row(r);
    }
    for (Index i = 0; i < r; ++i) {
      Int q = floor_div(H(i, c), H(r, c));
      if (q != 0) {
        H.row(i) -= q * H.row(r);
        U.row(i) -= q * U.row(r);
      }
    }
    ++r;
  }
  res.rank = r;
  return res;
}

SnfResult smith_normal_form(const ZMat& M) {
  const Index rows = M.rows(), cols = M.cols();
  SnfResult res;
  res.D = M;
  res.U = ZMat::Identity(rows, rows);
  res.V = ZMat::Identity(cols, cols);
  ZMat& D = res.D;
  ZMat& U = res.U;
  ZMat& V = res.V;

  // Diagonalize by alternating full row and column echelon sweeps.  Every
  // sweep leaves each entry reduced against a pivot, which is what keeps the
  // coefficients small: a single-corner scheme that clears one row and
  // column per pivot re-dirties the other side on every swap and can square
  // its trailing block per pass.  A sweep that changes nothing certifies its
  // echelon shape, and a matrix in both shapes at once is diagonal with the
  // pivots packed in front.

  auto sweep_rows = [&]() {
    bool changed = false;
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
      while (true) {
        Index p = min_abs_row(D, r, c);
        if (p < 0) break;
        if (p != r) {
          swap_rows(D, r, p);
          swap_rows(U, r, p);
          changed = true;
        }
        bool clean = true;
        for (Index i = r + 1; i < rows; ++i) {
          if (D(i, c) == 0) continue;
          Int q = nearest_div(D(i, c), D(r, c));
          if (q != 0) {
            D.row(i) -= q * D.row(r);
            U.row(i) -= q * U.row(r);
            changed = true;
          }
          if (D(i, c) != 0) clean = false;
        }
        if (clean) break;
      }
      if (D(r, c) == 0) continue;
      if (D(r, c) < 0) {
        D.row(r) = -D.row(r);
        U.row(r) = -U.row(r);
        changed = true;
      }
      for (Index i = 0; i < r; ++i) {
        Int q = floor_div(D(i, c), D(r, c));
        if (q != 0) {
          D.row(i) -= q * D.row(r);
          U.row(i) -= q * U.row(r);
          changed = true;
        }
      }
      ++r;
    }
    return changed;
  };

  auto min_abs_col = [&](Index r, Index c) {
    Index best = -1;
    for (Index j = c; j < cols; ++j) {
      if (D(r, j) == 0) continue;
      if (best < 0 || abs(D(r, j)) < abs(D(r, best))) best = j;
    }
    return best;
  };

  auto sweep_cols = [&]() {
    bool changed = false;
    Index c = 0;
    for (Index r = 0; r < rows && c < cols; ++r) {
      while (true) {
        Index p = min_abs_col(r, c);
        if (p < 0) break;
        if (p != c) {
          D.col(c).swap(D.col(p));
          V.col(c).swap(V.col(p));
          changed = true;
        }
        bool clean = true;
        for (Index j = c + 1; j < cols; ++j) {
          if (D(r, j) == 0) continue;
          Int q = nearest_div(D(r, j), D(r, c));
          if (q != 0) {
            D.col(j) -= q * D.col(c);
            V.col(j) -= q * V.col(c);
            changed = true;
          }
          if (D(r, j) != 0) clean = false;
        }
        if (clean) break;
      }
      if (D(r, c) == 0) continue;
      if (D(r, c) < 0) {
        D.col(c) = -D.col(c);
        V.col(c) = -V.col(c);
        changed = true;
      }
      for (Index j = 0; j < c; ++j) {
        Int q = floor_div(D(r, j), D(r, c));
        if (q != 0) {
          D.col(j) -= q * D.col(c);
          V.col(j) -= q * V.col(c);
          changed = true;
        }
      }
      ++c;
    }
    return changed;
  };

  for (int pass = 0;; ++pass) {
    if (pass > 200) fail(Errc::Internal, "smith_normal_form: diagonalization did not settle");
    bool moved = sweep_rows();
    moved = sweep_cols() || moved;
    if (!moved) break;
  }

  Index rank = 0;
  while (rank < std::min(rows, cols) && D(rank, rank) != 0) ++rank;

  // Enforce the divisor chain by pairwise gcd absorption on the diagonal.
  // Each fix mixes only rows and columns i and i+1, so the entries involved
  // stay within the 2x2 block's determinant.
  bool chained = false;
  while (!chained) {
    chained = true;
    for (Index i = 0; i + 1 < rank; ++i) {
      const Index j = i + 1;
      if (D(j, j) % D(i, i) == 0) continue;
      chained = false;
      D.row(i) += D.row(j);
      U.row(i) += U.row(j);
      // Euclid between columns i and j pulls gcd(d_i, d_j) into the corner.
      while (D(i, j) != 0) {
        Int q = nearest_div(D(i, j), D(i, i));
        if (q != 0) {
          D.col(j) -= q * D.col(i);
          V.col(j) -= q * V.col(i);
        }
        if (D(i, j) == 0) break;
        D.col(i).swap(D.col(j));
        V.col(i).swap(V.col(j));
      }
      // The column operations mixed row j; its leading entry is an integer
      // combination of the two old divisors, hence a multiple of the gcd.
      if (D(j, i) != 0) {
        Int q = D(j, i) / D(i, i);
        D.row(j) -= q * D.row(i);
        U.row(j) -= q * U.row(i);
      }
      if (D(i, i) < 0) {
        D.row(i) = -D.row(i);
        U.row(i) = -U.row(i);
      }
      if (D(j, j) < 0) {
        D.row(j) = -D.row(j);
        U.row(j) = -U.row(j);
      }
    }
  }
  res.rank = rank;
  return res;
}

Int determinant(const ZMat& M) {
  const Index n = M.rows();
  if (n != M.cols()) fail(Errc::DimensionMismatch, "determinant of a non-square matrix");
  if (n == 0) return 1;
  ZMat A = M;
  Int prev = 1;
  int sign = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (A(k, k) == 0) {
      Index p = -1;
      for (Index i = k + 1; i < n; ++i)
        if (A(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      A.row(k).swap(A.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
      }
      A(i, k) = 0;
    }
    prev = A(k, k);
  }
  return sign > 0 ? A(n - 1, n - 1) : -A(n - 1, n - 1);
}

Int gcd_maximal_minors(const ZMat& M) {
  if (M.rows() == 0 || M.cols() == 0) return 1;  // the empty minor
  // Work on a tall matrix so maximal minors select rows; unimodular row
  // operations preserve their gcd, and in Hermite form the only candidate
  // selection with a nonzero determinant is the pivot block.
  ZMat A = M.rows() >= M.cols() ? M : ZMat(M.transpose());
  HnfResult hnf = hermite_normal_form(A);
  if (hnf.rank < A.cols()) return 0;
  Int prod = 1;
  Index r = 0;
  for (Index c = 0; c < A.cols(); ++c) {
    // rank == cols, so every column carries a pivot in row order.
    prod *= hnf.H(r, c);
    ++r;
  }
  return prod;
}

ZMat column_lattice_basis(const ZMat& B) {
  HnfResult hnf = hermite_normal_form(ZMat(B.transpose()));
  ZMat basis(hnf.rank, B.rows());
  for (Index i = 0; i < hnf.rank; ++i) basis.row(i) = hnf.H.row(i);
  return basis.transpose();
}

Int lattice_index(const ZMat& A, const ZMat& B) {
  if (A.cols() != B.rows())
    fail(Errc::DimensionMismatch, "lattice_index: A has " + std::to_string(A.cols()) +
                                      " columns but B has " + std::to_string(B.rows()) + " rows");
  if (all_zero(B)) fail(Errc::ZeroLattice, "lattice_index of the zero lattice");
  ZMat B0 = column_lattice_basis(B);
  ZMat AB = A * B0;
  if (rank_of_z(AB) < B0.cols())
    fail(Errc::RankDrop, "lattice_index: the map drops the rank of the lattice");
  Int num = gcd_maximal_minors(AB);
  Int den = gcd_maximal_minors(B0);
  if (num % den != 0)
    fail(Errc::Internal, "lattice_index: non-integral minor quotient " + num.str() + "/" + den.str());
  return num / den;
}

Int image_saturation_index(const ZMat& A, const ZMat& B) {
  if (A.cols() != B.rows())
    fail(Errc::DimensionMismatch, "image_saturation_index: shape mismatch");
  if (all_zero(B)) fail(Errc::ZeroLattice, "image_saturation_index of the zero lattice");
  ZMat image = A * column_lattice_basis(B);
  if (all_zero(image)) fail(Errc::ZeroLattice, "image_saturation_index: image lattice is zero");
  return gcd_maximal_minors(column_lattice_basis(image));
}

Int smith_index_oracle(const ZMat& M) {
  SnfResult snf = smith_normal_form(M);
  if (snf.rank < M.cols())
    fail(Errc::RankDrop, "smith_index_oracle requires full column rank");
  Int prod = 1;
  for (Index i = 0; i < snf.rank; ++i) prod *= snf.D(i, i);
  return prod;
}

SolveOutcome solve_exact(const QMat& M, const QVec& b) {
  const Index rows = M.rows(), cols = M.cols();
  if (b.size() != rows) fail(Errc::DimensionMismatch, "solve_exact: rhs length mismatch");

  // Clear denominators row by row, then run fraction-free (Bareiss)
  // elimination on the integer augmented matrix.
  ZMat A(rows, cols + 1);
  for (Index i = 0; i < rows; ++i) {
    Int scale = 1;
    for (Index j = 0; j < cols; ++j) scale = lcm(scale, denominator(M(i, j)));
    scale = lcm(scale, denominator(b[i]));
    for (Index j = 0; j < cols; ++j)
      A(i, j) = numerator(M(i, j)) * (scale / denominator(M(i, j)));
    A(i, cols) = numerator(b[i]) * (scale / denominator(b[i]));
  }

  std::vector<Index> pivot_col;
  Int prev = 1;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = -1;
    for (Index i = r; i < rows; ++i)
      if (A(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    swap_rows(A, r, p);
    for (Index i = r + 1; i < rows; ++i) {
      for (Index j = c + 1; j <= cols; ++j)
        A(i, j) = (A(i, j) * A(r, c) - A(i, c) * A(r, j)) / prev;
      A(i, c) = 0;
    }
    prev = A(r, c);
    pivot_col.push_back(c);
    ++r;
  }

  SolveOutcome out;
  for (Index i = r; i < rows; ++i) {
    if (A(i, cols) != 0) {
      out.status = SolveOutcome::Status::Inconsistent;
      return out;
    }
  }
  if (static_cast<Index>(pivot_col.size()) < cols) {
    out.status = SolveOutcome::Status::Underdetermined;
    return out;
  }

  QVec x(cols);
  for (Index i = cols; i-- > 0;) {
    Rat acc(A(i, cols));
    for (Index j = i + 1; j < cols; ++j) acc -= Rat(A(i, j)) * x[j];
    x[i] = acc / Rat(A(i, i));
  }
  out.status = SolveOutcome::Status::Unique;
  out.x = std::move(x);
  return out;
}

ZMat kernel_basis(const QMat& M) {
  const Index rows = M.rows(), cols = M.cols();
  ZMat Mi(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    Int scale = 1;
    for (Index j = 0; j < cols; ++j) scale = lcm(scale, denominator(M(i, j)));
    for (Index j = 0; j < cols; ++j)
      Mi(i, j) = numerator(M(i, j)) * (scale / denominator(M(i, j)));
  }
  // Rows of U matching zero rows of H = U * M^T span the saturated kernel.
  HnfResult hnf = hermite_normal_form(ZMat(Mi.transpose()));
  const Index dim = cols - hnf.rank;
  ZMat basis(dim, cols);
  for (Index i = 0; i < dim; ++i)
    basis.row(i) = sign_normalize(ZVec(hnf.U.row(hnf.rank + i).transpose())).transpose();
  return basis;
}

ZVec make_primitive(const QVec& v) {
  bool zero = true;
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] != 0) { zero = false; break; }
  if (zero) fail(Errc::ZeroVector, "make_primitive of the zero vector");
  Int den_lcm = 1;
  for (Index i = 0; i < v.size(); ++i) den_lcm = lcm(den_lcm, denominator(v[i]));
  ZVec w(v.size());
  for (Index i = 0; i < v.size(); ++i)
    w[i] = numerator(v[i]) * (den_lcm / denominator(v[i]));
  Int g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd(g, w[i]);
  for (Index i = 0; i < v.size(); ++i) w[i] /= g;
  return w;
}

ZVec make_primitive_z(const ZVec& v) { return make_primitive(to_qvec(v)); }

Index rank_of(const QMat& M) {
  QMat A = M;
  Index r = 0;
  for (Index c = 0; c < A.cols() && r < A.rows(); ++c) {
    Index p = -1;
    for (Index i = r; i < A.rows(); ++i)
      if (A(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) A.row(p).swap(A.row(r));
    for (Index i = r + 1; i < A.rows(); ++i) {
      if (A(i, c) == 0) continue;
      Rat f = A(i, c) / A(r, c);
      A.row(i) -= f * A.row(r);
    }
    ++r;
  }
  return r;
}

Index rank_of_z(const ZMat& M) { return rank_of(to_qmat(M)); }

ZMat saturated_row_basis(const ZMat& M) {
  ZMat orth = kernel_basis(to_qmat(M));
  return kernel_basis(to_qmat(orth));
}

bool is_primitive_lattice(const ZMat& L) {
  if (L.rows() == 0) return true;
  if (rank_of_z(L) < L.rows())
    fail(Errc::RankDrop, "is_primitive_lattice expects a basis (full row rank)");
  return gcd_maximal_minors(L) == 1;
}

ZVec sign_normalize(const ZVec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    return v[i] > 0 ? v : ZVec(-v);
  }
  fail(Errc::ZeroVector, "sign_normalize of the zero vector");
}

LatticeQuotient::LatticeQuotient(const ZMat& L) {
  n_ = L.cols();
  l_ = L.rows();
  if (l_ > n_) fail(Errc::NonPrimitiveLattice, "more basis vectors than ambient dimensions");
  if (l_ == 0) {
    U_ = ZMat::Identity(n_, n_);
    Uinv_ = U_;
    return;
  }
  SnfResult snf = smith_normal_form(ZMat(L.transpose()));
  if (snf.rank < l_) fail(Errc::NonPrimitiveLattice, "basis rows are dependent");
  for (Index i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) != 1)
      fail(Errc::NonPrimitiveLattice, "lattice is not saturated (divisor " + snf.D(i, i).str() + ")");
  // U * L^T * V = [I; 0], so U maps the lattice onto the first l coordinate
  // lines; the trailing n-l coordinates of U*x present the quotient.
  U_ = snf.U;
  // Exact inverse via the adjugate relation with our fraction-free solver.
  Uinv_ = ZMat(n_, n_);
  QMat Uq = to_qmat(U_);
  for (Index j = 0; j < n_; ++j) {
    QVec e = QVec::Zero(n_);
    e[j] = 1;
    SolveOutcome s = solve_exact(Uq, e);
    if (!s.unique()) fail(Errc::Internal, "unimodular matrix failed to invert");
    for (Index i = 0; i < n_; ++i) Uinv_(i, j) = to_int(s.x[i]);
  }
}

ZVec LatticeQuotient::project(const ZVec& x) const {
  if (x.size() != n_) fail(Errc::DimensionMismatch, "quotient projection of a wrong-length vector");
  ZVec y = U_ * x;
  return y.tail(n_ - l_);
}

QVec LatticeQuotient::project(const QVec& x) const {
  if (x.size() != n_) fail(Errc::DimensionMismatch, "quotient projection of a wrong-length vector");
  QVec y = to_qmat(U_) * x;
  return y.tail(n_ - l_);
}

ZVec LatticeQuotient::lift(const ZVec& coords) const {
  if (coords.size() != n_ - l_)
    fail(Errc::DimensionMismatch, "quotient lift of a wrong-length vector");
  ZVec full = ZVec::Zero(n_);
  full.tail(n_ - l_) = coords;
  return Uinv_ * full;
}

}  // namespace tropnp
