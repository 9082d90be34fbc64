#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "iwg/dvr.hpp"
#include "iwg/matrix.hpp"

namespace iwg {

using DvrMatrix = Matrix<DvrElement>;

inline DvrMatrix dvr_matrix(const DvrPtr& ring, std::size_t rows, std::size_t cols) {
  return DvrMatrix(rows, cols, ring->zero());
}

/// Smith form D = U * M * V with D diagonal and U, V invertible.
struct SmithForm {
  DvrMatrix U, D, V;
  /// Uniformizer-adic valuations of the nonzero diagonal entries, nondecreasing.
  std::vector<int> divisors;
  int rank = 0;
  /// True when every pivot sits strictly below the precision of the entries it was chosen from.
  bool certified = true;
};

/// Smith normal form over a DVR by minimal-valuation pivoting.
///
/// Pivots are taken while some remaining entry is nonzero at working precision;
/// the rest of the block counts as rank deficiency.
inline SmithForm smith_normal_form(const DvrMatrix& m, bool with_transforms = true) {
  std::size_t r = m.rows(), c = m.cols();
  if (r == 0 || c == 0) {
    SmithForm s;
    s.D = m;
    return s;
  }
  const DvrPtr& ring = m(0, 0).ring();
  SmithForm s;
  s.D = m;
  if (with_transforms) {
    s.U = DvrMatrix::identity(r, ring->zero());
    s.V = DvrMatrix::identity(c, ring->zero());
  }
  DvrMatrix& a = s.D;
  std::size_t n = std::min(r, c);
  for (std::size_t t = 0; t < n; ++t) {
    int best = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        const auto& x = a(i, j);
        if (x.is_zero()) continue;
        int v = x.val_pi();
        if (best < 0 || v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best < 0) break;
    if (bi != t) {
      for (std::size_t j = 0; j < c; ++j) std::swap(a(t, j), a(bi, j));
      if (with_transforms)
        for (std::size_t j = 0; j < r; ++j) std::swap(s.U(t, j), s.U(bi, j));
    }
    if (bj != t) {
      for (std::size_t i = 0; i < r; ++i) std::swap(a(i, t), a(i, bj));
      if (with_transforms)
        for (std::size_t i = 0; i < c; ++i) std::swap(s.V(i, t), s.V(i, bj));
    }
    DvrElement piv = a(t, t);
    if (best >= piv.precision()) s.certified = false;
    for (std::size_t i = t + 1; i < r; ++i) {
      if (a(i, t).is_zero()) continue;
      DvrElement q = a(i, t).exact_div(piv);
      for (std::size_t j = t; j < c; ++j) a(i, j) -= q * a(t, j);
      if (with_transforms)
        for (std::size_t j = 0; j < r; ++j) s.U(i, j) -= q * s.U(t, j);
    }
    for (std::size_t j = t + 1; j < c; ++j) {
      if (a(t, j).is_zero()) continue;
      DvrElement q = a(t, j).exact_div(piv);
      a(t, j) -= q * a(t, t);
      if (with_transforms)
        for (std::size_t i = 0; i < c; ++i) s.V(i, j) -= q * s.V(i, t);
    }
    s.divisors.push_back(best);
    ++s.rank;
  }
  return s;
}

/// Rank and total divisor valuation of a lattice spanned by matrix columns.
struct LatticeInvariants {
  int rank = 0;
  long divisor_sum = 0;  // uniformizer units
};

inline LatticeInvariants lattice_invariants(const DvrMatrix& gens) {
  LatticeInvariants li;
  if (gens.cols() == 0) return li;
  SmithForm s = smith_normal_form(gens, false);
  li.rank = s.rank;
  for (int d : s.divisors) li.divisor_sum += d;
  return li;
}

/// Length of the finite module O^m / (column span of a presentation matrix).
inline long finite_module_length(const DvrMatrix& presentation) {
  if (presentation.rows() == 0) return 0;
  auto li = lattice_invariants(presentation);
  if (li.rank != static_cast<int>(presentation.rows()))
    throw InputError("presentation does not define a finite module");
  return li.divisor_sum;
}

/// Columns spanning the kernel of m (as a submodule of O^cols).
inline DvrMatrix kernel_basis(const DvrMatrix& m) {
  const DvrPtr& ring = m(0, 0).ring();
  SmithForm s = smith_normal_form(m, true);
  std::size_t k = m.cols() - static_cast<std::size_t>(s.rank);
  DvrMatrix out = dvr_matrix(ring, m.cols(), k);
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = s.V(i, static_cast<std::size_t>(s.rank) + j);
  return out;
}

/// True when the column span of `a` lies in the column span of `b`.
inline bool lattice_contains(const DvrMatrix& b, const DvrMatrix& a) {
  if (a.cols() == 0) return true;
  auto lb = lattice_invariants(b);
  auto lab = lattice_invariants(b.cols() ? hconcat(b, a) : a);
  return lab.rank == lb.rank && lab.divisor_sum == lb.divisor_sum;
}

/// Stack two matrices vertically.
inline DvrMatrix vconcat(const DvrMatrix& a, const DvrMatrix& b) {
  return hconcat(a.transpose(), b.transpose()).transpose();
}

inline DvrMatrix select_rows(const DvrMatrix& m, std::size_t from, std::size_t count) {
  DvrMatrix out(count, m.cols(), m(0, 0).ring()->zero());
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(from + i, j);
  return out;
}

}  // namespace iwg
