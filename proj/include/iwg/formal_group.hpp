#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iwg/arith.hpp"
#include "iwg/matrix.hpp"
#include "iwg/poly.hpp"

namespace iwg {

/// Local Euler factor data at a prime q: the Hecke matrix C_q and the
/// nebentype matrix multiplying q in the quadratic term.
struct EulerFactor {
  MatZ cq;
  MatZ cq2;
};

/// Hecke eigen-data over a commutative order of rank g, with a distinguished
/// odd prime p of supersingular reduction.
struct EulerData {
  int g = 1;
  long p = 3;
  std::map<long, EulerFactor> factors;
  std::set<long> bad_primes;
  std::vector<long> u1;  // entries in {0,1}; defaults to all ones

  const MatZ& cp() const { return factor(p).cq; }
  const MatZ& cp2() const { return factor(p).cq2; }

  const EulerFactor& factor(long q) const {
    auto it = factors.find(q);
    if (it == factors.end()) throw InputError("missing Euler factor for prime " + std::to_string(q));
    return it->second;
  }

  /// Checks shapes, commutativity and nilpotence of C_p mod p.
  void validate() const;
};

inline bool matrices_commute(const MatZ& a, const MatZ& b) { return a * b == b * a; }

inline void EulerData::validate() const {
  if (g < 1) throw InputError("g must be positive");
  if (p == 2 || !is_prime(p)) throw InputError("p must be an odd prime");
  if (!factors.count(p)) throw InputError("Euler factor at p is required");
  auto sz = static_cast<std::size_t>(g);
  std::vector<const MatZ*> all;
  for (const auto& [q, ef] : factors) {
    if (!is_prime(q)) throw InputError("Euler factor index " + std::to_string(q) + " is not prime");
    if (ef.cq.rows() != sz || ef.cq.cols() != sz || ef.cq2.rows() != sz || ef.cq2.cols() != sz)
      throw InputError("Euler factor matrices at q=" + std::to_string(q) + " must be g x g");
    all.push_back(&ef.cq);
    all.push_back(&ef.cq2);
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (!matrices_commute(*all[i], *all[j])) throw InputError("Euler factor matrices do not commute");
  // C_p^g == 0 mod p
  MatZ pw = MatZ::identity(sz, Integer(0));
  for (int i = 0; i < g; ++i) pw = pw * cp();
  for (std::size_t i = 0; i < sz; ++i)
    for (std::size_t j = 0; j < sz; ++j)
      if (pw(i, j) % p != 0) throw InputError("C_p is not nilpotent mod p (reduction is not supersingular)");
  if (u1.size() != sz) throw InputError("u1 must have g entries");
  for (long x : u1)
    if (x != 0 && x != 1) throw InputError("u1 entries must be 0 or 1");
}

/// Dirichlet coefficients C_1 .. C_N of the matrix L-series (index 0 unused).
inline std::vector<MatZ> dirichlet_coeffs(const EulerData& E, long N) {
  auto g = static_cast<std::size_t>(E.g);
  MatZ I = MatZ::identity(g, Integer(0));
  std::vector<MatZ> C(static_cast<std::size_t>(N) + 1, MatZ(g, g, Integer(0)));
  if (N >= 1) C[1] = I;
  // prime powers first
  std::vector<char> composite(static_cast<std::size_t>(N) + 1, 0);
  for (long q = 2; q <= N; ++q) {
    if (composite[static_cast<std::size_t>(q)]) continue;
    for (long m = q * q; m <= N; m += q) composite[static_cast<std::size_t>(m)] = 1;
    const EulerFactor& ef = E.factor(q);
    MatZ prev = I, cur = ef.cq;
    MatZ qc2 = Integer(q) * ef.cq2;
    for (long qk = q;; qk *= q) {
      C[static_cast<std::size_t>(qk)] = cur;
      if (qk > N / q) break;
      MatZ next = ef.cq * cur - qc2 * prev;
      prev = cur;
      cur = next;
    }
  }
  // multiplicativity
  for (long n = 2; n <= N; ++n) {
    long m = n, q = 2;
    while (q * q <= m && m % q) ++q;
    if (q * q > m) q = m;
    long qk = 1;
    while (m % q == 0) {
      m /= q;
      qk *= q;
    }
    if (m > 1) C[static_cast<std::size_t>(n)] = C[static_cast<std::size_t>(qk)] * C[static_cast<std::size_t>(m)];
  }
  return C;
}

/// A g-tuple of power series in g variables of the separated form
/// sum_n A_n x^n, where x^n is taken coordinatewise.
struct SeparatedSeries {
  int g = 1;
  std::vector<MatQ> coeff;  // coeff[n], n = 0..D, coeff[0] = 0

  int degree() const { return static_cast<int>(coeff.size()) - 1; }
  const MatQ& operator[](std::size_t n) const { return coeff[n]; }
};

inline SeparatedSeries identity_series(int g, int D) {
  SeparatedSeries s;
  s.g = g;
  auto sz = static_cast<std::size_t>(g);
  s.coeff.assign(static_cast<std::size_t>(D) + 1, MatQ(sz, sz, Rational(0)));
  if (D >= 1) s.coeff[1] = MatQ::identity(sz, Rational(0));
  return s;
}

/// log_A(x) = sum_n C_n / n x^n.
inline SeparatedSeries log_A(const EulerData& E, int D) {
  auto C = dirichlet_coeffs(E, D);
  SeparatedSeries s = identity_series(E.g, D);
  for (int n = 1; n <= D; ++n) s.coeff[static_cast<std::size_t>(n)] = Rational(1, n) * to_rational(C[static_cast<std::size_t>(n)]);
  return s;
}

/// x_{-1} = 0, x_0 = I, p x_k = C_p x_{k-1} - x_{k-2}.
inline std::vector<MatQ> xk_sequence(const MatZ& cp, long p, int K) {
  std::size_t g = cp.rows();
  MatQ C = to_rational(cp);
  std::vector<MatQ> x;
  MatQ prev(g, g, Rational(0)), cur = MatQ::identity(g, Rational(0));
  x.push_back(cur);
  for (int k = 1; k <= K; ++k) {
    MatQ next = Rational(1, p) * (C * cur - prev);
    prev = cur;
    cur = next;
    x.push_back(cur);
  }
  return x;
}

/// f(X) = (1+X)^p - 1.
inline Poly<Integer> lubin_tate_f(long p) {
  std::vector<Integer> c(static_cast<std::size_t>(p) + 1);
  for (long j = 1; j <= p; ++j) c[static_cast<std::size_t>(j)] = binomial(p, j);
  return Poly<Integer>(std::move(c), 0);
}

/// k-fold composite of f (f^(0) = X), by repeated composition.
inline Poly<Integer> lubin_tate_iterate(long p, int k) {
  Poly<Integer> f = lubin_tate_f(p), r({0, 1}, 0);
  for (int i = 0; i < k; ++i) r = f.compose(r);
  return r;
}

/// Lower bound for the valuation of every coefficient (degree <= D) of the
/// tail sum_{k>K} x_k f^(k) of the logarithm.
inline long ell_tail_valuation(long p, int K, int D) {
  long logD = 0;
  for (long q = p; q <= D; q *= p) ++logD;
  return (K + 2) / 2 - logD;
}

/// Smallest K whose truncation error has valuation at least `required`.
inline int ell_truncation_for(long p, int D, long required) {
  int K = 0;
  while (ell_tail_valuation(p, K, D) < required) ++K;
  return K;
}

/// ell(x) = sum_{k<=K} x_k f^(k)(x), coefficients through degree D.
inline SeparatedSeries ell_series(const EulerData& E, int K, int D) {
  auto x = xk_sequence(E.cp(), E.p, K);
  SeparatedSeries s = identity_series(E.g, D);
  s.coeff[1] = MatQ(static_cast<std::size_t>(E.g), static_cast<std::size_t>(E.g), Rational(0));
  for (int k = 0; k <= K; ++k) {
    long pk = static_cast<long>(ipow64(E.p, k));
    for (int n = 1; n <= D && n <= pk; ++n) {
      Integer b = binomial(pk, n);
      s.coeff[static_cast<std::size_t>(n)] = s.coeff[static_cast<std::size_t>(n)] + Rational(b) * x[static_cast<std::size_t>(k)];
    }
  }
  return s;
}

/// Default truncation for ell at degree D: the tail vanishes mod p^2.
inline SeparatedSeries ell_series(const EulerData& E, int D) { return ell_series(E, ell_truncation_for(E.p, D, 2), D); }

/// Truncation of ell with margin D + 3, enough that the group law built from
/// it is p-integral through degree D.
inline SeparatedSeries ell_series_for_group_law(const EulerData& E, int D) {
  return ell_series(E, ell_truncation_for(E.p, D, D + 3), D);
}

/// Honda type u(T) = sum_i B_i T^i.
struct HondaType {
  long p = 3;
  std::vector<MatZ> B;
};

/// u(T) = p - C_p T + eps(p) T^2 for the Euler data.
inline HondaType honda_type(const EulerData& E) {
  auto g = static_cast<std::size_t>(E.g);
  return {E.p, {Integer(E.p) * MatZ::identity(g, Integer(0)), -E.cp(), E.cp2()}};
}

struct HondaReport {
  bool pass = true;
  int degree = 0;
  /// min over checked coefficients of v_p(entry) - required (infinity when all vanish).
  Valuation worst_margin;
  /// First failing monomial, if any.
  std::optional<int> fail_degree;
  int fail_row = 0, fail_col = 0;
  Valuation fail_valuation;
};

/// Checks that every coefficient of u*L = sum_i B_i L(x^{p^i}) through degree
/// D lies in p^required Z_p.
inline HondaReport honda_check(const SeparatedSeries& L, const HondaType& u, int D, long required = 1) {
  if (D > L.degree()) throw InputError("series is not known to the requested degree");
  HondaReport rep;
  rep.degree = D;
  std::size_t g = static_cast<std::size_t>(L.g);
  for (int m = 1; m <= D; ++m) {
    MatQ S(g, g, Rational(0));
    long pi = 1;
    for (std::size_t i = 0; i < u.B.size(); ++i, pi *= u.p) {
      if (m % pi) break;
      S = S + to_rational(u.B[i]) * L[static_cast<std::size_t>(m / pi)];
    }
    for (std::size_t r = 0; r < g; ++r)
      for (std::size_t c = 0; c < g; ++c) {
        Valuation v = vp(S(r, c), u.p);
        Valuation margin = v.is_infinite() ? v : Valuation(Rational(v.value() - required));
        rep.worst_margin = min(rep.worst_margin, margin);
        if (margin < Valuation(0) && !rep.fail_degree) {
          rep.pass = false;
          rep.fail_degree = m;
          rep.fail_row = static_cast<int>(r);
          rep.fail_col = static_cast<int>(c);
          rep.fail_valuation = v;
        }
      }
  }
  return rep;
}

/// Checks p^{floor(k/2)} x_k has integral entries for every k in the list.
inline bool xk_denominator_bound_holds(const std::vector<MatQ>& x, long p) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    MatQ s = Rational(ipow(p, k / 2)) * x[k];
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j)
        if (s(i, j).get_den() != 1) return false;
  }
  return true;
}

}  // namespace iwg
