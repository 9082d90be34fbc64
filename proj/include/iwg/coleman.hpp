#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwg/iwasawa.hpp"

namespace iwg {

// Polynomials in this module are written in the variable Y = 1 + X, where
// omega_n = Y^{p^n} - 1 and Phi_n = sum_{k<p} Y^{k p^{n-1}} are sparse and
// evaluation at X = eps_n is evaluation at Y = zeta_{p^n}.

/// Phi_n in the variable Y (Phi_0 = X = Y - 1).
template <class R>
Poly<R> phi_y(long p, int n, const R& like) {
  R one = one_like(like), z = zero_like(like);
  if (n == 0) return Poly<R>({-one, one}, z);
  long q = static_cast<long>(ipow64(p, n - 1));
  std::vector<R> c(static_cast<std::size_t>((p - 1) * q) + 1, z);
  for (long k = 0; k < p; ++k) c[static_cast<std::size_t>(k * q)] = one;
  return Poly<R>(std::move(c), z);
}

/// omega_n = Y^{p^n} - 1.
template <class R>
Poly<R> omega_y(long p, int n, const R& like) {
  R one = one_like(like), z = zero_like(like);
  std::vector<R> c(static_cast<std::size_t>(ipow64(p, n)) + 1, z);
  c[0] = -one;
  c.back() = one;
  return Poly<R>(std::move(c), z);
}

/// omega_n / X = 1 + Y + ... + Y^{p^n - 1}.
template <class R>
Poly<R> omega_over_x_y(long p, int n, const R& like) {
  return Poly<R>(std::vector<R>(static_cast<std::size_t>(ipow64(p, n)), one_like(like)), zero_like(like));
}

/// Reduction modulo omega_n: fold exponents modulo p^n.
template <class R>
Poly<R> mod_omega_y(const Poly<R>& F, long p, int n) {
  auto q = static_cast<std::size_t>(ipow64(p, n));
  std::vector<R> c(std::min(q, F.size()), F.zero());
  for (std::size_t i = 0; i < F.size(); ++i) c[i % q] = c[i % q] + F[i];
  return Poly<R>(std::move(c), F.zero());
}

/// Product with Phi_n using its sparsity.
template <class R>
Poly<R> mul_phi_y(const Poly<R>& F, long p, int n) {
  if (n == 0) return F.shifted(1) - F;
  auto q = static_cast<std::size_t>(ipow64(p, n - 1));
  if (F.is_zero()) return F;
  std::vector<R> c(F.size() + static_cast<std::size_t>(p - 1) * q, F.zero());
  for (long k = 0; k < p; ++k)
    for (std::size_t i = 0; i < F.size(); ++i) c[i + static_cast<std::size_t>(k) * q] = c[i + static_cast<std::size_t>(k) * q] + F[i];
  return Poly<R>(std::move(c), F.zero());
}

/// The 2x2 polynomial matrix H_n = C_n ... C_1 with C_i = [[a, 1], [-Phi_i, 0]],
/// entries in the variable Y.
template <class R>
struct LogMatrix {
  int n = 0;
  Poly<R> m11, m12, m21, m22;

  const Poly<R>& sharp() const { return m11; }
  const Poly<R>& flat() const { return m12; }
};

/// The family H_0 = I, H_1, ..., H_nmax for a fixed p and a_p.
template <class R>
class ColemanFamily {
 public:
  ColemanFamily(long p, R ap, int nmax) : p_(p), ap_(std::move(ap)) {
    if (p == 2 || !is_prime(p)) throw InputError("p must be an odd prime");
    if (nmax < 0) throw InputError("nmax must be nonnegative");
    R z = zero_like(ap_), one = one_like(ap_);
    LogMatrix<R> h;
    h.m11 = Poly<R>::constant(one);
    h.m12 = Poly<R>(z);
    h.m21 = Poly<R>(z);
    h.m22 = Poly<R>::constant(one);
    H_.push_back(h);
    for (int n = 1; n <= nmax; ++n) {
      const LogMatrix<R>& prev = H_.back();
      LogMatrix<R> next;
      next.n = n;
      next.m11 = ap_ * prev.m11 + prev.m21;
      next.m12 = ap_ * prev.m12 + prev.m22;
      next.m21 = -mul_phi_y(prev.m11, p_, n);
      next.m22 = -mul_phi_y(prev.m12, p_, n);
      H_.push_back(std::move(next));
    }
  }

  long p() const { return p_; }
  const R& ap() const { return ap_; }
  int nmax() const { return static_cast<int>(H_.size()) - 1; }
  const LogMatrix<R>& H(int n) const { return H_.at(static_cast<std::size_t>(n)); }

  /// H^s_n for s = "sharp" (first entry of the first row) or "flat".
  const Poly<R>& entry(int n, bool sharp) const { return sharp ? H(n).m11 : H(n).m12; }

  /// det H_n == omega_n / X.
  bool verify_det(int n) const {
    const auto& h = H(n);
    return h.m11 * h.m22 - h.m12 * h.m21 == omega_over_x_y(p_, n, ap_);
  }

  /// -H#_n Hb_{n-1} + Hb_n H#_{n-1} == omega_{n-1} / X.
  bool verify_wronskian(int n) const {
    if (n < 1) throw InputError("Wronskian identity needs n >= 1");
    const auto &a = H(n), &b = H(n - 1);
    return b.m11 * a.m12 - a.m11 * b.m12 == omega_over_x_y(p_, n - 1, ap_);
  }

  /// [1 u] H_n (-X Hb_{n-1}, X H#_{n-1})^t == omega_{n-1}.
  bool verify_col_u_identity(int n, const R& u) const {
    if (n < 1) throw InputError("column identity needs n >= 1");
    const auto &a = H(n), &b = H(n - 1);
    Poly<R> x = mul_phi_y(Poly<R>::constant(one_like(ap_)), p_, 0);
    Poly<R> v1 = -(x * b.m12), v2 = x * b.m11;
    Poly<R> r1 = a.m11 + u * a.m21, r2 = a.m12 + u * a.m22;
    return r1 * v1 + r2 * v2 == omega_y(p_, n - 1, ap_);
  }

  /// H^s_{n} == a H^s_{n-1} - Phi_{n-1} H^s_{n-2} for n >= 2.
  bool verify_recursion(int n) const {
    if (n < 2) throw InputError("recursion check needs n >= 2");
    for (bool s : {true, false}) {
      Poly<R> rhs = ap_ * entry(n - 1, s) - mul_phi_y(entry(n - 2, s), p_, n - 1);
      if (!(entry(n, s) == rhs)) return false;
    }
    return true;
  }

 private:
  long p_;
  R ap_;
  std::vector<LogMatrix<R>> H_;
};

/// ord_{eps_n} of G(zeta_{p^n}) for an integer polynomial G in Y, computed
/// from the zeta-basis folding and an eps-basis change modulo p^M with M
/// raised until the minimum is certified.
inline Valuation ord_at_zeta(const Poly<Integer>& G, long p, int n) {
  long pn = static_cast<long>(ipow64(p, n));
  auto phi = static_cast<std::size_t>(phi_pn(p, n));
  std::vector<Integer> ext(static_cast<std::size_t>(pn), 0);
  for (std::size_t i = 0; i < G.size(); ++i) ext[i % static_cast<std::size_t>(pn)] += G[i];
  if (n > 0) {
    auto q = static_cast<std::size_t>(pn / p);
    for (std::size_t r = phi; r < ext.size(); ++r) {
      if (ext[r] == 0) continue;
      for (long k = 0; k <= p - 2; ++k) ext[r - phi + static_cast<std::size_t>(k) * q] -= ext[r];
    }
  }
  ext.resize(phi);
  bool zero = true;
  for (const auto& c : ext) zero = zero && c == 0;
  if (zero) return Valuation::infinity();
  int max_digits = 0;
  for (__int128 q = p; q < (static_cast<__int128>(1) << 62); q *= p) ++max_digits;
  for (int M = 4;; M = std::min(2 * M, max_digits)) {
    std::int64_t mod = ipow64(p, M);
    Integer zm(static_cast<long>(mod));
    std::vector<std::int64_t> c(phi);
    for (std::size_t i = 0; i < phi; ++i) {
      Integer r = ext[i] % zm;
      if (r < 0) r += zm;
      c[i] = r.get_si();
    }
    // b_j = sum_i c_i binom(i, j) mod p^M, binomials by Pascal rows.
    std::vector<std::int64_t> b(phi, 0), row(phi + 1, 0);
    row[0] = 1;
    for (std::size_t i = 0; i < phi; ++i) {
      if (i > 0)
        for (std::size_t j = i; j >= 1; --j) {
          row[j] += row[j - 1];
          if (row[j] >= mod) row[j] -= mod;
        }
      if (!c[i]) continue;
      for (std::size_t j = 0; j <= i; ++j)
        b[j] = static_cast<std::int64_t>((b[j] + static_cast<__int128>(c[i]) * row[j]) % mod);
    }
    long best = -1;
    for (std::size_t j = 0; j < phi; ++j) {
      if (!b[j]) continue;
      long v = 0;
      std::int64_t t = b[j];
      while (t % p == 0) {
        t /= p;
        ++v;
      }
      long o = v * static_cast<long>(phi) + static_cast<long>(j);
      if (best < 0 || o < best) best = o;
    }
    if (best >= 0 && best < static_cast<long>(M) * static_cast<long>(phi)) return Valuation(best);
    if (M >= max_digits) throw PrecisionError("valuation not certified within 62-bit precision");
  }
}

/// Closed-form ord_{eps_n} H^s_n(eps_n) for r = ord_p(a_p); nullopt r means a_p = 0.
inline Valuation closed_form_ord(int n, bool sharp, long p, const std::optional<Rational>& r) {
  if (n < 1) throw InputError("closed form needs n >= 1");
  Rational s = 0;
  bool with_r;
  if (n % 2 == 1) {
    int top = (n - 1) / 2;
    with_r = sharp;
    for (int k = 1; k <= top; ++k) s += sharp ? Rational(1, ipow(p, 2 * k)) : Rational(1, ipow(p, 2 * k - 1));
  } else {
    with_r = !sharp;
    int top = sharp ? n / 2 : n / 2 - 1;
    for (int k = 1; k <= top; ++k) s += sharp ? Rational(1, ipow(p, 2 * k - 1)) : Rational(1, ipow(p, 2 * k));
  }
  if (with_r) {
    if (!r) return Valuation::infinity();
    s += *r;
  }
  return Valuation(Rational(s * phi_pn(p, n)));
}

struct ValuationComparison {
  int n = 0;
  bool sharp = true;
  Valuation computed;
  Valuation closed_form;
  bool applicable = true;  // false when the two recursion summands tie
  bool equal = false;
};

/// Computed and closed-form ord_{eps_n} H^s_n(eps_n) for an integer a_p.
inline ValuationComparison h_valuation(const ColemanFamily<Integer>& fam, int n, bool sharp) {
  long p = fam.p();
  ValuationComparison vc;
  vc.n = n;
  vc.sharp = sharp;
  std::optional<Rational> r;
  if (fam.ap() != 0) r = Rational(vp(fam.ap(), p));
  if (r && *r <= 0) throw InputError("a_p must have positive valuation");
  vc.computed = ord_at_zeta(fam.entry(n, sharp), p, n);
  vc.closed_form = closed_form_ord(n, sharp, p, r);
  if (n >= 2) {
    Valuation va = r ? Valuation(Rational(*r * phi_pn(p, n))) : Valuation::infinity();
    Valuation t1 = va + ord_at_zeta(fam.entry(n - 1, sharp), p, n);
    Valuation t2 = ord_at_zeta(phi_y(p, n - 1, Integer(0)), p, n) + ord_at_zeta(fam.entry(n - 2, sharp), p, n);
    if (t1 == t2) vc.applicable = false;
  }
  vc.equal = vc.applicable && vc.computed == vc.closed_form;
  return vc;
}

/// (g1, g2) in J_v: (p - 1) g1(0) = (2 - a_p) g2(0).
template <class R>
bool jv_membership(const Poly<R>& g1, const Poly<R>& g2, long p, const R& ap) {
  R lhs = from_int_like(ap, p - 1) * g1[0];
  R rhs = (from_int_like(ap, 2) - ap) * g2[0];
  return detail::elem_is_zero<R>(lhs - rhs);
}

struct MockColemanLevel {
  int n = 0;
  Poly<Integer> col;  // Col_n in the X variable, reduced mod omega_n
  bool compatible = false;
};

/// Col_n = first row of H_n (s#, sb)^t mod omega_n, and the check that the
/// second row equals -(norm lift of Col_{n-1}) mod omega_n.
inline std::vector<MockColemanLevel> mock_coleman_pair(const ColemanFamily<Integer>& fam, const Poly<Integer>& s_sharp,
                                                       const Poly<Integer>& s_flat) {
  long p = fam.p();
  Poly<Integer> ss = to_shifted(s_sharp), sf = to_shifted(s_flat);
  std::vector<MockColemanLevel> out;
  Poly<Integer> prev_col = mod_omega_y(ss, p, 0);
  for (int n = 1; n <= fam.nmax(); ++n) {
    const auto& h = fam.H(n);
    Poly<Integer> row1 = mod_omega_y(h.m11 * ss + h.m12 * sf, p, n);
    Poly<Integer> row2 = mod_omega_y(h.m21 * ss + h.m22 * sf, p, n);
    Poly<Integer> lift = mod_omega_y(mul_phi_y(mod_omega_y(prev_col, p, n - 1), p, n), p, n);
    MockColemanLevel lv;
    lv.n = n;
    lv.col = from_shifted(row1);
    lv.compatible = row2 == -lift;
    out.push_back(lv);
    prev_col = row1;
  }
  return out;
}

}  // namespace iwg
