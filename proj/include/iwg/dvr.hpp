#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "iwg/arith.hpp"

namespace iwg {

class DvrElement;

/// The ring of integers of a finite extension of Q_p, presented as a tower:
/// an unramified extension O_0 = Z_p[t]/(g(t)) of degree f, then an
/// Eisenstein extension O_0[pi]/(E(pi)) of degree e.
///
/// Elements are stored as e*f coefficients mod p^k (basis pi^i t^j) where
/// k = ceil(precision / e) + 1, so p^k must fit in 62 bits.
class DvrRing : public std::enable_shared_from_this<DvrRing> {
 public:
  using Digits = std::vector<std::int64_t>;  // element of O_0 mod p^k, length f

  /// `unramified` lists g from the constant term up to the leading 1 (may be
  /// empty when f = 1). `eisenstein[i]` is the coefficient of pi^i in E, an
  /// element of O_0 given by its f integer coordinates, for i < e.
  static std::shared_ptr<const DvrRing> make(long p, int e, int f, const std::vector<long>& unramified,
                                             const std::vector<std::vector<long>>& eisenstein, int precision);

  /// Z_p itself.
  static std::shared_ptr<const DvrRing> zp(long p, int precision) { return make(p, 1, 1, {}, {{-p}}, precision); }

  long p() const { return p_; }
  int e() const { return e_; }
  int f() const { return f_; }
  /// Working precision in units of the uniformizer (at least the requested one).
  int precision() const { return prec_; }
  int digits() const { return k_; }
  std::int64_t modulus() const { return pk_[static_cast<std::size_t>(k_)]; }
  std::int64_t p_power(int i) const { return pk_[static_cast<std::size_t>(i)]; }

  DvrElement zero() const;
  DvrElement one() const;
  DvrElement from_int(long v) const;
  DvrElement from_integer(const Integer& v) const;
  DvrElement uniformizer() const;
  /// Element sum_j c[j] t^j of O_0.
  DvrElement from_unramified(const std::vector<long>& c) const;

  std::string describe() const;

  // Internal arithmetic on raw coefficient vectors.
  std::int64_t reduce(const Integer& v) const;
  std::int64_t add(std::int64_t a, std::int64_t b) const {
    std::int64_t s = a + b;
    return s >= modulus() ? s - modulus() : s;
  }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return a >= b ? a - b : a - b + modulus(); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % modulus());
  }
  Digits mul0(const Digits& a, const Digits& b) const;
  std::vector<std::int64_t> mul_raw(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const;
  /// p-adic valuation of an integer mod p^k (k if zero).
  int vp_digit(std::int64_t x) const {
    int v = 0;
    while (v < k_ && x % p_ == 0) {
      x /= p_;
      ++v;
    }
    return x == 0 ? k_ : v;
  }

  const std::vector<Digits>& eisenstein() const { return eis_; }
  const DvrElement& pi_inv_numerator() const { return *pi_num_; }
  const DvrElement& neg_w_inverse() const { return *w_inv_neg_; }
  const Digits& unramified() const { return g_; }

 private:
  DvrRing() = default;
  static bool irreducible_mod_p(const std::vector<long>& g, long p);

  long p_ = 0;
  int e_ = 1, f_ = 1, prec_ = 0, k_ = 0;
  std::vector<std::int64_t> pk_;  // p^0 .. p^k
  Digits g_;                      // g_0..g_{f-1}, monic
  std::vector<Digits> eis_;       // E_0..E_{e-1}
  std::shared_ptr<DvrElement> pi_num_;     // pi^{e-1} + E_{e-1} pi^{e-2} + ... + E_1
  std::shared_ptr<DvrElement> w_inv_neg_;  // -(E_0/p)^{-1}
};

using DvrPtr = std::shared_ptr<const DvrRing>;

/// An element of a DvrRing with its own absolute precision (in uniformizer
/// units). Coefficients beyond the precision are kept reduced to zero.
class DvrElement {
 public:
  DvrElement() = default;
  DvrElement(DvrPtr ring, std::vector<std::int64_t> coeffs, int prec)
      : ring_(std::move(ring)), c_(std::move(coeffs)), prec_(prec) {
    normalize();
  }

  const DvrPtr& ring() const { return ring_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  int precision() const { return prec_; }
  bool valid() const { return ring_ != nullptr; }

  bool is_zero() const {
    for (auto x : c_)
      if (x) return false;
    return true;
  }
  /// Valuation in uniformizer units, or the precision if indistinguishable from zero.
  int val_pi() const;
  /// Valuation normalized by v(p) = 1; infinite when zero at working precision.
  Valuation valuation() const {
    if (is_zero()) return Valuation::infinity();
    return Valuation(Rational(val_pi(), ring_->e()));
  }
  bool is_unit() const { return !is_zero() && val_pi() == 0; }

  DvrElement inverse() const;
  /// Divide by pi^s; requires valuation at least s.
  DvrElement div_pi(int s = 1) const;
  /// Divide by p; requires valuation at least e.
  DvrElement div_p() const;
  /// a / b for b nonzero with v(b) <= v(a).
  DvrElement exact_div(const DvrElement& b) const;
  DvrElement with_precision(int prec) const { return DvrElement(ring_, c_, std::min(prec, prec_)); }

  friend DvrElement operator+(const DvrElement& a, const DvrElement& b);
  friend DvrElement operator-(const DvrElement& a, const DvrElement& b);
  friend DvrElement operator*(const DvrElement& a, const DvrElement& b);
  DvrElement operator-() const;
  DvrElement& operator+=(const DvrElement& b) { return *this = *this + b; }
  DvrElement& operator-=(const DvrElement& b) { return *this = *this - b; }
  DvrElement& operator*=(const DvrElement& b) { return *this = *this * b; }

  /// Equality up to the smaller of the two precisions.
  friend bool operator==(const DvrElement& a, const DvrElement& b) { return (a - b).is_zero(); }
  friend bool operator!=(const DvrElement& a, const DvrElement& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const DvrElement& a);

 private:
  void normalize();
  static void check_same(const DvrElement& a, const DvrElement& b);

  DvrPtr ring_;
  std::vector<std::int64_t> c_;
  int prec_ = 0;
};

inline DvrElement zero_like(const DvrElement& a) { return a.ring()->zero(); }
inline DvrElement one_like(const DvrElement& a) { return a.ring()->one(); }
inline DvrElement from_int_like(const DvrElement& a, long v) { return a.ring()->from_int(v); }
inline DvrElement from_integer_like(const DvrElement& a, const Integer& v) { return a.ring()->from_integer(v); }
inline bool is_zero(const DvrElement& a) { return a.is_zero(); }

// ---------------------------------------------------------------------------

namespace detail {

// Polynomials over F_p for the irreducibility test.
using FpPoly = std::vector<long>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& m, long p) {
  fp_trim(a);
  long inv = 1;
  for (long t = 1; t < p; ++t)
    if ((m.back() * t) % p == 1) inv = t;
  while (a.size() >= m.size()) {
    long c = (a.back() * inv) % p;
    std::size_t s = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[s + i] = ((a[s + i] - c * m[i]) % p + p) % p;
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return fp_mod(r, m, p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

}  // namespace detail

inline bool DvrRing::irreducible_mod_p(const std::vector<long>& g, long p) {
  using namespace detail;
  FpPoly m(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) m[i] = ((g[i] % p) + p) % p;
  fp_trim(m);
  std::size_t n = m.size() - 1;
  if (n <= 1) return n == 1;
  // g is irreducible iff gcd(x^{p^i} - x, g) = 1 for 1 <= i <= n/2 (g squarefree of degree n).
  FpPoly x = {0, 1};
  FpPoly xp = x;
  for (std::size_t i = 1; i <= n / 2; ++i) {
    FpPoly acc = {1}, base = xp;
    for (long t = p; t > 0; t >>= 1) {
      if (t & 1) acc = fp_mulmod(acc, base, m, p);
      base = fp_mulmod(base, base, m, p);
    }
    xp = acc;
    FpPoly d = xp;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    FpPoly gg = fp_gcd(m, d, p);
    if (gg.size() != 1) return false;
  }
  return true;
}

inline std::shared_ptr<const DvrRing> DvrRing::make(long p, int e, int f, const std::vector<long>& unramified,
                                                    const std::vector<std::vector<long>>& eisenstein,
                                                    int precision) {
  if (!is_prime(p) || p == 2) throw InputError("residue characteristic must be an odd prime");
  if (e < 1 || f < 1) throw InputError("ramification and residue degrees must be positive");
  if (precision < 1) throw InputError("precision must be positive");
  std::shared_ptr<DvrRing> r(new DvrRing());
  r->p_ = p;
  r->e_ = e;
  r->f_ = f;
  // One guard digit beyond the requested precision.
  r->k_ = (precision + e - 1) / e + 1;
  r->prec_ = e * r->k_;
  r->pk_.resize(static_cast<std::size_t>(r->k_) + 1);
  for (int i = 0; i <= r->k_; ++i) {
    try {
      r->pk_[static_cast<std::size_t>(i)] = ipow64(p, i);
    } catch (const InputError&) {
      throw InputError("precision too large: p^" + std::to_string(r->k_) + " exceeds 62 bits");
    }
  }
  if (f == 1) {
    r->g_ = {0};
  } else {
    if (unramified.size() != static_cast<std::size_t>(f) + 1 || unramified.back() != 1)
      throw InputError("unramified polynomial must be monic of degree f");
    if (!irreducible_mod_p(unramified, p)) throw InputError("unramified polynomial is not irreducible mod p");
    r->g_.resize(static_cast<std::size_t>(f));
    for (int j = 0; j < f; ++j) r->g_[static_cast<std::size_t>(j)] = r->reduce(unramified[static_cast<std::size_t>(j)]);
  }
  if (eisenstein.size() != static_cast<std::size_t>(e))
    throw InputError("Eisenstein polynomial must have e non-leading coefficients");
  r->eis_.resize(static_cast<std::size_t>(e));
  for (int i = 0; i < e; ++i) {
    const auto& ci = eisenstein[static_cast<std::size_t>(i)];
    if (ci.size() > static_cast<std::size_t>(f)) throw InputError("Eisenstein coefficient has too many coordinates");
    Digits d(static_cast<std::size_t>(f), 0);
    for (std::size_t j = 0; j < ci.size(); ++j) {
      if (ci[j] % p != 0) throw InputError("Eisenstein coefficients must be divisible by p");
      d[j] = r->reduce(ci[j]);
    }
    r->eis_[static_cast<std::size_t>(i)] = d;
  }
  // E_0 = p w with w a unit of O_0.
  const auto& c0 = eisenstein[0];
  std::vector<long> w(c0.size());
  bool unit = false;
  for (std::size_t j = 0; j < c0.size(); ++j) {
    w[j] = c0[j] / p;
    if (((w[j] % p) + p) % p != 0) unit = true;
  }
  if (!unit) throw InputError("Eisenstein constant term must have valuation exactly 1");
  std::shared_ptr<const DvrRing> cr = r;
  r->w_inv_neg_ = std::make_shared<DvrElement>(-cr->from_unramified(w).inverse());
  std::vector<std::int64_t> wc(static_cast<std::size_t>(e * f), 0);
  wc[static_cast<std::size_t>((e - 1) * f)] = 1;
  for (int i = 1; i < e; ++i)
    for (int j = 0; j < f; ++j) {
      auto idx = static_cast<std::size_t>((i - 1) * f + j);
      wc[idx] = r->add(wc[idx], r->eis_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  r->pi_num_ = std::make_shared<DvrElement>(cr, std::move(wc), r->prec_);
  return cr;
}

inline std::int64_t DvrRing::reduce(const Integer& v) const {
  Integer m = v % Integer(static_cast<long>(modulus()));
  if (m < 0) m += static_cast<long>(modulus());
  return m.get_si();
}

inline DvrRing::Digits DvrRing::mul0(const Digits& a, const Digits& b) const {
  auto f = static_cast<std::size_t>(f_);
  if (f == 1) return {mul(a[0], b[0])};
  std::vector<std::int64_t> r(2 * f - 1, 0);
  for (std::size_t i = 0; i < f; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < f; ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
  }
  for (std::size_t d = 2 * f - 2; d >= f; --d) {
    std::int64_t c = r[d];
    if (c)
      for (std::size_t j = 0; j < f; ++j) r[d - f + j] = sub(r[d - f + j], mul(c, g_[j]));
    r[d] = 0;
  }
  r.resize(f);
  return r;
}

inline std::vector<std::int64_t> DvrRing::mul_raw(const std::vector<std::int64_t>& a,
                                                  const std::vector<std::int64_t>& b) const {
  auto e = static_cast<std::size_t>(e_), f = static_cast<std::size_t>(f_);
  if (e == 1 && f == 1) return {mul(a[0], b[0])};
  std::vector<Digits> acc(2 * e - 1, Digits(f, 0));
  for (std::size_t i = 0; i < e; ++i) {
    Digits ai(a.begin() + static_cast<std::ptrdiff_t>(i * f), a.begin() + static_cast<std::ptrdiff_t>((i + 1) * f));
    bool nz = false;
    for (auto x : ai) nz = nz || x;
    if (!nz) continue;
    for (std::size_t j = 0; j < e; ++j) {
      Digits bj(b.begin() + static_cast<std::ptrdiff_t>(j * f), b.begin() + static_cast<std::ptrdiff_t>((j + 1) * f));
      Digits pr = mul0(ai, bj);
      for (std::size_t t = 0; t < f; ++t) acc[i + j][t] = add(acc[i + j][t], pr[t]);
    }
  }
  // pi^e = -sum E_i pi^i
  for (std::size_t d = 2 * e - 2; d >= e; --d) {
    for (std::size_t j = 0; j < e; ++j) {
      Digits pr = mul0(acc[d], eis_[j]);
      for (std::size_t t = 0; t < f; ++t) acc[d - e + j][t] = sub(acc[d - e + j][t], pr[t]);
    }
    if (d == e) break;
  }
  std::vector<std::int64_t> r(e * f);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t t = 0; t < f; ++t) r[i * f + t] = acc[i][t];
  return r;
}

inline DvrElement DvrRing::zero() const {
  return DvrElement(shared_from_this(), std::vector<std::int64_t>(static_cast<std::size_t>(e_ * f_), 0), prec_);
}
inline DvrElement DvrRing::one() const { return from_int(1); }
inline DvrElement DvrRing::from_int(long v) const { return from_integer(Integer(v)); }
inline DvrElement DvrRing::from_integer(const Integer& v) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(e_ * f_), 0);
  c[0] = reduce(v);
  return DvrElement(shared_from_this(), std::move(c), prec_);
}
inline DvrElement DvrRing::from_unramified(const std::vector<long>& w) const {
  if (w.size() > static_cast<std::size_t>(f_)) throw InputError("too many unramified coordinates");
  std::vector<std::int64_t> c(static_cast<std::size_t>(e_ * f_), 0);
  for (std::size_t j = 0; j < w.size(); ++j) c[j] = reduce(w[j]);
  return DvrElement(shared_from_this(), std::move(c), prec_);
}
inline DvrElement DvrRing::uniformizer() const {
  if (e_ == 1) return from_int(p_);
  std::vector<std::int64_t> c(static_cast<std::size_t>(e_ * f_), 0);
  c[static_cast<std::size_t>(f_)] = 1;
  return DvrElement(shared_from_this(), std::move(c), prec_);
}

inline std::string DvrRing::describe() const {
  return "O(p=" + std::to_string(p_) + ", e=" + std::to_string(e_) + ", f=" + std::to_string(f_) +
         ", prec=" + std::to_string(prec_) + ")";
}

inline void DvrElement::check_same(const DvrElement& a, const DvrElement& b) {
  if (!a.ring_ || a.ring_ != b.ring_) throw std::invalid_argument("DVR elements from different rings");
}

inline void DvrElement::normalize() {
  if (!ring_) return;
  prec_ = std::min(prec_, ring_->precision());
  if (prec_ < 0) prec_ = 0;
  int e = ring_->e(), f = ring_->f();
  for (int i = 0; i < e; ++i) {
    int ki = prec_ > i ? (prec_ - i + e - 1) / e : 0;
    std::int64_t m = ring_->p_power(std::min(ki, ring_->digits()));
    for (int j = 0; j < f; ++j) {
      auto& x = c_[static_cast<std::size_t>(i * f + j)];
      x %= m;
    }
  }
}

inline int DvrElement::val_pi() const {
  int e = ring_->e(), f = ring_->f();
  int best = prec_;
  for (int i = 0; i < e; ++i) {
    int v = ring_->digits();
    for (int j = 0; j < f; ++j) v = std::min(v, ring_->vp_digit(c_[static_cast<std::size_t>(i * f + j)]));
    if (v < ring_->digits()) best = std::min(best, e * v + i);
  }
  return best;
}

inline DvrElement operator+(const DvrElement& a, const DvrElement& b) {
  DvrElement::check_same(a, b);
  std::vector<std::int64_t> c(a.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.ring_->add(a.c_[i], b.c_[i]);
  return DvrElement(a.ring_, std::move(c), std::min(a.prec_, b.prec_));
}

inline DvrElement operator-(const DvrElement& a, const DvrElement& b) {
  DvrElement::check_same(a, b);
  std::vector<std::int64_t> c(a.c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.ring_->sub(a.c_[i], b.c_[i]);
  return DvrElement(a.ring_, std::move(c), std::min(a.prec_, b.prec_));
}

inline DvrElement DvrElement::operator-() const {
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ring_->sub(0, c_[i]);
  return DvrElement(ring_, std::move(c), prec_);
}

inline DvrElement operator*(const DvrElement& a, const DvrElement& b) {
  DvrElement::check_same(a, b);
  int va = a.val_pi(), vb = b.val_pi();
  int prec = std::min(a.prec_ + vb, b.prec_ + va);
  return DvrElement(a.ring_, a.ring_->mul_raw(a.c_, b.c_), prec);
}

inline DvrElement DvrElement::inverse() const {
  if (!is_unit()) throw std::domain_error("inverse of a non-unit in " + ring_->describe());
  // Start from x^{q-2}, which inverts x modulo the maximal ideal.
  long q = static_cast<long>(ipow64(ring_->p(), ring_->f()));
  DvrElement base(ring_, c_, ring_->precision());
  DvrElement y = ring_->one(), b = base;
  for (long t = q - 2; t > 0; t >>= 1) {
    if (t & 1) y = y * b;
    b = b * b;
  }
  DvrElement two = ring_->from_int(2);
  for (int good = 1; good < ring_->precision(); good *= 2) y = y * (two - base * y);
  return DvrElement(ring_, y.c_, prec_);
}

inline DvrElement DvrElement::div_p() const {
  int e = ring_->e();
  if (!is_zero() && val_pi() < e) throw std::domain_error("element not divisible by p");
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] / ring_->p();
  return DvrElement(ring_, std::move(c), prec_ - e);
}

inline DvrElement DvrElement::div_pi(int s) const {
  if (s < 0) throw std::invalid_argument("negative shift");
  if (!is_zero() && val_pi() < s) throw std::domain_error("element not divisible by the requested power of pi");
  if (s == 0) return *this;
  if (ring_->e() == 1) {
    DvrElement r = *this;
    for (int i = 0; i < s; ++i) r = r.div_p();
    return r;
  }
  // 1/pi = -(pi^{e-1} + E_{e-1} pi^{e-2} + ... + E_1) / (p w)
  DvrElement r = *this;
  for (int t = 0; t < s; ++t) r = (r * ring_->pi_inv_numerator()).div_p() * ring_->neg_w_inverse();
  return r;
}

inline DvrElement DvrElement::exact_div(const DvrElement& b) const {
  check_same(*this, b);
  if (b.is_zero()) throw std::domain_error("division by zero");
  int s = b.val_pi();
  if (!is_zero() && val_pi() < s) throw std::domain_error("quotient is not integral");
  return div_pi(s) * b.div_pi(s).inverse();
}

inline std::ostream& operator<<(std::ostream& os, const DvrElement& a) {
  if (!a.ring()) return os << "<null>";
  os << "(";
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) os << (i ? "," : "") << a.coeffs()[i];
  return os << " +O(pi^" << a.precision() << "))";
}

}  // namespace iwg
