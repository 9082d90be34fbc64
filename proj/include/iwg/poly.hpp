#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <type_traits>
#include <utility>
#include <vector>

#include "iwg/arith.hpp"

namespace iwg {

template <class R>
class Poly;

namespace detail {
template <class T>
bool elem_is_zero(const T& x) {
  return is_zero(x);
}

/// Write |v| into `limbs` slots of the buffer starting at limb offset `at`.
inline void put_limbs(std::vector<mp_limb_t>& buf, std::size_t at, const Integer& v) {
  std::size_t n = mpz_size(v.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) buf[at + i] = mpz_getlimbn(v.get_mpz_t(), static_cast<mp_size_t>(i));
}

inline Integer from_limbs(const std::vector<mp_limb_t>& buf, std::size_t at, std::size_t count) {
  Integer r;
  if (at >= buf.size()) return r;
  count = std::min(count, buf.size() - at);
  mpz_import(r.get_mpz_t(), count, -1, sizeof(mp_limb_t), 0, 0, buf.data() + at);
  return r;
}

inline std::vector<mp_limb_t> to_limbs(const Integer& v) {
  std::vector<mp_limb_t> out(mpz_size(v.get_mpz_t()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mpz_getlimbn(v.get_mpz_t(), static_cast<mp_size_t>(i));
  return out;
}

/// Exact product of integer coefficient vectors by Kronecker substitution:
/// pack into one large integer per sign, multiply with GMP, unpack.
inline std::vector<Integer> kronecker_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t bits_a = 1, bits_b = 1;
  for (const auto& x : a) bits_a = std::max(bits_a, mpz_sizeinbase(x.get_mpz_t(), 2));
  for (const auto& x : b) bits_b = std::max(bits_b, mpz_sizeinbase(x.get_mpz_t(), 2));
  std::size_t terms = std::min(a.size(), b.size());
  std::size_t log_terms = 1;
  while ((std::size_t{1} << log_terms) < terms) ++log_terms;
  std::size_t slot_bits = bits_a + bits_b + log_terms + 2;
  std::size_t L = (slot_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
  auto pack = [&](const std::vector<Integer>& v, int sign) {
    std::vector<mp_limb_t> buf(v.size() * L, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) == sign) put_limbs(buf, i * L, Integer(abs(v[i])));
    Integer r;
    mpz_import(r.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
    return r;
  };
  Integer pa = pack(a, 1), na = pack(a, -1), pb = pack(b, 1), nb = pack(b, -1);
  Integer plus = pa * pb + na * nb, minus = pa * nb + na * pb;
  auto lp = to_limbs(plus), lm = to_limbs(minus);
  std::vector<Integer> out(a.size() + b.size() - 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = from_limbs(lp, k * L, L) - from_limbs(lm, k * L, L);
  return out;
}

constexpr std::size_t kKroneckerThreshold = 24;

}  // namespace detail

/// Dense univariate polynomial over a commutative ring R.
///
/// Every polynomial carries a zero element of R so that coefficient access
/// past the degree works for ring types whose constants need a context.
template <class R>
class Poly {
 public:
  Poly() : zero_() {}
  explicit Poly(R zero) : zero_(std::move(zero)) {}
  Poly(std::vector<R> coeffs, R zero) : c_(std::move(coeffs)), zero_(std::move(zero)) { trim(); }

  static Poly constant(const R& c) { return Poly(std::vector<R>{c}, zero_like(c)); }
  static Poly monomial(const R& c, std::size_t k) {
    std::vector<R> v(k + 1, zero_like(c));
    v[k] = c;
    return Poly(std::move(v), zero_like(c));
  }
  /// The polynomial X over the ring of `like`.
  static Poly x(const R& like) { return monomial(one_like(like), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<R>& coeffs() const { return c_; }
  const R& zero() const { return zero_; }

  const R& operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }

  void set(std::size_t i, const R& v) {
    if (i >= c_.size()) c_.resize(i + 1, zero_);
    c_[i] = v;
    trim();
  }

  const R& leading() const { return c_.empty() ? zero_ : c_.back(); }

  Poly operator-() const {
    Poly r(zero_);
    r.c_.reserve(c_.size());
    for (const auto& a : c_) r.c_.push_back(-a);
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) { return mul_trunc(a, b, static_cast<std::size_t>(-1)); }

  /// Product keeping only degrees below `limit`.
  friend Poly mul_trunc(const Poly& a, const Poly& b, std::size_t limit) {
    if (a.c_.empty() || b.c_.empty()) return Poly(a.zero_);
    if (std::min(a.c_.size(), b.c_.size()) >= detail::kKroneckerThreshold) {
      if constexpr (std::is_same_v<R, Integer>) {
        Poly r(detail::kronecker_mul(a.c_, b.c_), a.zero_);
        return limit < r.c_.size() ? r.truncated(limit) : r;
      } else if constexpr (std::is_same_v<R, Poly<Integer>>) {
        return bivariate_mul(a, b).truncated(limit);
      }
    }
    std::size_t n = std::min(a.c_.size() + b.c_.size() - 1, limit);
    std::vector<R> r(n, a.zero_);
    for (std::size_t i = 0; i < a.c_.size() && i < n; ++i) {
      if (detail::elem_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), a.zero_);
  }

  friend Poly operator*(const R& s, const Poly& a) {
    Poly r(a.zero_);
    r.c_.reserve(a.c_.size());
    for (const auto& x : a.c_) r.c_.push_back(s * x);
    r.trim();
    return r;
  }

  /// Keep degrees below n.
  Poly truncated(std::size_t n) const {
    if (n >= c_.size()) return *this;
    return Poly(std::vector<R>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)), zero_);
  }

  /// Multiply by X^k.
  Poly shifted(std::size_t k) const {
    if (c_.empty()) return *this;
    std::vector<R> v(k, zero_);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v), zero_);
  }

  R eval(const R& x) const {
    R acc = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// this(inner(X)).
  Poly compose(const Poly& inner) const {
    Poly acc(zero_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
    return acc;
  }

  /// this(inner(X)) mod X^limit.
  Poly compose_trunc(const Poly& inner, std::size_t limit) const {
    Poly acc(zero_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = mul_trunc(acc, inner, limit) + constant(c_[i]);
    return acc.truncated(limit);
  }

  template <class F>
  auto map(F f) const {
    using S = decltype(f(zero_));
    std::vector<S> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(f(a));
    return Poly<S>(std::move(v), f(zero_));
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (!detail::elem_is_zero<R>(a[i] - b[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Poly& a) {
    os << "[";
    for (std::size_t i = 0; i < a.c_.size(); ++i) os << (i ? ", " : "") << a.c_[i];
    return os << "]";
  }

 private:
  // Pack coefficients in Z[a] into one variable T with a -> T, X -> T^stride.
  static Poly bivariate_mul(const Poly& a, const Poly& b) {
    std::size_t da = 0, db = 0;
    for (const auto& x : a.c_) da = std::max(da, x.size());
    for (const auto& x : b.c_) db = std::max(db, x.size());
    std::size_t stride = da + db;
    auto pack = [&](const Poly& p) {
      std::vector<Integer> v(p.c_.size() * stride);
      for (std::size_t i = 0; i < p.c_.size(); ++i)
        for (std::size_t j = 0; j < p.c_[i].size(); ++j) v[i * stride + j] = p.c_[i][j];
      return v;
    };
    std::vector<Integer> prod = detail::kronecker_mul(pack(a), pack(b));
    std::size_t n = a.c_.size() + b.c_.size() - 1;
    std::vector<R> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t lo = i * stride, hi = std::min(prod.size(), lo + stride);
      std::vector<Integer> inner(prod.begin() + static_cast<std::ptrdiff_t>(std::min(lo, prod.size())),
                                 prod.begin() + static_cast<std::ptrdiff_t>(hi));
      out.emplace_back(std::move(inner), Integer(0));
    }
    return Poly(std::move(out), a.zero_);
  }

  void trim() {
    while (!c_.empty() && detail::elem_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
  R zero_;
};

template <class R>
Poly<R> zero_like(const Poly<R>& a) {
  return Poly<R>(a.zero());
}
template <class R>
Poly<R> one_like(const Poly<R>& a) {
  return Poly<R>::constant(one_like(a.zero()));
}
template <class R>
Poly<R> from_int_like(const Poly<R>& a, long v) {
  return Poly<R>(std::vector<R>{from_int_like(a.zero(), v)}, a.zero());
}
template <class R>
Poly<R> from_integer_like(const Poly<R>& a, const Integer& v) {
  return Poly<R>(std::vector<R>{from_integer_like(a.zero(), v)}, a.zero());
}
template <class R>
bool is_zero(const Poly<R>& a) {
  return a.is_zero();
}

/// Quotient and remainder by a monic divisor.
template <class R>
std::pair<Poly<R>, Poly<R>> divmod_monic(const Poly<R>& a, const Poly<R>& m) {
  if (m.is_zero() || !detail::elem_is_zero<R>(m.leading() - one_like(m.leading()))) throw InputError("divisor is not monic");
  int dm = m.degree();
  std::vector<R> r = a.coeffs();
  const R z = a.zero();
  if (static_cast<int>(r.size()) <= dm) return {Poly<R>(z), a};
  std::vector<R> q(r.size() - static_cast<std::size_t>(dm), z);
  for (int i = static_cast<int>(r.size()) - 1; i >= dm; --i) {
    R c = r[static_cast<std::size_t>(i)];
    if (detail::elem_is_zero<R>(c)) continue;
    q[static_cast<std::size_t>(i - dm)] = c;
    for (int j = 0; j <= dm; ++j) {
      auto k = static_cast<std::size_t>(i - dm + j);
      r[k] = r[k] - c * m[static_cast<std::size_t>(j)];
    }
  }
  r.resize(static_cast<std::size_t>(dm), z);
  return {Poly<R>(std::move(q), z), Poly<R>(std::move(r), z)};
}

template <class R>
Poly<R> mod_monic(const Poly<R>& a, const Poly<R>& m) {
  return divmod_monic(a, m).second;
}

/// Convert an integer polynomial into a polynomial over the ring of `like`.
template <class R>
Poly<R> lift_poly(const Poly<Integer>& a, const R& like) {
  return a.map([&](const Integer& c) { return from_integer_like(like, c); });
}

}  // namespace iwg
