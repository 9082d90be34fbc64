#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace iwg {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Working precision was insufficient to certify a result.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A mathematical check that should hold did not.
class VerificationError : public Error {
 public:
  using Error::Error;
};

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Integer ipow(long base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return base < 0 && (exp & 1) ? Integer(-r) : r;
}

/// p^n as a machine integer; throws if it does not fit in 62 bits.
inline std::int64_t ipow64(long p, int n) {
  std::int64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > (std::int64_t{1} << 62) / p) throw InputError("power exceeds 62 bits");
    r *= p;
  }
  return r;
}

/// Euler totient of p^n.
inline long phi_pn(long p, int n) {
  if (n == 0) return 1;
  return static_cast<long>(ipow64(p, n - 1) * (p - 1));
}

inline Integer binomial(long n, long k) {
  Integer r;
  if (k < 0 || k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// p-adic valuation of a nonzero integer.
inline long vp(const Integer& x, long p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  Integer q = x;
  long v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

/// A rational valuation or +infinity.
class Valuation {
 public:
  Valuation() = default;  // infinity
  Valuation(const Rational& v) : finite_(true), v_(v) { v_.canonicalize(); }
  Valuation(long v) : finite_(true), v_(v) {}

  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return !finite_; }
  const Rational& value() const {
    if (!finite_) throw std::logic_error("infinite valuation has no value");
    return v_;
  }

  std::string str() const { return finite_ ? v_.get_str() : std::string("inf"); }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
  friend bool operator<(const Valuation& a, const Valuation& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
  friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
  friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return Valuation();
    return Valuation(Rational(a.v_ + b.v_));
  }

 private:
  bool finite_ = false;
  Rational v_;
};

inline Valuation vp(const Rational& x, long p) {
  if (x == 0) return Valuation::infinity();
  return Valuation(Rational(vp(x.get_num(), p) - vp(x.get_den(), p)));
}

inline Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

// Ring constants for scalar types. Generic code calls these unqualified so
// that element types carrying their own context (DVR elements, polynomials)
// can supply overloads found by argument-dependent lookup.
inline Integer zero_like(const Integer&) { return 0; }
inline Integer one_like(const Integer&) { return 1; }
inline Integer from_int_like(const Integer&, long v) { return v; }
inline Integer from_integer_like(const Integer&, const Integer& v) { return v; }
inline bool is_zero(const Integer& x) { return x == 0; }

inline Rational zero_like(const Rational&) { return 0; }
inline Rational one_like(const Rational&) { return 1; }
inline Rational from_int_like(const Rational&, long v) { return v; }
inline Rational from_integer_like(const Rational&, const Integer& v) { return Rational(v); }
inline bool is_zero(const Rational& x) { return x == 0; }

inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

/// Parse "a", "a/b" or "-a/b" into a canonical rational.
inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw InputError("not a rational number: '" + s + "'");
  if (r.get_den() == 0) throw InputError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace iwg
