#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "iwg/arith.hpp"
#include "iwg/dvr.hpp"
#include "iwg/poly.hpp"
#include "iwg/smith.hpp"

namespace iwg {

/// Integer polynomial Phi_{p^n}(1 + X), whose root is eps_n = zeta_{p^n} - 1.
inline Poly<Integer> eps_minimal_poly(long p, int n) {
  if (n == 0) return Poly<Integer>({0, 1}, 0);
  long q = static_cast<long>(ipow64(p, n - 1));
  std::vector<Integer> c(static_cast<std::size_t>(phi_pn(p, n)) + 1, 0);
  // sum_{k<p} (1+X)^{kq}
  for (long k = 0; k < p; ++k)
    for (long j = 0; j <= k * q; ++j) c[static_cast<std::size_t>(j)] += binomial(k * q, j);
  return Poly<Integer>(std::move(c), 0);
}

/// Element of Q_p(zeta_{p^n}) (or its analogue over a ring R) in the basis
/// 1, zeta, ..., zeta^{phi-1} with phi = phi(p^n).
template <class R>
class CycElement {
 public:
  CycElement() = default;
  CycElement(long p, int level, std::vector<R> zeta_coeffs) : p_(p), n_(level), c_(std::move(zeta_coeffs)) {
    if (c_.size() != static_cast<std::size_t>(phi_pn(p, level)))
      throw std::invalid_argument("coefficient count does not match the cyclotomic level");
  }

  static CycElement zero(long p, int level, const R& like) {
    return CycElement(p, level, std::vector<R>(static_cast<std::size_t>(phi_pn(p, level)), zero_like(like)));
  }
  static CycElement scalar(long p, int level, const R& s) {
    CycElement x = zero(p, level, s);
    x.c_[0] = s;
    return x;
  }
  static CycElement one(long p, int level, const R& like) { return scalar(p, level, one_like(like)); }

  /// zeta_{p^level}^k for any integer k.
  static CycElement zeta_power(long p, int level, long k, const R& like) {
    long pn = static_cast<long>(ipow64(p, level));
    std::vector<R> ext(static_cast<std::size_t>(pn), zero_like(like));
    ext[static_cast<std::size_t>(((k % pn) + pn) % pn)] = one_like(like);
    return reduce(p, level, std::move(ext));
  }

  /// eps_level = zeta - 1.
  static CycElement eps(long p, int level, const R& like) {
    if (level == 0) return zero(p, 0, like);
    return zeta_power(p, level, 1, like) - one(p, level, like);
  }

  /// Element sum_j b_j eps^j.
  static CycElement from_eps_basis(long p, int level, const std::vector<R>& b) {
    std::size_t phi = static_cast<std::size_t>(phi_pn(p, level));
    if (b.size() != phi) throw std::invalid_argument("coefficient count does not match the cyclotomic level");
    std::vector<R> c(phi, zero_like(b[0]));
    if (level == 0) return CycElement(p, 0, b);
    for (std::size_t j = 0; j < phi; ++j) {
      if (detail::elem_is_zero(b[j])) continue;
      for (std::size_t i = 0; i <= j; ++i) {
        Integer s = binomial(static_cast<long>(j), static_cast<long>(i));
        if ((j - i) & 1) s = -s;
        c[i] = c[i] + from_integer_like(b[j], s) * b[j];
      }
    }
    return CycElement(p, level, std::move(c));
  }

  /// Coefficients in the basis 1, eps, ..., eps^{phi-1}.
  std::vector<R> eps_coeffs() const {
    if (n_ == 0) return c_;
    std::vector<R> b(c_.size(), zero_like(c_[0]));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (detail::elem_is_zero(c_[i])) continue;
      for (std::size_t j = 0; j <= i; ++j)
        b[j] = b[j] + from_integer_like(c_[i], binomial(static_cast<long>(i), static_cast<long>(j))) * c_[i];
    }
    return b;
  }

  long p() const { return p_; }
  int level() const { return n_; }
  std::size_t degree() const { return c_.size(); }
  const std::vector<R>& coeffs() const { return c_; }
  const R& operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!detail::elem_is_zero(x)) return false;
    return true;
  }

  friend CycElement operator+(CycElement a, const CycElement& b) {
    check(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] + b.c_[i];
    return a;
  }
  friend CycElement operator-(CycElement a, const CycElement& b) {
    check(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] - b.c_[i];
    return a;
  }
  CycElement operator-() const {
    CycElement r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  CycElement& operator+=(const CycElement& b) { return *this = *this + b; }
  CycElement& operator-=(const CycElement& b) { return *this = *this - b; }

  friend CycElement operator*(const R& s, CycElement a) {
    for (auto& x : a.c_) x = s * x;
    return a;
  }

  friend CycElement operator*(const CycElement& a, const CycElement& b) {
    check(a, b);
    long pn = static_cast<long>(ipow64(a.p_, a.n_));
    std::vector<R> ext(static_cast<std::size_t>(pn), zero_like(a.c_[0]));
    std::size_t m = a.c_.size();
    for (std::size_t i = 0; i < m; ++i) {
      if (detail::elem_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < m; ++j) {
        std::size_t k = (i + j) % static_cast<std::size_t>(pn);
        ext[k] = ext[k] + a.c_[i] * b.c_[j];
      }
    }
    return reduce(a.p_, a.n_, std::move(ext));
  }

  /// Image under zeta -> zeta^a for a prime to p.
  CycElement galois(long a) const {
    if (n_ == 0) return *this;
    long pn = static_cast<long>(ipow64(p_, n_));
    long am = ((a % pn) + pn) % pn;
    if (am % p_ == 0) throw InputError("Galois exponent must be prime to p");
    std::vector<R> ext(static_cast<std::size_t>(pn), zero_like(c_[0]));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      auto k = static_cast<std::size_t>((static_cast<__int128>(am) * static_cast<long>(i)) % pn);
      ext[k] = ext[k] + c_[i];
    }
    return reduce(p_, n_, std::move(ext));
  }

  /// The same element viewed at a higher level.
  CycElement embed(int level) const {
    if (level < n_) throw InputError("cannot embed into a lower cyclotomic level");
    long step = static_cast<long>(ipow64(p_, level - n_));
    CycElement r = zero(p_, level, c_[0]);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * static_cast<std::size_t>(step)] = c_[i];
    return r;
  }

  friend bool operator==(const CycElement& a, const CycElement& b) { return (a - b).is_zero(); }
  friend bool operator!=(const CycElement& a, const CycElement& b) { return !(a == b); }

 private:
  static void check(const CycElement& a, const CycElement& b) {
    if (a.p_ != b.p_ || a.n_ != b.n_) throw std::invalid_argument("cyclotomic elements at different levels");
  }

  /// Reduce a coefficient vector indexed by exponents mod p^n.
  static CycElement reduce(long p, int n, std::vector<R> ext) {
    std::size_t phi = static_cast<std::size_t>(phi_pn(p, n));
    if (n == 0) {
      ext.resize(1);
      return CycElement(p, 0, std::move(ext));
    }
    std::size_t q = static_cast<std::size_t>(ipow64(p, n - 1));
    // zeta^{phi + s} = -sum_{k=0}^{p-2} zeta^{s + k q}
    for (std::size_t r = phi; r < ext.size(); ++r) {
      if (detail::elem_is_zero(ext[r])) continue;
      std::size_t s = r - phi;
      for (long k = 0; k <= p - 2; ++k) {
        std::size_t t = s + static_cast<std::size_t>(k) * q;
        ext[t] = ext[t] - ext[r];
      }
    }
    ext.resize(phi);
    return CycElement(p, n, std::move(ext));
  }

  long p_ = 0;
  int n_ = 0;
  std::vector<R> c_;
};

/// ord_{eps_n} of sum_j b_j eps_n^j, normalized by ord(eps_n) = 1 and
/// ord(p) = phi(p^n). Infinity for zero.
inline Valuation eps_valuation_of_coeffs(const std::vector<Rational>& b, long p, int n) {
  long phi = phi_pn(p, n);
  Valuation best = Valuation::infinity();
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == 0) continue;
    best = min(best, Valuation(Rational(vp(b[j], p).value() * phi + static_cast<long>(j))));
  }
  return best;
}

inline Valuation eps_valuation_of_coeffs(const std::vector<Integer>& b, long p, int n) {
  return eps_valuation_of_coeffs(std::vector<Rational>(b.begin(), b.end()), p, n);
}

/// Over a DVR base. An unramified base uses the coefficient formula; a
/// ramified base uses the valuation of the norm down to the base.
inline Valuation eps_valuation_of_coeffs(const std::vector<DvrElement>& b, long p, int n) {
  bool all_zero = true;
  for (const auto& x : b) all_zero = all_zero && x.is_zero();
  if (all_zero) return Valuation::infinity();
  const DvrPtr& ring = b[0].ring();
  long phi = phi_pn(p, n);
  if (ring->e() == 1) {
    Valuation best = Valuation::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      best = min(best, Valuation(Rational(b[j].valuation().value() * phi + static_cast<long>(j))));
    }
    return best;
  }
  // Matrix of multiplication on O[eps], columns x * eps^j.
  Poly<DvrElement> psi = lift_poly(eps_minimal_poly(p, n), ring->zero());
  Poly<DvrElement> xb(b, ring->zero());
  auto m = static_cast<std::size_t>(phi);
  DvrMatrix mult = dvr_matrix(ring, m, m);
  Poly<DvrElement> col = xb;
  for (std::size_t j = 0; j < m; ++j) {
    if (j) col = mod_monic(col.shifted(1), psi);
    for (std::size_t i = 0; i < m; ++i) mult(i, j) = col[i];
  }
  auto li = lattice_invariants(mult);
  if (li.rank != static_cast<int>(m))
    throw PrecisionError("norm of a nonzero element vanished at working precision");
  return Valuation(Rational(li.divisor_sum, ring->e()));
}

/// ord_{eps_n}(x) for x at level n.
template <class R>
Valuation eps_valuation(const CycElement<R>& x) {
  if (x.is_zero()) return Valuation::infinity();
  return eps_valuation_of_coeffs(x.eps_coeffs(), x.p(), x.level());
}

/// Rescale a valuation computed at level n to the normalization of level m <= n.
inline Valuation rescale_eps_valuation(const Valuation& v, long p, int n, int m) {
  if (v.is_infinite()) return v;
  return Valuation(Rational(v.value() * phi_pn(p, m) / phi_pn(p, n)));
}

/// A field in the tower: L_m = Q_p(zeta_{p^m}) or k_m, the degree-p^m
/// subextension of the cyclotomic Z_p-extension.
struct TowerField {
  enum class Kind { L, k };
  Kind kind = Kind::L;
  int m = 0;

  static TowerField L(int m) { return {Kind::L, m}; }
  static TowerField k(int m) { return {Kind::k, m}; }
  std::string name() const { return (kind == Kind::L ? "L_" : "k_") + std::to_string(m); }
};

/// Subgroup of (Z/p^N)^x fixing the given field inside L_N.
inline std::vector<long> fixing_subgroup(long p, int N, const TowerField& F) {
  if (F.m < 0 || (F.kind == TowerField::Kind::L && F.m > N) || (F.kind == TowerField::Kind::k && F.m > N - 1))
    throw InputError("field " + F.name() + " is not contained in L_" + std::to_string(N));
  long pn = static_cast<long>(ipow64(p, N));
  std::vector<long> h;
  long pm = static_cast<long>(ipow64(p, F.kind == TowerField::Kind::L ? F.m : F.m + 1));
  for (long a = 1; a < pn; ++a) {
    if (a % p == 0) continue;
    if (F.kind == TowerField::Kind::L) {
      if ((a - 1) % pm == 0) h.push_back(a);
    } else {
      long t = 1;
      for (long i = 0; i < p - 1; ++i) t = static_cast<long>((static_cast<__int128>(t) * a) % pm);
      if (t == 1 % pm) h.push_back(a);
    }
  }
  return h;
}

namespace detail {

inline long mulmod(long a, long b, long m) { return static_cast<long>((static_cast<__int128>(a) * b) % m); }

/// A generator of a cyclic subgroup of (Z/p^N)^x given as a list.
inline long cyclic_generator(const std::vector<long>& h, long pn) {
  for (long g : h) {
    long ord = 1, x = g;
    while (x != 1 % pn) {
      x = mulmod(x, g, pn);
      ++ord;
    }
    if (ord == static_cast<long>(h.size())) return g;
  }
  throw std::logic_error("subgroup is not cyclic");
}

}  // namespace detail

/// True when x (at its level N) is fixed by the subgroup fixing F.
template <class R>
bool lies_in(const CycElement<R>& x, const TowerField& F) {
  long pn = static_cast<long>(ipow64(x.p(), x.level()));
  auto h = fixing_subgroup(x.p(), x.level(), F);
  long g = detail::cyclic_generator(h, pn);
  return x.galois(g) == x;
}

/// Tr_{from/to}(x) for x in `from`, computed inside the ambient level of x.
template <class R>
CycElement<R> trace(const CycElement<R>& x, const TowerField& from, const TowerField& to) {
  long p = x.p();
  int N = x.level();
  long pn = static_cast<long>(ipow64(p, N));
  auto hf = fixing_subgroup(p, N, from);
  auto ht = fixing_subgroup(p, N, to);
  std::vector<char> in_f(static_cast<std::size_t>(pn), 0), in_t(static_cast<std::size_t>(pn), 0);
  for (long a : hf) in_f[static_cast<std::size_t>(a)] = 1;
  for (long a : ht) in_t[static_cast<std::size_t>(a)] = 1;
  for (long a : hf)
    if (!in_t[static_cast<std::size_t>(a)])
      throw InputError(to.name() + " is not a subfield of " + from.name());
  if (!lies_in(x, from)) throw InputError("element does not lie in " + from.name());
  // coset representatives of ht / hf
  std::vector<char> covered(static_cast<std::size_t>(pn), 0);
  CycElement<R> acc = CycElement<R>::zero(p, N, x[0]);
  for (long a : ht) {
    if (covered[static_cast<std::size_t>(a)]) continue;
    for (long b : hf) covered[static_cast<std::size_t>(detail::mulmod(a, b, pn))] = 1;
    acc += x.galois(a);
  }
  if (!lies_in(acc, to)) throw std::logic_error("trace left the target field");
  return acc;
}

}  // namespace iwg
