#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "iwg/cyclotomic.hpp"
#include "iwg/dvr.hpp"
#include "iwg/poly.hpp"

namespace iwg {

/// Element of the Iwasawa algebra O[[X]] known through a degree bound:
/// coefficients of X^0 .. X^{bound-1}. Products drop higher terms and record
/// that they did.
template <class R>
class IwasawaPoly {
 public:
  IwasawaPoly() = default;
  IwasawaPoly(Poly<R> f, std::size_t bound, bool truncated = false)
      : f_(std::move(f)), bound_(bound), truncated_(truncated) {
    if (f_.degree() >= static_cast<int>(bound_))
      throw InputError("degree " + std::to_string(f_.degree()) + " exceeds the degree bound " +
                       std::to_string(bound_));
  }
  /// Polynomial known exactly; bound is one past its degree.
  static IwasawaPoly exact(Poly<R> f) {
    std::size_t b = static_cast<std::size_t>(std::max(0, f.degree() + 1));
    return IwasawaPoly(std::move(f), b);
  }

  const Poly<R>& poly() const { return f_; }
  std::size_t bound() const { return bound_; }
  bool truncated() const { return truncated_; }

  friend IwasawaPoly operator+(const IwasawaPoly& a, const IwasawaPoly& b) {
    return IwasawaPoly(a.f_ + b.f_, std::max(a.bound_, b.bound_), a.truncated_ || b.truncated_);
  }
  friend IwasawaPoly operator-(const IwasawaPoly& a, const IwasawaPoly& b) {
    return IwasawaPoly(a.f_ - b.f_, std::max(a.bound_, b.bound_), a.truncated_ || b.truncated_);
  }
  friend IwasawaPoly operator*(const IwasawaPoly& a, const IwasawaPoly& b) {
    std::size_t bound = std::max(a.bound_, b.bound_);
    Poly<R> full = a.f_ * b.f_;
    bool dropped = full.degree() >= static_cast<int>(bound);
    return IwasawaPoly(full.truncated(bound), bound, a.truncated_ || b.truncated_ || dropped);
  }

 private:
  Poly<R> f_;
  std::size_t bound_ = 0;
  bool truncated_ = false;
};

/// omega_n = (1+X)^{p^n} - 1.
inline Poly<Integer> omega(long p, int n) {
  long q = static_cast<long>(ipow64(p, n));
  std::vector<Integer> c(static_cast<std::size_t>(q) + 1);
  for (long j = 1; j <= q; ++j) c[static_cast<std::size_t>(j)] = binomial(q, j);
  return Poly<Integer>(std::move(c), 0);
}

/// Phi_n = Phi_{p^n}(1+X) for n >= 1 and Phi_0 = X, so omega_n = Phi_n omega_{n-1}.
inline Poly<Integer> cyclotomic_phi(long p, int n) { return eps_minimal_poly(p, n); }

/// Coefficients of F(eps_n) in the basis 1, eps_n, ..., eps_n^{phi-1}.
template <class R>
std::vector<R> eps_coefficients(const Poly<R>& F, long p, int n) {
  Poly<R> psi = lift_poly(cyclotomic_phi(p, n), F.zero());
  Poly<R> r = mod_monic(F, psi);
  std::vector<R> b(static_cast<std::size_t>(phi_pn(p, n)), F.zero());
  for (std::size_t j = 0; j < b.size(); ++j) b[j] = r[j];
  return b;
}

/// F(eps_n) as an element of the level-n cyclotomic field.
template <class R>
CycElement<R> evaluate_at_eps(const Poly<R>& F, long p, int n) {
  return CycElement<R>::from_eps_basis(p, n, eps_coefficients(F, p, n));
}

/// ord_{eps_n} F(eps_n), with ord(p) = phi(p^n).
template <class R>
Valuation ord_at_eps(const Poly<R>& F, long p, int n) {
  return eps_valuation_of_coeffs(eps_coefficients(F, p, n), p, n);
}

inline Valuation coeff_valuation(const Integer& x, long p) {
  return x == 0 ? Valuation::infinity() : Valuation(vp(x, p));
}
inline Valuation coeff_valuation(const Rational& x, long p) { return vp(x, p); }
inline Valuation coeff_valuation(const DvrElement& x, long) { return x.valuation(); }

struct MuLambda {
  Rational mu;  // p-normalized: mu = 1 for F = p
  long lambda = 0;
};

/// mu = least coefficient valuation, lambda = first index attaining it.
template <class R>
MuLambda mu_lambda(const IwasawaPoly<R>& F, long p) {
  const auto& c = F.poly().coeffs();
  if (c.empty()) throw InputError("mu and lambda are undefined for the zero series");
  Valuation best = Valuation::infinity();
  long at = -1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Valuation v = coeff_valuation(c[i], p);
    if (v < best) {
      best = v;
      at = static_cast<long>(i);
    }
  }
  if (F.truncated() && best > Valuation(0))
    throw PrecisionError("truncated series: minimal coefficient valuation is not certified");
  return {best.value(), at};
}

/// Reduction modulo omega_n.
template <class R>
Poly<R> reduce_mod_omega(const Poly<R>& F, long p, int n) {
  return mod_monic(F, lift_poly(omega(p, n), F.zero()));
}

/// The norm-compatible lift Lambda/omega_{n-1} -> Lambda/omega_n, F -> Phi_n F mod omega_n.
template <class R>
Poly<R> norm_lift(const Poly<R>& F, long p, int n) {
  if (n < 1) throw InputError("norm lift needs n >= 1");
  Poly<R> base = reduce_mod_omega(F, p, n - 1);
  return reduce_mod_omega(lift_poly(cyclotomic_phi(p, n), F.zero()) * base, p, n);
}

/// Substitute X -> X - 1 (X-basis to Y = 1+X basis).
template <class R>
Poly<R> to_shifted(const Poly<R>& F) {
  R one = one_like(F.zero());
  return F.compose(Poly<R>(std::vector<R>{-one, one}, F.zero()));
}

/// Substitute Y -> X + 1 (back to the X-basis).
template <class R>
Poly<R> from_shifted(const Poly<R>& G) {
  R one = one_like(G.zero());
  return G.compose(Poly<R>(std::vector<R>{one, one}, G.zero()));
}

}  // namespace iwg
