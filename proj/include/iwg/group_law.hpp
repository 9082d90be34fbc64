#pragma once

#include <string>
#include <vector>

#include "iwg/formal_group.hpp"

namespace iwg {

/// Truncated power series in several variables with rational coefficients,
/// stored densely with mixed-radix exponent codes (radix maxdeg + 1), so the
/// code of a product monomial is the sum of the codes.
class MultiSeries {
 public:
  MultiSeries() = default;
  MultiSeries(int nvars, int maxdeg) : n_(nvars), D_(maxdeg) {
    std::size_t size = 1;
    for (int i = 0; i < n_; ++i) size *= static_cast<std::size_t>(D_ + 1);
    c_.assign(size, Rational(0));
    deg_.assign(size, 0);
    for (std::size_t code = 0; code < size; ++code) {
      std::size_t t = code;
      int d = 0;
      for (int i = 0; i < n_; ++i) {
        d += static_cast<int>(t % static_cast<std::size_t>(D_ + 1));
        t /= static_cast<std::size_t>(D_ + 1);
      }
      deg_[code] = d;
    }
  }

  static MultiSeries variable(int nvars, int maxdeg, int i) {
    MultiSeries s(nvars, maxdeg);
    if (maxdeg >= 1) s.c_[s.code_of_var(i)] = 1;
    return s;
  }

  int nvars() const { return n_; }
  int maxdeg() const { return D_; }
  std::size_t size() const { return c_.size(); }
  int degree_of(std::size_t code) const { return deg_[code]; }

  std::vector<int> exponents(std::size_t code) const {
    std::vector<int> e(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      e[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::size_t>(D_ + 1));
      code /= static_cast<std::size_t>(D_ + 1);
    }
    return e;
  }
  std::size_t code_of(const std::vector<int>& e) const {
    std::size_t code = 0, base = 1;
    for (int i = 0; i < n_; ++i) {
      code += static_cast<std::size_t>(e[static_cast<std::size_t>(i)]) * base;
      base *= static_cast<std::size_t>(D_ + 1);
    }
    return code;
  }
  std::size_t code_of_var(int i) const {
    std::size_t base = 1;
    for (int j = 0; j < i; ++j) base *= static_cast<std::size_t>(D_ + 1);
    return base;
  }

  const Rational& operator[](std::size_t code) const { return c_[code]; }
  Rational& operator[](std::size_t code) { return c_[code]; }

  /// Codes with nonzero coefficient and total degree <= maxdeg.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t code = 0; code < c_.size(); ++code)
      if (deg_[code] <= D_ && c_[code] != 0) s.push_back(code);
    return s;
  }

  friend MultiSeries operator+(MultiSeries a, const MultiSeries& b) {
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend MultiSeries operator-(MultiSeries a, const MultiSeries& b) {
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend MultiSeries operator*(const Rational& s, MultiSeries a) {
    for (auto& x : a.c_) x *= s;
    return a;
  }

  friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
    MultiSeries r(a.n_, a.D_);
    auto sa = a.support(), sb = b.support();
    for (std::size_t i : sa) {
      int da = a.deg_[i];
      for (std::size_t j : sb) {
        if (da + b.deg_[j] > a.D_) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  /// Drop monomials of total degree above d.
  MultiSeries truncated(int d) const {
    MultiSeries r = *this;
    for (std::size_t code = 0; code < c_.size(); ++code)
      if (deg_[code] > d) r.c_[code] = 0;
    return r;
  }

  /// Re-embed into `nvars` variables, sending variable i to variable map[i],
  /// with maximal degree `maxdeg`.
  MultiSeries remap(int nvars, int maxdeg, const std::vector<int>& map) const {
    MultiSeries r(nvars, maxdeg);
    for (std::size_t code : support()) {
      if (deg_[code] > maxdeg) continue;
      auto e = exponents(code);
      std::vector<int> f(static_cast<std::size_t>(nvars), 0);
      for (int i = 0; i < n_; ++i) f[static_cast<std::size_t>(map[static_cast<std::size_t>(i)])] += e[static_cast<std::size_t>(i)];
      r.c_[r.code_of(f)] += c_[code];
    }
    return r;
  }

  friend bool operator==(const MultiSeries& a, const MultiSeries& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t code = 0; code < a.c_.size(); ++code)
      if (a.deg_[code] <= std::min(a.D_, b.D_) && a.c_[code] != b.c_[code]) return false;
    return true;
  }

  Valuation min_valuation(long p) const {
    Valuation v = Valuation::infinity();
    for (std::size_t code : support()) v = min(v, vp(c_[code], p));
    return v;
  }

 private:
  int n_ = 0, D_ = 0;
  std::vector<Rational> c_;
  std::vector<int> deg_;
};

using SeriesVector = std::vector<MultiSeries>;

/// f(args): f in k variables, args k series without constant term.
inline MultiSeries compose(const MultiSeries& f, const SeriesVector& args) {
  if (args.size() != static_cast<std::size_t>(f.nvars())) throw std::invalid_argument("arity mismatch in composition");
  int m = args[0].nvars(), D = args[0].maxdeg();
  std::vector<std::vector<MultiSeries>> pw(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    pw[i].push_back(MultiSeries(m, D));
    pw[i][0][0] = 1;
    for (int k = 1; k <= D; ++k) pw[i].push_back(pw[i].back() * args[i]);
  }
  MultiSeries r(m, D);
  for (std::size_t code : f.support()) {
    if (f.degree_of(code) > D) continue;
    auto e = f.exponents(code);
    MultiSeries term = pw[0][static_cast<std::size_t>(e[0])];
    for (std::size_t i = 1; i < e.size(); ++i)
      if (e[i]) term = term * pw[i][static_cast<std::size_t>(e[i])];
    r = r + f[code] * term;
  }
  return r;
}

inline SeriesVector compose(const SeriesVector& f, const SeriesVector& args) {
  SeriesVector r;
  for (const auto& fi : f) r.push_back(compose(fi, args));
  return r;
}

/// The g-tuple sum_n A_n x^n as series in g variables.
inline SeriesVector to_multiseries(const SeparatedSeries& L, int D) {
  SeriesVector v;
  auto g = static_cast<std::size_t>(L.g);
  for (std::size_t i = 0; i < g; ++i) {
    MultiSeries s(L.g, D);
    for (int n = 1; n <= D && n <= L.degree(); ++n)
      for (std::size_t j = 0; j < g; ++j) {
        std::vector<int> e(g, 0);
        e[j] = n;
        s[s.code_of(e)] += L[static_cast<std::size_t>(n)](i, j);
      }
    v.push_back(s);
  }
  return v;
}

/// Compositional inverse of a g-tuple in g variables with invertible linear part.
inline SeriesVector compositional_inverse(const SeriesVector& L) {
  auto g = L.size();
  int D = L[0].maxdeg();
  MatQ L1(g, g, Rational(0));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) L1(i, j) = L[i][L[i].code_of_var(static_cast<int>(j))];
  MatQ L1inv;
  try {
    L1inv = inverse(L1);
  } catch (const InputError&) {
    throw InputError("series has a non-invertible linear part");
  }
  // nonlinear part N = L - L1 x
  SeriesVector N = L;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) N[i][N[i].code_of_var(static_cast<int>(j))] = 0;
  auto apply = [&](const MatQ& M, const SeriesVector& v) {
    SeriesVector r(g, MultiSeries(static_cast<int>(g), D));
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j)
        if (M(i, j) != 0) r[i] = r[i] + M(i, j) * v[j];
    return r;
  };
  SeriesVector y;
  for (std::size_t i = 0; i < g; ++i) y.push_back(MultiSeries::variable(static_cast<int>(g), D, static_cast<int>(i)));
  // phi <- L1^{-1}(y - N(phi)); each pass fixes one more degree.
  SeriesVector phi = apply(L1inv, y);
  for (int it = 1; it < D; ++it) {
    SeriesVector Nphi = compose(N, phi);
    SeriesVector rhs(g);
    for (std::size_t i = 0; i < g; ++i) rhs[i] = y[i] - Nphi[i];
    phi = apply(L1inv, rhs);
  }
  return phi;
}

struct GroupLawOptions {
  int max_g = 2;
  int max_degree = 12;
  int assoc_degree = 6;
};

struct GroupLawReport {
  SeriesVector law;  // F(x, y) in 2g variables, x first
  bool integral = false;
  Valuation min_coeff_valuation;
  bool linear_term_ok = false;
  bool commutative = false;
  bool associative = false;
  bool homomorphism = false;
  int assoc_degree = 0;

  bool pass() const { return integral && linear_term_ok && commutative && associative && homomorphism; }
};

/// F(x, y) = L^{-1}(L(x) + L(y)) with integrality and group-axiom checks.
inline GroupLawReport group_law(const SeparatedSeries& Lsep, int D, long p, const GroupLawOptions& opt = {}) {
  int g = Lsep.g;
  if (g > opt.max_g) throw InputError("group law limited to g <= " + std::to_string(opt.max_g));
  if (D > opt.max_degree) throw InputError("group law limited to degree <= " + std::to_string(opt.max_degree));
  if (D > Lsep.degree()) throw InputError("logarithm not known to the requested degree");
  GroupLawReport rep;
  SeriesVector L = to_multiseries(Lsep, D);
  SeriesVector Linv = compositional_inverse(L);

  std::vector<int> xmap(static_cast<std::size_t>(g)), ymap(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    xmap[static_cast<std::size_t>(i)] = i;
    ymap[static_cast<std::size_t>(i)] = g + i;
  }
  SeriesVector S(static_cast<std::size_t>(g));
  for (std::size_t i = 0; i < S.size(); ++i) S[i] = L[i].remap(2 * g, D, xmap) + L[i].remap(2 * g, D, ymap);
  rep.law = compose(Linv, S);

  rep.min_coeff_valuation = Valuation::infinity();
  for (const auto& F : rep.law) rep.min_coeff_valuation = min(rep.min_coeff_valuation, F.min_valuation(p));
  rep.integral = rep.min_coeff_valuation >= Valuation(0);

  rep.linear_term_ok = true;
  for (int i = 0; i < g; ++i) {
    const MultiSeries& F = rep.law[static_cast<std::size_t>(i)];
    for (std::size_t code = 0; code < F.size(); ++code) {
      if (F.degree_of(code) != 1 && F.degree_of(code) != 0) continue;
      Rational want = 0;
      if (code == F.code_of_var(i) || code == F.code_of_var(g + i)) want = 1;
      if (F[code] != want) rep.linear_term_ok = false;
    }
  }

  std::vector<int> swap(static_cast<std::size_t>(2 * g));
  for (int i = 0; i < g; ++i) {
    swap[static_cast<std::size_t>(i)] = g + i;
    swap[static_cast<std::size_t>(g + i)] = i;
  }
  rep.commutative = true;
  for (const auto& F : rep.law)
    if (!(F.remap(2 * g, D, swap) == F)) rep.commutative = false;

  // associativity in 3g variables
  int A = std::min(D, opt.assoc_degree);
  rep.assoc_degree = A;
  std::vector<int> m01(static_cast<std::size_t>(2 * g)), m12(static_cast<std::size_t>(2 * g));
  for (int i = 0; i < 2 * g; ++i) {
    m01[static_cast<std::size_t>(i)] = i;
    m12[static_cast<std::size_t>(i)] = g + i;
  }
  SeriesVector Fxy, Fyz, X, Z;
  for (int i = 0; i < g; ++i) {
    Fxy.push_back(rep.law[static_cast<std::size_t>(i)].remap(3 * g, A, m01));
    Fyz.push_back(rep.law[static_cast<std::size_t>(i)].remap(3 * g, A, m12));
    X.push_back(MultiSeries::variable(3 * g, A, i));
    Z.push_back(MultiSeries::variable(3 * g, A, 2 * g + i));
  }
  SeriesVector F2;
  for (const auto& F : rep.law) F2.push_back(F.truncated(A).remap(2 * g, A, m01));
  SeriesVector left_args = Fxy, right_args = X;
  left_args.insert(left_args.end(), Z.begin(), Z.end());
  right_args.insert(right_args.end(), Fyz.begin(), Fyz.end());
  SeriesVector left = compose(F2, left_args), right = compose(F2, right_args);
  rep.associative = true;
  for (int i = 0; i < g; ++i)
    if (!(left[static_cast<std::size_t>(i)] == right[static_cast<std::size_t>(i)])) rep.associative = false;

  // L(F(x,y)) = L(x) + L(y)
  SeriesVector LF = compose(L, rep.law);
  rep.homomorphism = true;
  for (int i = 0; i < g; ++i)
    if (!(LF[static_cast<std::size_t>(i)] == S[static_cast<std::size_t>(i)])) rep.homomorphism = false;
  return rep;
}

struct IsomorphismReport {
  SeriesVector phi;  // ell^{-1} o log_A
  bool integral = false;
  bool intertwines = false;
};

/// Checks that ell^{-1} o log_A is p-integral and carries the group law of
/// log_A to the group law of ell.
inline IsomorphismReport logarithm_isomorphism(const SeparatedSeries& logA, const SeparatedSeries& ell, int D, long p,
                                               const GroupLawOptions& opt = {}) {
  IsomorphismReport rep;
  SeriesVector LA = to_multiseries(logA, D), Le = to_multiseries(ell, D);
  rep.phi = compose(compositional_inverse(Le), LA);
  Valuation v = Valuation::infinity();
  for (const auto& s : rep.phi) v = min(v, s.min_valuation(p));
  rep.integral = v >= Valuation(0);
  int g = logA.g;
  auto FA = group_law(logA, D, p, opt).law, Fe = group_law(ell, D, p, opt).law;
  std::vector<int> xmap(static_cast<std::size_t>(g)), ymap(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    xmap[static_cast<std::size_t>(i)] = i;
    ymap[static_cast<std::size_t>(i)] = g + i;
  }
  SeriesVector phix, phiy;
  for (const auto& s : rep.phi) {
    phix.push_back(s.remap(2 * g, D, xmap));
    phiy.push_back(s.remap(2 * g, D, ymap));
  }
  SeriesVector args = phix;
  args.insert(args.end(), phiy.begin(), phiy.end());
  SeriesVector lhs = compose(rep.phi, FA), rhs = compose(Fe, args);
  rep.intertwines = true;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (!(lhs[i] == rhs[i])) rep.intertwines = false;
  return rep;
}

}  // namespace iwg
