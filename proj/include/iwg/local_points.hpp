#pragma once

#include <string>
#include <vector>

#include "iwg/cyclotomic.hpp"
#include "iwg/formal_group.hpp"

namespace iwg {

using CycQ = CycElement<Rational>;
/// A g-vector of elements of the ambient cyclotomic field.
using CycVector = std::vector<CycQ>;

inline CycVector operator+(CycVector a, const CycVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline CycVector operator-(CycVector a, const CycVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline CycVector operator*(const MatQ& m, const CycVector& v) {
  CycVector r;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    CycQ acc = CycQ::zero(v[0].p(), v[0].level(), Rational(0));
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) acc += m(i, j) * v[j];
    r.push_back(acc);
  }
  return r;
}

inline CycVector trace(const CycVector& v, const TowerField& from, const TowerField& to) {
  CycVector r;
  for (const auto& x : v) r.push_back(trace(x, from, to));
  return r;
}

/// p-adic valuation (ord(p) = 1) of a g-vector: minimum over coordinates.
inline Valuation vector_valuation(const CycVector& v) {
  Valuation best = Valuation::infinity();
  for (const auto& x : v) {
    Valuation w = eps_valuation(x);
    if (!w.is_infinite()) w = Valuation(Rational(w.value() / phi_pn(x.p(), x.level())));
    best = min(best, w);
  }
  return best;
}

/// A logarithm value in separated form: constant vector plus sum of
/// (vector coefficient) * e_m over levels m.
struct EllValue {
  std::vector<Rational> constant;
  std::vector<std::pair<int, std::vector<Rational>>> terms;  // (m, coefficient of e_m)
  CycVector flat;                                            // expanded at the ambient level
};

inline std::vector<Rational> mat_vec(const MatQ& m, const std::vector<Rational>& v) {
  std::vector<Rational> r(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

/// The local point system c_n, d_n of the formal group, handled through
/// logarithm values inside Q_p(zeta_{p^N}).
class LocalPoints {
 public:
  LocalPoints(EulerData E, int ambient) : E_(std::move(E)), N_(ambient) {
    E_.validate();
    if (N_ < 1) throw InputError("ambient level must be positive");
    phi_pn(E_.p, N_);  // size check
    g_ = static_cast<std::size_t>(E_.g);
    cp_ = to_rational(E_.cp());
    x_ = xk_sequence(E_.cp(), E_.p, N_);
  }

  int ambient() const { return N_; }
  const EulerData& data() const { return E_; }
  const MatQ& cp() const { return cp_; }

  /// ell(eps) = (1 + p - C_p)^{-1} p u_1.
  std::vector<Rational> epsilon_log() const {
    MatQ m = MatQ::identity(g_, Rational(0));
    m = Rational(1 + E_.p) * m - cp_;
    std::vector<Rational> pu(g_);
    for (std::size_t i = 0; i < g_; ++i) pu[i] = Rational(E_.p * E_.u1[i]);
    return mat_vec(inverse(m), pu);
  }

  /// e_m = zeta_{p^m} - 1 at the ambient level (e_0 = 0).
  CycQ pi_point(int m) const {
    if (m > N_) throw InputError("level exceeds the ambient field");
    return CycQ::eps(E_.p, m, Rational(0)).embed(N_);
  }

  /// ell(c_n) = ell(eps) + sum_{k<n} (x_k u_1) e_{n-k}.
  EllValue ell_c(int n) const {
    if (n < 0 || n > N_) throw InputError("ell(c_n) needs 0 <= n <= ambient level");
    EllValue v;
    v.constant = epsilon_log();
    std::vector<Rational> u(g_);
    for (std::size_t i = 0; i < g_; ++i) u[i] = E_.u1[i];
    for (int k = 0; k < n; ++k) v.terms.emplace_back(n - k, mat_vec(x_[static_cast<std::size_t>(k)], u));
    v.flat = expand(v);
    return v;
  }

  CycVector expand(const EllValue& v) const {
    CycVector r;
    for (std::size_t i = 0; i < g_; ++i) r.push_back(CycQ::scalar(E_.p, N_, v.constant[i]));
    for (const auto& [m, c] : v.terms) {
      CycQ e = pi_point(m);
      for (std::size_t i = 0; i < g_; ++i)
        if (c[i] != 0) r[i] += c[i] * e;
    }
    return r;
  }

  /// ell(d_n) = Tr_{L_{n+1}/k_n} ell(c_{n+1}).
  CycVector ell_d(int n) const {
    if (n + 1 > N_) throw InputError("ell(d_n) needs ambient level >= n+1");
    return trace(ell_c(n + 1).flat, TowerField::L(n + 1), TowerField::k(n));
  }

 private:
  EulerData E_;
  int N_;
  std::size_t g_;
  MatQ cp_;
  std::vector<MatQ> x_;
};

struct QSystemRow {
  std::string condition;  // "trace-c", "(i)", "(ii)", "(iii)"
  int n = 0;
  Valuation residual;
  bool pass = false;
  std::string note;
};

struct QSystemReport {
  std::vector<QSystemRow> rows;
  long precision = 0;
  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

/// Verifies the trace relations of the point system at the logarithm level,
/// for levels up to nmax, with the ambient field at level nmax + 2.
/// `precision` is the p-adic valuation the residuals must reach.
inline QSystemReport verify_q_system(const EulerData& E, int nmax, long precision) {
  if (nmax < 1) throw InputError("nmax must be at least 1");
  LocalPoints lp(E, nmax + 2);
  QSystemReport rep;
  rep.precision = precision;
  const MatQ& C = lp.cp();
  auto g = C.rows();
  MatQ I = MatQ::identity(g, Rational(0));
  int N = lp.ambient();
  auto row = [&](std::string cond, int n, const CycVector& lhs, const CycVector& rhs) {
    QSystemRow r;
    r.condition = std::move(cond);
    r.n = n;
    r.residual = vector_valuation(lhs - rhs);
    r.pass = r.residual >= Valuation(precision);
    rep.rows.push_back(r);
    return rep.rows.size() - 1;
  };

  std::vector<CycVector> c;
  for (int n = 0; n <= N; ++n) c.push_back(lp.ell_c(n).flat);
  row("trace-c", 1, trace(c[1], TowerField::L(1), TowerField::L(0)), (C - Rational(2) * I) * c[0]);
  for (int n = 2; n <= N; ++n)
    row("trace-c", n, trace(c[static_cast<std::size_t>(n)], TowerField::L(n), TowerField::L(n - 1)),
        C * c[static_cast<std::size_t>(n - 1)] - c[static_cast<std::size_t>(n - 2)]);

  std::vector<CycVector> d;
  for (int n = 0; n <= nmax + 1; ++n) d.push_back(lp.ell_d(n));

  // generator of the value lattice: ell(eps)
  Valuation v0 = vector_valuation(c[0]);
  auto primitive = [&](const CycVector& v) { return vector_valuation(v) < v0 + Valuation(1); };

  std::size_t i0 = row("(i)", 0, d[0], (C - Rational(2) * I) * c[0]);
  if (!primitive(d[0])) {
    rep.rows[i0].pass = false;
    rep.rows[i0].note = "inconclusive: d_0 not shown to lie outside p times the lattice";
  }

  MatQ coef = C - inverse(C - Rational(2) * I) * (Rational(E.p - 1) * I);
  CycVector tr1 = trace(d[1], TowerField::k(1), TowerField::k(0));
  std::size_t i2 = row("(ii)", 1, tr1, coef * d[0]);
  if (!primitive(tr1)) {
    rep.rows[i2].pass = false;
    rep.rows[i2].note = "inconclusive: trace of d_1 not shown to be primitive";
  }

  for (int n = 1; n <= nmax; ++n)
    row("(iii)", n, trace(d[static_cast<std::size_t>(n + 1)], TowerField::k(n + 1), TowerField::k(n)),
        C * d[static_cast<std::size_t>(n)] - d[static_cast<std::size_t>(n - 1)]);
  return rep;
}

}  // namespace iwg
