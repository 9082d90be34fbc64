#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "iwg/iwasawa.hpp"
#include "iwg/smith.hpp"

namespace iwg {

/// A finitely presented O-module O^m / (column span of `relations`).
struct ModulePresentation {
  int level = 0;
  DvrMatrix relations;  // m x r

  std::size_t generators() const { return relations.rows(); }
};

/// Projective system M_a <- M_{a+1} <- ... <- M_b of presented modules.
/// transition(n) is the m_{n-1} x m_n matrix of pi_n : M_n -> M_{n-1}.
class ProjectiveSystem {
 public:
  explicit ProjectiveSystem(DvrPtr ring) : ring_(std::move(ring)) {}

  const DvrPtr& ring() const { return ring_; }

  /// Adds the next level. The first call fixes the bottom level; later calls
  /// must supply the transition to the previous level.
  void add_level(int n, DvrMatrix relations, std::optional<DvrMatrix> transition = std::nullopt) {
    if (relations.rows() == 0) throw InputError("a presentation needs at least one generator");
    if (relations.cols() == 0) relations = dvr_matrix(ring_, relations.rows(), 1);
    if (levels_.empty()) {
      if (transition) throw InputError("bottom level takes no transition");
    } else {
      if (n != levels_.back().level + 1) throw InputError("levels must be consecutive");
      if (!transition) throw InputError("transition to level " + std::to_string(n - 1) + " missing");
      const auto& prev = levels_.back().relations;
      if (transition->rows() != prev.rows() || transition->cols() != relations.rows())
        throw InputError("transition at level " + std::to_string(n) + " has the wrong shape");
      if (!lattice_contains(prev, (*transition) * relations))
        throw InputError("transition at level " + std::to_string(n) + " does not respect the relations");
      transitions_[n] = *transition;
    }
    levels_.push_back({n, std::move(relations)});
  }

  int first() const { return levels_.front().level; }
  int last() const { return levels_.back().level; }
  bool has(int n) const { return !levels_.empty() && n >= first() && n <= last(); }
  const ModulePresentation& at(int n) const {
    if (!has(n)) throw InputError("level " + std::to_string(n) + " not in the system");
    return levels_[static_cast<std::size_t>(n - first())];
  }
  const DvrMatrix& transition(int n) const {
    auto it = transitions_.find(n);
    if (it == transitions_.end()) throw InputError("no transition into level " + std::to_string(n - 1));
    return it->second;
  }

 private:
  DvrPtr ring_;
  std::vector<ModulePresentation> levels_;
  std::map<int, DvrMatrix> transitions_;
};

struct NablaResult {
  int n = 0;
  bool defined = false;
  long value = 0;
  long ker_length = 0;
  long coker_length = 0;
  long lower_rank = 0;
  bool certified = true;
  std::string reason;
};

namespace detail {

inline DvrMatrix first_rows(const DvrMatrix& m, std::size_t count) { return select_rows(m, 0, count); }

inline DvrMatrix negated(DvrMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return m;
}

/// Generators of {x in O^m : T x in span(B)}.
inline DvrMatrix preimage_lattice(const DvrMatrix& T, const DvrMatrix& B) {
  DvrMatrix K = kernel_basis(hconcat(T, negated(B)));
  if (K.cols() == 0) return dvr_matrix(T(0, 0).ring(), T.cols(), 1);
  return first_rows(K, T.cols());
}

inline bool certified_invariants(const DvrMatrix& m) { return smith_normal_form(m, false).certified; }

}  // namespace detail

/// nabla M_n = len ker pi_n - len coker pi_n + rank M_{n-1}, from the presentations.
inline NablaResult nabla_direct(const ProjectiveSystem& S, int n) {
  NablaResult r;
  r.n = n;
  const DvrMatrix& A = S.at(n).relations;
  const DvrMatrix& B = S.at(n - 1).relations;
  const DvrMatrix& P = S.transition(n);
  std::size_t mp = B.rows();

  DvrMatrix PB = hconcat(P, B);
  auto co = lattice_invariants(PB);
  r.certified = detail::certified_invariants(PB) && detail::certified_invariants(A) && detail::certified_invariants(B);
  auto lb = lattice_invariants(B);
  r.lower_rank = static_cast<long>(mp) - lb.rank;
  if (co.rank != static_cast<int>(mp)) {
    r.reason = "cokernel is infinite";
    return r;
  }
  r.coker_length = co.divisor_sum;

  DvrMatrix G = detail::preimage_lattice(P, B);
  auto la = lattice_invariants(A), lg = lattice_invariants(G);
  if (la.rank != lg.rank) {
    r.reason = "kernel is infinite";
    return r;
  }
  r.ker_length = la.divisor_sum - lg.divisor_sum;
  r.value = r.ker_length - r.coker_length + r.lower_rank;
  r.defined = true;
  return r;
}

/// nabla N_n = e * ord_{eps_n} F(eps_n); undefined when F(eps_n) vanishes at working precision.
inline NablaResult nabla_char_series(const IwasawaPoly<DvrElement>& F, int n) {
  NablaResult r;
  r.n = n;
  const DvrPtr& ring = F.poly().zero().ring();
  Valuation v;
  try {
    v = ord_at_eps(F.poly(), ring->p(), n);
  } catch (const PrecisionError&) {
    r.reason = "F(eps_n) indistinguishable from zero";
    r.certified = false;
    return r;
  }
  if (v.is_infinite()) {
    r.reason = "F(eps_n) indistinguishable from zero";
    return r;
  }
  Rational val = v.value() * ring->e();
  if (val.get_den() != 1) throw VerificationError("e * ord_{eps_n} F(eps_n) = " + v.str() + " * e is not an integer");
  r.value = val.get_num().get_si();
  r.defined = true;
  return r;
}

/// True when F(eps_k) is nonzero for every 0 <= k <= n (eps_0 = 0), the
/// range where the analytic formula computes nabla N_n.
inline bool char_series_admissible(const IwasawaPoly<DvrElement>& F, int n) {
  long p = F.poly().zero().ring()->p();
  for (int k = 0; k <= n; ++k) {
    try {
      if (ord_at_eps(F.poly(), p, k).is_infinite()) return false;
    } catch (const PrecisionError&) {
      return false;
    }
  }
  return true;
}

/// Matrix of multiplication by G (in the variable Y = 1 + X) on O[Y]/(Y^{p^n} - 1), basis Y^j.
inline DvrMatrix cyclic_multiplication(const Poly<DvrElement>& G, long p, int n) {
  const DvrPtr& ring = G.zero().ring();
  auto q = static_cast<std::size_t>(ipow64(p, n));
  DvrMatrix m = dvr_matrix(ring, q, q);
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < G.size(); ++i) m((i + j) % q, j) += G[i];
  return m;
}

/// Natural projection O[Y]/(Y^{p^n} - 1) -> O[Y]/(Y^{p^{n-1}} - 1).
inline DvrMatrix cyclic_projection(const DvrPtr& ring, long p, int n) {
  auto q = static_cast<std::size_t>(ipow64(p, n)), q1 = static_cast<std::size_t>(ipow64(p, n - 1));
  DvrMatrix m = dvr_matrix(ring, q1, q);
  for (std::size_t j = 0; j < q; ++j) m(j % q1, j) = ring->one();
  return m;
}

/// The system N_n = O[X]/(F, omega_n) for levels nmin..nmax, presented on the basis (1+X)^j.
inline ProjectiveSystem char_series_system(const IwasawaPoly<DvrElement>& F, int nmin, int nmax) {
  if (nmin < 0 || nmax < nmin) throw InputError("bad level range");
  const DvrPtr& ring = F.poly().zero().ring();
  long p = ring->p();
  Poly<DvrElement> G = to_shifted(F.poly());
  ProjectiveSystem S(ring);
  for (int n = nmin; n <= nmax; ++n) {
    DvrMatrix rel = cyclic_multiplication(G, p, n);
    if (n == nmin)
      S.add_level(n, rel);
    else
      S.add_level(n, rel, cyclic_projection(ring, p, n));
  }
  return S;
}

/// Brute-force nabla N_n from the presentation of O[X]/(F, omega_n) and the definition.
inline NablaResult nabla_oracle(const IwasawaPoly<DvrElement>& F, int n) {
  if (n < 1) throw InputError("nabla needs n >= 1");
  return nabla_direct(char_series_system(F, n - 1, n), n);
}

struct AsymptoticRow {
  int n = 0;
  NablaResult analytic;
  long formula = 0;  // e*lambda + phi(p^n)*mu, mu in uniformizer units
  bool agree = false;
};

struct AsymptoticTable {
  MuLambda invariants;  // mu normalized by v(p) = 1
  long mu_uniformizer = 0;
  std::vector<AsymptoticRow> rows;
  std::optional<int> threshold;  // empirically observed n_0
};

/// e*ord_{eps_n} F(eps_n) against e*lambda + phi(p^n)*mu for n in [nmin, nmax].
/// The threshold is the start of the final run of agreements, reported only
/// when that run has at least two levels.
inline AsymptoticTable nabla_asymptotic(const IwasawaPoly<DvrElement>& F, int nmin, int nmax) {
  if (nmin < 1 || nmax < nmin) throw InputError("bad level range");
  const DvrPtr& ring = F.poly().zero().ring();
  long p = ring->p(), e = ring->e();
  AsymptoticTable t;
  t.invariants = mu_lambda(F, p);
  Rational mu_pi = t.invariants.mu * e;
  if (mu_pi.get_den() != 1) throw VerificationError("mu is not integral in uniformizer units");
  t.mu_uniformizer = mu_pi.get_num().get_si();
  for (int n = nmin; n <= nmax; ++n) {
    AsymptoticRow row;
    row.n = n;
    row.analytic = nabla_char_series(F, n);
    row.formula = e * t.invariants.lambda + phi_pn(p, n) * t.mu_uniformizer;
    row.agree = row.analytic.defined && row.analytic.value == row.formula;
    t.rows.push_back(row);
  }
  std::size_t k = t.rows.size();
  while (k > 0 && t.rows[k - 1].agree) --k;
  if (t.rows.size() - k >= 2) t.threshold = t.rows[k].n;
  return t;
}

/// Level-wise data of a short exact sequence 0 -> S' -> S -> S'' -> 0:
/// inj[n] is m_n x m'_n and surj[n] is m''_n x m_n.
struct ExactSequenceMaps {
  std::map<int, DvrMatrix> inj, surj;
};

struct AdditivityRow {
  int n = 0;
  NablaResult sub, mid, quot;
  bool additive = false;
};

struct AdditivityReport {
  bool exact = true;
  std::string failure;
  std::vector<AdditivityRow> rows;
  bool pass() const {
    if (!exact || rows.empty()) return false;
    for (const auto& r : rows)
      if (!r.additive) return false;
    return true;
  }
};

namespace detail {

/// Exactness of 0 -> M' -> M -> M'' -> 0 at one level; empty string when exact.
inline std::string exactness_failure(const DvrMatrix& A1, const DvrMatrix& A, const DvrMatrix& A2, const DvrMatrix& i,
                                     const DvrMatrix& s) {
  if (i.rows() != A.rows() || i.cols() != A1.rows() || s.rows() != A2.rows() || s.cols() != A.rows())
    return "map shapes do not match the presentations";
  if (!lattice_contains(A, i * A1)) return "injection is not well defined";
  if (!lattice_contains(A2, s * A)) return "surjection is not well defined";
  auto onto = lattice_invariants(hconcat(s, A2));
  if (onto.rank != static_cast<int>(A2.rows()) || onto.divisor_sum != 0) return "second map is not surjective";
  if (!lattice_contains(A2, s * i)) return "composite is not zero";
  if (!lattice_contains(hconcat(i, A), preimage_lattice(s, A2))) return "sequence is not exact in the middle";
  if (!lattice_contains(A1, preimage_lattice(i, A))) return "first map is not injective";
  return {};
}

}  // namespace detail

/// Checks exactness at every level in [nmin, nmax] (including compatibility
/// with transitions) and nabla M_n = nabla M'_n + nabla M''_n for n in (nmin, nmax].
inline AdditivityReport nabla_additivity_check(const ProjectiveSystem& S1, const ProjectiveSystem& S,
                                               const ProjectiveSystem& S2, const ExactSequenceMaps& maps, int nmin,
                                               int nmax) {
  AdditivityReport rep;
  auto fail = [&](int n, const std::string& why) {
    rep.exact = false;
    rep.failure = "level " + std::to_string(n) + ": " + why;
    return rep;
  };
  for (int n = nmin; n <= nmax; ++n) {
    if (!maps.inj.count(n) || !maps.surj.count(n)) return fail(n, "maps missing");
    const DvrMatrix &i = maps.inj.at(n), &s = maps.surj.at(n);
    std::string why = detail::exactness_failure(S1.at(n).relations, S.at(n).relations, S2.at(n).relations, i, s);
    if (!why.empty()) return fail(n, why);
    if (n > nmin) {
      const DvrMatrix &i0 = maps.inj.at(n - 1), &s0 = maps.surj.at(n - 1);
      if (!lattice_contains(S.at(n - 1).relations, i0 * S1.transition(n) - S.transition(n) * i))
        return fail(n, "injection does not commute with transitions");
      if (!lattice_contains(S2.at(n - 1).relations, s0 * S.transition(n) - S2.transition(n) * s))
        return fail(n, "surjection does not commute with transitions");
    }
  }
  for (int n = nmin + 1; n <= nmax; ++n) {
    AdditivityRow row;
    row.n = n;
    row.sub = nabla_direct(S1, n);
    row.mid = nabla_direct(S, n);
    row.quot = nabla_direct(S2, n);
    row.additive = row.sub.defined && row.mid.defined && row.quot.defined &&
                   row.mid.value == row.sub.value + row.quot.value;
    rep.rows.push_back(row);
  }
  return rep;
}

/// Levelwise direct sum of two systems over the same ring and levels.
inline ProjectiveSystem direct_sum(const ProjectiveSystem& a, const ProjectiveSystem& b) {
  if (a.first() != b.first() || a.last() != b.last()) throw InputError("systems cover different levels");
  const DvrPtr& ring = a.ring();
  auto block = [&](const DvrMatrix& x, const DvrMatrix& y) {
    DvrMatrix m = dvr_matrix(ring, x.rows() + y.rows(), x.cols() + y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) m(i, j) = x(i, j);
    for (std::size_t i = 0; i < y.rows(); ++i)
      for (std::size_t j = 0; j < y.cols(); ++j) m(x.rows() + i, x.cols() + j) = y(i, j);
    return m;
  };
  ProjectiveSystem s(ring);
  for (int n = a.first(); n <= a.last(); ++n) {
    DvrMatrix rel = block(a.at(n).relations, b.at(n).relations);
    if (n == a.first())
      s.add_level(n, rel);
    else
      s.add_level(n, rel, block(a.transition(n), b.transition(n)));
  }
  return s;
}

/// Random characteristic series pi^mu * (distinguished polynomial of degree
/// lambda) * (unit of degree <= 2), with mu <= mu_max and lambda <= lambda_max
/// (mu counted in uniformizer units).
inline IwasawaPoly<DvrElement> random_char_series(const DvrPtr& ring, std::mt19937_64& rng, int mu_max,
                                                  int lambda_max) {
  std::uniform_int_distribution<long> digit(0, ring->p() - 1);
  auto random_element = [&] {
    DvrElement x = ring->zero(), pk = ring->one();
    for (int i = 0; i < 4; ++i, pk *= ring->uniformizer()) x += ring->from_int(digit(rng)) * pk;
    return x;
  };
  auto random_unit = [&] {
    DvrElement x = random_element();
    while (!x.is_unit()) x += ring->one();
    return x;
  };
  int mu = std::uniform_int_distribution<int>(0, mu_max)(rng);
  int lambda = std::uniform_int_distribution<int>(0, lambda_max)(rng);
  std::vector<DvrElement> d(static_cast<std::size_t>(lambda) + 1, ring->zero());
  for (int i = 0; i < lambda; ++i) d[static_cast<std::size_t>(i)] = ring->uniformizer() * random_element();
  while (lambda > 0 && d[0].is_zero()) d[0] = ring->uniformizer() * random_element();
  d.back() = ring->one();
  std::vector<DvrElement> u{random_unit(), random_element(), random_element()};
  DvrElement scale = ring->one();
  for (int i = 0; i < mu; ++i) scale *= ring->uniformizer();
  Poly<DvrElement> F = scale * (Poly<DvrElement>(d, ring->zero()) * Poly<DvrElement>(u, ring->zero()));
  return IwasawaPoly<DvrElement>::exact(F);
}

}  // namespace iwg
