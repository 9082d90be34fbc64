#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "iwg/arith.hpp"

namespace iwg {

enum class Sign { sharp, flat };

inline std::string sign_name(Sign s) { return s == Sign::sharp ? "sharp" : "flat"; }

/// Parameters of the growth law. r_p empty means a_p = 0.
struct GrowthParams {
  long p = 3;
  int d = 1;
  std::optional<Rational> r_p;
  long e_v = 1;
  long f_v = 1;
  std::vector<Sign> odd_signs, even_signs;
  Rational mu = 0;
  long lambda = 0;
  long r_inf = 0;
  int n_min = 1;
  int n_max = 1;
  std::optional<Integer> e_baseline;  // e_{n_min - 1}

  void validate() const {
    if (p == 2 || !is_prime(p)) throw InputError("p must be an odd prime");
    if (d < 1) throw InputError("d must be positive");
    if (r_p && *r_p <= 0) throw InputError("r_p must be positive");
    if (r_p && *r_p * e_v < 1) throw InputError("r_p must be at least 1/e_v");
    if (e_v < 1) throw InputError("e_v must be positive");
    if (f_v < 1) throw InputError("f_v must be positive");
    if (odd_signs.size() != static_cast<std::size_t>(d)) throw InputError("signs.odd must have d entries");
    if (even_signs.size() != static_cast<std::size_t>(d)) throw InputError("signs.even must have d entries");
    if (mu < 0) throw InputError("mu must be nonnegative");
    if (lambda < 0) throw InputError("lambda must be nonnegative");
    if (r_inf < 0) throw InputError("r_inf must be nonnegative");
    if (n_min < 1 || n_max < n_min) throw InputError("need 1 <= n_min <= n_max");
  }

  const std::vector<Sign>& signs_for(int n) const { return n % 2 ? odd_signs : even_signs; }
};

/// sum_{k=1}^{top} p^{-(2k - shift)}
inline Rational inverse_power_sum(long p, int top, int shift) {
  Rational s = 0;
  for (int k = 1; k <= top; ++k) s += Rational(1, ipow(p, 2 * k - shift));
  return s;
}

/// F_v(s, n) for a_sharp sharp and a_flat flat signs. With a_p = 0 the terms
/// carrying r_p are absent and each of the d primes contributes the remaining sum.
inline Rational f_v(int a_sharp, int a_flat, int n, long p, const std::optional<Rational>& r_p) {
  if (n < 1) throw InputError("F_v needs n >= 1");
  if (a_sharp < 0 || a_flat < 0) throw InputError("sign counts must be nonnegative");
  Rational phi = phi_pn(p, n);
  if (!r_p) {
    int d = a_sharp + a_flat;
    Rational s = n % 2 ? inverse_power_sum(p, (n - 1) / 2, 1) : inverse_power_sum(p, n / 2, 1);
    return Rational(phi * d * s);
  }
  if (n % 2) {
    int top = (n - 1) / 2;
    return Rational(phi * (a_sharp * (*r_p + inverse_power_sum(p, top, 0)) + a_flat * inverse_power_sum(p, top, 1)));
  }
  return Rational(phi * (a_sharp * inverse_power_sum(p, n / 2, 1) + a_flat * (*r_p + inverse_power_sum(p, n / 2 - 1, 0))));
}

inline std::pair<int, int> sign_counts(const std::vector<Sign>& s) {
  int a = 0;
  for (Sign x : s) a += x == Sign::sharp;
  return {a, static_cast<int>(s.size()) - a};
}

inline Integer require_integer(const Rational& x, const std::string& what) {
  if (x.get_den() != 1) throw VerificationError(what + " = " + x.get_str() + " is not an integer");
  return x.get_num();
}

/// nabla X_v = F_v + e_v lambda + phi(p^n) mu, asserted integral.
inline Integer nabla_x(const GrowthParams& g, int n) {
  auto [a, b] = sign_counts(g.signs_for(n));
  Rational total = f_v(a, b, n, g.p, g.r_p) + Rational(g.e_v * g.lambda) + g.mu * phi_pn(g.p, n);
  return require_integer(total, "non-integral total nabla_X at n=" + std::to_string(n));
}

/// e_n - e_{n-1} = nabla X_v - r_inf.
inline Integer sha_delta(const GrowthParams& g, int n) { return nabla_x(g, n) - g.r_inf; }

struct GrowthRow {
  int n = 0;
  std::string parity;
  int a_sharp = 0, a_flat = 0;
  Rational F_v;
  Integer nabla_X;
  Integer delta_e;
  std::optional<Integer> cumulative_e;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  std::vector<std::string> warnings;
};

inline GrowthReport emit_growth_table(const GrowthParams& g) {
  g.validate();
  GrowthReport rep;
  std::optional<Integer> running = g.e_baseline;
  bool negative_delta = false, negative_total = false;
  for (int n = g.n_min; n <= g.n_max; ++n) {
    GrowthRow r;
    r.n = n;
    r.parity = n % 2 ? "odd" : "even";
    std::tie(r.a_sharp, r.a_flat) = sign_counts(g.signs_for(n));
    r.F_v = f_v(r.a_sharp, r.a_flat, n, g.p, g.r_p);
    r.nabla_X = nabla_x(g, n);
    r.delta_e = r.nabla_X - g.r_inf;
    negative_delta = negative_delta || r.delta_e < 0;
    if (running) {
      *running += r.delta_e;
      r.cumulative_e = *running;
      negative_total = negative_total || *running < 0;
    }
    rep.rows.push_back(r);
  }
  if (negative_delta) rep.warnings.push_back("negative growth increment: r_inf exceeds nabla_X");
  if (negative_total) rep.warnings.push_back("negative cumulative length: inputs are inconsistent");
  return rep;
}

}  // namespace iwg
