#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "iwg/kobayashi.hpp"

using namespace iwg;

namespace {

using F = IwasawaPoly<DvrElement>;

F series(const DvrPtr& R, std::initializer_list<long> c) {
  std::vector<DvrElement> v;
  for (long x : c) v.push_back(R->from_int(x));
  return F::exact(Poly<DvrElement>(v, R->zero()));
}

DvrMatrix scalar_matrix(const DvrPtr& R, std::initializer_list<std::initializer_list<long>> rows) {
  DvrMatrix m = dvr_matrix(R, rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = R->from_int(x);
    ++i;
  }
  return m;
}

// Z_p-matrix of an O-matrix for unramified O of degree f (basis 1, t, ..., t^{f-1}).
MatZ restrict_scalars(const DvrMatrix& m) {
  const DvrPtr& R = m(0, 0).ring();
  auto f = static_cast<std::size_t>(R->f());
  MatZ out(m.rows() * f, m.cols() * f, Integer(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      DvrElement t = R->one();
      for (std::size_t b = 0; b < f; ++b) {
        DvrElement x = m(i, j) * t;
        for (std::size_t a = 0; a < f; ++a) out(i * f + a, j * f + b) = Integer(static_cast<long>(x.coeffs()[a]));
        if (b + 1 < f) t = t * R->from_unramified(std::vector<long>{0, 1});
      }
    }
  return out;
}

// Fraction-free elimination.
Integer bareiss_det(MatZ m) {
  std::size_t n = m.rows();
  Integer prev = 1, sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// For finite N_n: nabla = len N_n - len N_{n-1}, and f * len = v_p det over Z_p.
long nabla_by_determinants(const F& f, int n) {
  ProjectiveSystem S = char_series_system(f, n - 1, n);
  const DvrPtr& R = S.ring();
  auto len = [&](int k) {
    Integer d = bareiss_det(restrict_scalars(S.at(k).relations));
    EXPECT_NE(d, 0);
    return vp(d, R->p());
  };
  long diff = len(n) - len(n - 1);
  EXPECT_EQ(diff % R->f(), 0);
  return diff / R->f();
}

ProjectiveSystem two_level(const DvrPtr& R, const DvrMatrix& a0, const DvrMatrix& a1, const DvrMatrix& t) {
  ProjectiveSystem S(R);
  S.add_level(0, a0);
  S.add_level(1, a1, t);
  return S;
}

}  // namespace

TEST(Kobayashi, FiniteIdentitySystem) {
  auto R = DvrRing::zp(3, 30);
  DvrMatrix a = scalar_matrix(R, {{9, 0}, {0, 3}});
  NablaResult r = nabla_direct(two_level(R, a, a, scalar_matrix(R, {{1, 0}, {0, 1}})), 1);
  ASSERT_TRUE(r.defined);
  EXPECT_EQ(r.value, 0);
}

TEST(Kobayashi, MultiplicationOnFreeModule) {
  auto R = DvrRing::zp(3, 30);
  DvrMatrix z = scalar_matrix(R, {{0}});
  NablaResult by_p = nabla_direct(two_level(R, z, z, scalar_matrix(R, {{3}})), 1);
  NablaResult by_9 = nabla_direct(two_level(R, z, z, scalar_matrix(R, {{9}})), 1);
  ASSERT_TRUE(by_p.defined && by_9.defined);
  EXPECT_EQ(by_p.value, 0);
  EXPECT_EQ(by_9.value, -1);
  EXPECT_EQ(by_9.coker_length, 2);
  EXPECT_EQ(by_9.lower_rank, 1);
  NablaResult zero_map = nabla_direct(two_level(R, z, z, scalar_matrix(R, {{0}})), 1);
  EXPECT_FALSE(zero_map.defined);
}

TEST(Kobayashi, TransitionMustRespectRelations) {
  auto R = DvrRing::zp(3, 30);
  ProjectiveSystem S(R);
  S.add_level(0, scalar_matrix(R, {{9}}));
  EXPECT_THROW(S.add_level(1, scalar_matrix(R, {{3}}), scalar_matrix(R, {{1}})), InputError);
  EXPECT_THROW(S.add_level(2, scalar_matrix(R, {{3}}), scalar_matrix(R, {{3}})), InputError);
  EXPECT_THROW(S.add_level(1, scalar_matrix(R, {{3}})), InputError);
}

TEST(Kobayashi, CharacteristicSeriesExamples) {
  auto R = DvrRing::zp(3, 30);
  F pxp = series(R, {9, 3});
  const long expected[] = {3, 7, 19};
  for (int n = 1; n <= 3; ++n) {
    EXPECT_EQ(nabla_char_series(pxp, n).value, expected[n - 1]);
    EXPECT_EQ(nabla_oracle(pxp, n).value, expected[n - 1]);
  }
  EXPECT_EQ(nabla_oracle(series(R, {3}), 2).value, 6);
  EXPECT_EQ(nabla_oracle(series(R, {0, 1}), 2).value, 1);
  EXPECT_EQ(nabla_char_series(series(R, {0, 1}), 2).value, 1);
  EXPECT_EQ(nabla_oracle(series(R, {3, 3, 1}), 2).value, 2);  // Phi_1(X)
}

TEST(Kobayashi, VanishingAtEpsilonIsUndefined) {
  auto R = DvrRing::zp(3, 30);
  F phi1 = series(R, {3, 3, 1});
  EXPECT_FALSE(nabla_char_series(phi1, 1).defined);
  EXPECT_FALSE(nabla_oracle(phi1, 1).defined);
  EXPECT_FALSE(char_series_admissible(phi1, 1));
  EXPECT_FALSE(char_series_admissible(series(R, {0, 1}), 1));
  EXPECT_TRUE(char_series_admissible(series(R, {9, 3}), 3));
}

TEST(Kobayashi, DeterminantOracleOverZ3) {
  auto R = DvrRing::zp(3, 30);
  for (const F& f : {series(R, {9, 3}), series(R, {3}), series(R, {-3, 1}), series(R, {2, 3, 1})})
    for (int n = 1; n <= 2; ++n) {
      NablaResult d = nabla_oracle(f, n);
      ASSERT_TRUE(d.defined);
      EXPECT_EQ(d.value, nabla_by_determinants(f, n)) << n;
      EXPECT_EQ(nabla_char_series(f, n).value, d.value) << n;
    }
}

TEST(Kobayashi, DeterminantOracleOverUnramifiedQuadratic) {
  auto R = DvrRing::make(3, 1, 2, {1, 0, 1}, {{-3, 0}}, 24);  // Z_3[t], t^2 = -1
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    F f = random_char_series(R, rng, 1, 2);
    if (!char_series_admissible(f, 2)) continue;
    for (int n = 1; n <= 2; ++n) {
      long v = nabla_by_determinants(f, n);
      EXPECT_EQ(nabla_oracle(f, n).value, v) << trial << " " << n;
      EXPECT_EQ(nabla_char_series(f, n).value, v) << trial << " " << n;
      ++checked;
    }
  }
  EXPECT_GE(checked, 10);
}

TEST(Kobayashi, OracleMatchesCharSeriesOnRandomInputs) {
  std::mt19937_64 rng(2024);
  auto zp = DvrRing::zp(3, 36);
  auto ram = DvrRing::make(3, 2, 1, {}, {{-3}, {0}}, 60);
  for (const auto& R : {zp, ram}) {
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
      F f = random_char_series(R, rng, 1, 3);
      if (!char_series_admissible(f, 2)) continue;
      for (int n = 1; n <= 2; ++n) {
        NablaResult a = nabla_char_series(f, n), b = nabla_oracle(f, n);
        ASSERT_TRUE(a.defined && b.defined);
        EXPECT_EQ(a.value, b.value) << R->describe() << " trial " << trial << " n " << n;
        ++checked;
      }
    }
    EXPECT_GE(checked, 30);
  }
}

TEST(Kobayashi, AsymptoticFormula) {
  auto R = DvrRing::zp(3, 30);
  AsymptoticTable t = nabla_asymptotic(series(R, {9, 3}), 1, 4);
  EXPECT_EQ(t.mu_uniformizer, 1);
  EXPECT_EQ(t.invariants.lambda, 1);
  ASSERT_TRUE(t.threshold.has_value());
  EXPECT_EQ(*t.threshold, 1);

  AsymptoticTable u = nabla_asymptotic(series(R, {-9, -6, 0, 1}), 1, 4);  // Phi_1(X - p)
  EXPECT_EQ(u.invariants.lambda, 3);
  EXPECT_FALSE(u.rows[0].agree);
  ASSERT_TRUE(u.threshold.has_value());
  EXPECT_EQ(*u.threshold, 2);

  auto ram = DvrRing::make(3, 2, 1, {}, {{-3}, {0}}, 60);
  DvrElement pi = ram->uniformizer();
  F g = F::exact(Poly<DvrElement>({pi * pi * pi, pi * pi, pi}, ram->zero()));
  AsymptoticTable w = nabla_asymptotic(g, 1, 4);
  EXPECT_EQ(w.mu_uniformizer, 1);
  EXPECT_EQ(w.invariants.lambda, 2);
  for (const auto& row : w.rows) EXPECT_TRUE(row.analytic.defined);
  ASSERT_TRUE(w.threshold.has_value());
  EXPECT_EQ(w.rows.back().formula, 2 * 2 + 54);
}

TEST(Kobayashi, AdditivityOnShortExactSequence) {
  // 0 -> Lambda/(X+p) --p--> Lambda/(p(X+p)) -> Lambda/(p) -> 0
  auto R = DvrRing::zp(3, 30);
  int nmin = 0, nmax = 3;
  ProjectiveSystem sub = char_series_system(series(R, {3, 1}), nmin, nmax);
  ProjectiveSystem mid = char_series_system(series(R, {9, 3}), nmin, nmax);
  ProjectiveSystem quot = char_series_system(series(R, {3}), nmin, nmax);
  ExactSequenceMaps maps;
  for (int n = nmin; n <= nmax; ++n) {
    auto q = static_cast<std::size_t>(ipow64(3, n));
    DvrMatrix inj = dvr_matrix(R, q, q), surj = dvr_matrix(R, q, q);
    for (std::size_t i = 0; i < q; ++i) {
      inj(i, i) = R->from_int(3);
      surj(i, i) = R->one();
    }
    maps.inj.emplace(n, inj);
    maps.surj.emplace(n, surj);
  }
  AdditivityReport rep = nabla_additivity_check(sub, mid, quot, maps, nmin, nmax);
  EXPECT_TRUE(rep.exact) << rep.failure;
  ASSERT_TRUE(rep.pass());
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_EQ(rep.rows[1].mid.value, 7);
  EXPECT_EQ(rep.rows[2].sub.value + rep.rows[2].quot.value, 19);

  // identity in place of multiplication by p is not a map of the sequence
  ExactSequenceMaps bad = maps;
  for (auto& [n, m] : bad.inj)
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = R->one();
  EXPECT_FALSE(nabla_additivity_check(sub, mid, quot, bad, nmin, nmax).exact);
}

TEST(Kobayashi, DirectSumAdds) {
  auto R = DvrRing::zp(3, 30);
  ProjectiveSystem a = char_series_system(series(R, {9, 3}), 1, 3);
  ProjectiveSystem b = char_series_system(series(R, {2, 3, 1}), 1, 3);
  ProjectiveSystem s = direct_sum(a, b);
  for (int n = 2; n <= 3; ++n) EXPECT_EQ(nabla_direct(s, n).value, nabla_direct(a, n).value + nabla_direct(b, n).value);
  EXPECT_THROW(direct_sum(a, char_series_system(series(R, {3}), 0, 3)), InputError);
}
