#include <gtest/gtest.h>

#include <random>

#include "iwg/cyclotomic.hpp"

using namespace iwg;

namespace {

using Cyc = CycElement<Rational>;

// Trace over Q_p as the trace of the multiplication matrix on the zeta basis.
Rational matrix_trace(const Cyc& x) {
  Rational t = 0;
  for (std::size_t j = 0; j < x.degree(); ++j) {
    Cyc col = x * Cyc::zeta_power(x.p(), x.level(), static_cast<long>(j), Rational(0));
    t += col[j];
  }
  return t;
}

Cyc random_element(long p, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-9, 9);
  std::vector<Rational> c(static_cast<std::size_t>(phi_pn(p, n)));
  for (auto& x : c) x = Rational(d(rng), 1 + (d(rng) + 9) % 4);
  return Cyc(p, n, c);
}

}  // namespace

TEST(Cyclotomic, ZetaHasOrderPn) {
  for (long p : {3L, 5L})
    for (int n = 1; n <= 3; ++n) {
      long pn = static_cast<long>(ipow64(p, n));
      Cyc z = Cyc::zeta_power(p, n, 1, Rational(0));
      Cyc acc = Cyc::one(p, n, Rational(0));
      for (long k = 1; k <= pn; ++k) {
        acc = acc * z;
        EXPECT_EQ(acc == Cyc::one(p, n, Rational(0)), k == pn) << p << " " << n << " " << k;
      }
    }
}

TEST(Cyclotomic, EpsBasisRoundTrip) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    Cyc x = random_element(3, n, rng);
    EXPECT_EQ(Cyc::from_eps_basis(3, n, x.eps_coeffs()), x);
  }
  Cyc e = Cyc::eps(3, 2, Rational(0));
  EXPECT_EQ(e, Cyc::zeta_power(3, 2, 1, Rational(0)) - Cyc::one(3, 2, Rational(0)));
}

TEST(Cyclotomic, GaloisIsARingHomomorphism) {
  std::mt19937_64 rng(5);
  Cyc x = random_element(5, 2, rng), y = random_element(5, 2, rng);
  for (long a : {2L, 7L, 24L}) {
    EXPECT_EQ((x * y).galois(a), x.galois(a) * y.galois(a));
    EXPECT_EQ((x + y).galois(a), x.galois(a) + y.galois(a));
  }
  EXPECT_THROW(x.galois(5), InputError);
}

TEST(Cyclotomic, TraceToQpMatchesMatrixTrace) {
  std::mt19937_64 rng(11);
  for (long p : {3L, 5L})
    for (int n = 1; n <= 2; ++n) {
      Cyc x = random_element(p, n, rng);
      Cyc t = trace(x, TowerField::L(n), TowerField::L(0));
      EXPECT_EQ(t, Cyc::scalar(p, n, matrix_trace(x)));
    }
  EXPECT_EQ(trace(Cyc::zeta_power(3, 2, 1, Rational(0)), TowerField::L(2), TowerField::L(0)),
            Cyc::zero(3, 2, Rational(0)));
  EXPECT_EQ(trace(Cyc::eps(3, 1, Rational(0)), TowerField::L(1), TowerField::L(0)), Cyc::scalar(3, 1, Rational(-3)));
}

TEST(Cyclotomic, TracesAreTransitive) {
  std::mt19937_64 rng(13);
  Cyc x = random_element(3, 3, rng);
  Cyc direct = trace(x, TowerField::L(3), TowerField::L(1));
  Cyc stepwise = trace(trace(x, TowerField::L(3), TowerField::L(2)), TowerField::L(2), TowerField::L(1));
  EXPECT_EQ(direct, stepwise);
  // k-tower: Tr_{k_2/k_0} = Tr_{k_1/k_0} Tr_{k_2/k_1} on elements of k_2.
  Cyc y = trace(x, TowerField::L(3), TowerField::k(2));
  EXPECT_TRUE(lies_in(y, TowerField::k(2)));
  EXPECT_FALSE(lies_in(y, TowerField::k(1)));
  Cyc a = trace(y, TowerField::k(2), TowerField::k(0));
  Cyc b = trace(trace(y, TowerField::k(2), TowerField::k(1)), TowerField::k(1), TowerField::k(0));
  EXPECT_EQ(a, b);
  // Tr_{L_3/Q_p} = Tr_{k_0/Q_p} Tr_{L_3/k_0} and k_0 = Q_p.
  EXPECT_EQ(Cyc::scalar(3, 3, matrix_trace(x)), trace(trace(x, TowerField::L(3), TowerField::k(0)), TowerField::k(0), TowerField::L(0)));
}

TEST(Cyclotomic, KTraceMatchesQpTraceScaling) {
  std::mt19937_64 rng(17);
  Cyc x = random_element(3, 3, rng);
  Cyc y = trace(x, TowerField::L(3), TowerField::k(2));  // element of k_2, degree 9
  Cyc z = trace(y, TowerField::k(2), TowerField::k(1));  // element of k_1
  // Tr_{L_3/Q}(y) = [L_3 : k_2] Tr_{k_2/Q}(y), and Tr_{k_2/Q} = Tr_{k_1/Q} Tr_{k_2/k_1}.
  Rational tr_k2 = matrix_trace(y) / 2;
  Rational tr_k1 = matrix_trace(z) / 6;
  EXPECT_EQ(tr_k2, tr_k1);
}

TEST(Cyclotomic, EpsValuations) {
  EXPECT_EQ(eps_valuation(Cyc::eps(3, 2, Rational(0))), Valuation(1));
  EXPECT_EQ(eps_valuation(Cyc::scalar(3, 2, Rational(3))), Valuation(6));
  EXPECT_EQ(eps_valuation(Cyc::eps(3, 1, Rational(0)).embed(2)), Valuation(3));
  EXPECT_EQ(eps_valuation(Cyc::zeta_power(5, 2, 7, Rational(0)) - Cyc::one(5, 2, Rational(0))), Valuation(1));
  EXPECT_EQ(eps_valuation(Cyc::scalar(3, 1, Rational(1, 9))), Valuation(-4));
  EXPECT_TRUE(eps_valuation(Cyc::zero(3, 1, Rational(0))).is_infinite());
}

TEST(Cyclotomic, RamifiedBaseValuationUsesNorm) {
  auto R = DvrRing::make(3, 2, 1, {}, {{-3}, {0}}, 40);
  auto e1 = CycElement<DvrElement>::eps(3, 1, R->zero());
  EXPECT_EQ(eps_valuation(e1), Valuation(1));
  EXPECT_EQ(eps_valuation(e1.embed(2)), Valuation(3));
  auto pi = CycElement<DvrElement>::scalar(3, 1, R->uniformizer());
  EXPECT_EQ(eps_valuation(pi), Valuation(1));  // ord(pi) = phi(3) / 2
  EXPECT_EQ(eps_valuation(pi + e1), Valuation(1));
}

TEST(Cyclotomic, UnramifiedBase) {
  auto R = DvrRing::make(5, 1, 2, {-2, 0, 1}, {{-5, 0}}, 12);
  auto t = CycElement<DvrElement>::scalar(5, 1, R->from_unramified({0, 1}));
  auto e = CycElement<DvrElement>::eps(5, 1, R->zero());
  EXPECT_EQ(eps_valuation(t * e * e), Valuation(2));
}
