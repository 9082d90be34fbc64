#include <gtest/gtest.h>

#include "iwg/iwasawa.hpp"

using namespace iwg;

namespace {

Poly<Integer> P(std::vector<Integer> c) { return Poly<Integer>(std::move(c), 0); }

}  // namespace

TEST(Iwasawa, OmegaFactorsThroughPhi) {
  for (long p : {3L, 5L})
    for (int n = 1; n <= 3; ++n) EXPECT_EQ(omega(p, n), cyclotomic_phi(p, n) * omega(p, n - 1));
  EXPECT_EQ(cyclotomic_phi(3, 1), P({3, 3, 1}));
  EXPECT_EQ(cyclotomic_phi(3, 0), P({0, 1}));
}

TEST(Iwasawa, OmegaVanishesAtLowerEps) {
  for (int m = 0; m <= 3; ++m) EXPECT_TRUE(ord_at_eps(omega(3, 3), 3, m).is_infinite()) << m;
  EXPECT_FALSE(ord_at_eps(omega(3, 2), 3, 3).is_infinite());
}

TEST(Iwasawa, OrdAtEpsExamples) {
  EXPECT_EQ(ord_at_eps(P({0, 1}), 3, 2), Valuation(1));
  EXPECT_EQ(ord_at_eps(P({3}), 3, 2), Valuation(6));
  // Phi_1(eps_2) = 1 + zeta_9^3 ... = (zeta_9^3 - 1)/(zeta_9 - 1): ord 3 - 1.
  EXPECT_EQ(ord_at_eps(cyclotomic_phi(3, 1), 3, 2), Valuation(2));
  EXPECT_EQ(ord_at_eps(cyclotomic_phi(3, 2), 3, 1), Valuation(2));
  EXPECT_EQ(ord_at_eps(P({-3, 1}), 3, 1), Valuation(1));
}

TEST(Iwasawa, EvaluationAgreesWithCycArithmetic) {
  Poly<Integer> F = P({4, -3, 0, 7, 1});
  for (int n = 1; n <= 2; ++n) {
    auto e = CycElement<Integer>::eps(3, n, Integer(0));
    auto acc = CycElement<Integer>::zero(3, n, Integer(0)), pw = CycElement<Integer>::one(3, n, Integer(0));
    for (std::size_t i = 0; i < F.size(); ++i, pw = pw * e) acc += F[i] * pw;
    EXPECT_EQ(evaluate_at_eps(F, 3, n), acc);
  }
}

TEST(Iwasawa, MuLambda) {
  auto ml = mu_lambda(IwasawaPoly<Integer>::exact(P({3, 3, 0, 1})), 3);
  EXPECT_EQ(ml.mu, 0);
  EXPECT_EQ(ml.lambda, 3);
  ml = mu_lambda(IwasawaPoly<Integer>::exact(P({9, 3})), 3);
  EXPECT_EQ(ml.mu, 1);
  EXPECT_EQ(ml.lambda, 1);
  auto R = DvrRing::make(3, 2, 1, {}, {{-3}, {0}}, 30);
  Poly<DvrElement> f({R->from_int(3), R->uniformizer()}, R->zero());
  ml = mu_lambda(IwasawaPoly<DvrElement>::exact(f), 3);
  EXPECT_EQ(ml.mu, Rational(1, 2));
  EXPECT_EQ(ml.lambda, 1);
  EXPECT_THROW(mu_lambda(IwasawaPoly<Integer>::exact(P({})), 3), InputError);
}

TEST(Iwasawa, TruncationIsTracked) {
  auto a = IwasawaPoly<Integer>(P({3, 3, 1}), 3), b = IwasawaPoly<Integer>(P({3, 0, 3}), 3);
  auto c = a * b;
  EXPECT_TRUE(c.truncated());
  EXPECT_EQ(c.poly(), P({9, 9, 12}));
  EXPECT_THROW(mu_lambda(IwasawaPoly<Integer>(P({3, 3, 3}), 3, true), 3), PrecisionError);
  EXPECT_EQ(mu_lambda(IwasawaPoly<Integer>(P({3, 1}), 3, true), 3).lambda, 1);
  EXPECT_THROW(IwasawaPoly<Integer>(P({1, 2, 3}), 2), InputError);
}

TEST(Iwasawa, ShiftIsInvertible) {
  Poly<Integer> F = P({1, -2, 5, 0, 3});
  EXPECT_EQ(from_shifted(to_shifted(F)), F);
  // omega_n in the variable Y = 1 + X is Y^{p^n} - 1.
  EXPECT_EQ(to_shifted(omega(3, 2)), Poly<Integer>::monomial(Integer(1), 9) - P({1}));
}

TEST(Iwasawa, NormLiftMatchesMultiplication) {
  Poly<Integer> F = P({2, 1, 1});
  Poly<Integer> lifted = norm_lift(F, 3, 2);
  EXPECT_EQ(reduce_mod_omega(lifted - cyclotomic_phi(3, 2) * F, 3, 2), P({}));
  EXPECT_LT(lifted.degree(), 9);
}
