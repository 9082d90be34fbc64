#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "iwg/group_law.hpp"

using namespace iwg;
using iwg::testing::curve;

namespace {

// a_q = q + 1 - #E(F_q) for y^2 = x^3 - x, by enumeration.
long trace_of_frobenius(long q) {
  long count = 1;
  for (long x = 0; x < q; ++x)
    for (long y = 0; y < q; ++y)
      if ((y * y - (x * x * x - x)) % q == 0) ++count;
  return q + 1 - count;
}

long scalar(const MatZ& m) { return m(0, 0).get_si(); }

}  // namespace

TEST(EulerData, CurveCoefficientsMatchPointCounts) {
  EulerData E = curve(0);
  for (long q : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) EXPECT_EQ(scalar(E.factor(q).cq), trace_of_frobenius(q)) << q;
  EXPECT_EQ(trace_of_frobenius(29), -10);
}

TEST(EulerData, DirichletCoefficientsAreMultiplicative) {
  EulerData E = curve(0);
  auto C = dirichlet_coeffs(E, 27);
  EXPECT_EQ(scalar(C[25]), (-2) * (-2) - 5);
  EXPECT_EQ(scalar(C[15]), scalar(C[3]) * scalar(C[5]));
  EXPECT_EQ(scalar(C[9]), -3);  // a_9 = a_3^2 - 3
  EXPECT_EQ(scalar(C[4]), 0);   // bad prime 2 with zero Euler factor
  EXPECT_EQ(scalar(C[1]), 1);
}

TEST(EulerData, ValidationRejectsBadInput) {
  EulerData E = curve(0);
  E.factors[3].cq = MatZ::from_rows({{1}}, Integer(0));
  EXPECT_THROW(E.validate(), InputError);  // ordinary
  E = curve(0);
  E.u1 = {2};
  EXPECT_THROW(E.validate(), InputError);
  E = iwg::testing::rank_two();
  E.factors[5].cq = MatZ::from_rows({{1, 0}, {0, 2}}, Integer(0));
  EXPECT_THROW(E.validate(), InputError);  // does not commute with sqrt2
}

TEST(Honda, LogAAndEllSatisfyTheCongruence) {
  for (long a3 : {0L, 3L}) {
    EulerData E = curve(a3);
    HondaType u = honda_type(E);
    EXPECT_TRUE(honda_check(log_A(E, 27), u, 27).pass) << a3;
    EXPECT_TRUE(honda_check(ell_series(E, 27), u, 27).pass) << a3;
  }
  EulerData E = iwg::testing::rank_two();
  EXPECT_TRUE(honda_check(log_A(E, 27), honda_type(E), 27).pass);
  EXPECT_TRUE(honda_check(ell_series(E, 27), honda_type(E), 27).pass);
}

TEST(Honda, IdentityLogarithmFails) {
  EulerData E = curve(0);
  HondaReport r = honda_check(identity_series(1, 27), honda_type(E), 27);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.fail_degree.has_value());
  EXPECT_EQ(*r.fail_degree, 9);  // B_2 x^9 with B_2 = 1
}

TEST(Honda, WrongTypeFails) {
  EulerData E = curve(3);
  HondaType u = honda_type(curve(0));
  EXPECT_FALSE(honda_check(log_A(E, 27), u, 27).pass);
}

TEST(Honda, DenominatorBound) {
  for (long a3 : {0L, 3L}) EXPECT_TRUE(xk_denominator_bound_holds(xk_sequence(curve(a3).cp(), 3, 12), 3));
  EXPECT_TRUE(xk_denominator_bound_holds(xk_sequence(iwg::testing::rank_two().cp(), 3, 12), 3));
  // C_p nilpotent mod p but not divisible by p: x_1 = C_p / p is not integral.
  EulerData N = iwg::testing::rank_two_nilpotent();
  EXPECT_FALSE(xk_denominator_bound_holds(xk_sequence(N.cp(), 3, 1), 3));
  EXPECT_TRUE(honda_check(log_A(N, 27), honda_type(N), 27).pass);
}

TEST(Honda, DenominatorBoundIsSharpForZeroTrace) {
  // a_p = 0: x_{2j} = (-1/p)^j exactly.
  auto x = xk_sequence(MatZ::from_rows({{0}}, Integer(0)), 3, 6);
  EXPECT_EQ(x[2](0, 0), Rational(-1, 3));
  EXPECT_EQ(x[4](0, 0), Rational(1, 9));
  EXPECT_EQ(x[5](0, 0), 0);
}

TEST(LubinTate, IterateIsComposedFrobeniusLift) {
  // f^(t) = (1+X)^{p^t} - 1, and f^(t)(a + p b) = f^(t)(a) mod p^{t+1}.
  for (int t = 0; t <= 3; ++t) {
    Poly<Integer> f = lubin_tate_iterate(3, t);
    long pt = static_cast<long>(ipow64(3, t));
    ASSERT_EQ(f.degree(), pt);
    for (long j = 1; j <= pt; ++j) EXPECT_EQ(f[static_cast<std::size_t>(j)], binomial(pt, j));
    Integer mod = ipow(3, static_cast<unsigned long>(t + 1));
    for (long a = -4; a <= 4; ++a)
      for (long b = -3; b <= 3; ++b) {
        Integer d = f.eval(Integer(a + 3 * b)) - f.eval(Integer(a));
        EXPECT_EQ(d % mod, 0) << t << " " << a << " " << b;
      }
  }
}

TEST(LubinTate, DenominatorsAreAbsorbed) {
  // v(x_k) + (t + 1) >= t + 1 - floor(k/2) for every k: the x_k bound in usable form.
  auto x = xk_sequence(MatZ::from_rows({{3}}, Integer(0)), 3, 10);
  for (int k = 0; k <= 10; ++k) {
    Valuation v = vp(x[static_cast<std::size_t>(k)](0, 0), 3);
    if (!v.is_infinite()) {
      EXPECT_GE(v.value(), -(k / 2)) << k;
    }
  }
}

TEST(Logarithm, EllLinearTerm) {
  EulerData E = curve(3);
  int K = 6;
  auto ell = ell_series(E, K, 4);
  auto x = xk_sequence(E.cp(), 3, K);
  Rational s = 0;
  for (int k = 0; k <= K; ++k) s += x[static_cast<std::size_t>(k)](0, 0) * ipow(3, k);
  EXPECT_EQ(ell[1](0, 0), s);
}

TEST(Logarithm, TruncationBound) {
  EXPECT_EQ(ell_truncation_for(3, 27, 1), 6);
  EXPECT_GE(ell_tail_valuation(3, ell_truncation_for(3, 9, 12), 9), 12);
}

TEST(GroupLaw, MultiplicativeGroup) {
  SeparatedSeries L = identity_series(1, 6);
  for (int n = 1; n <= 6; ++n) L.coeff[static_cast<std::size_t>(n)](0, 0) = Rational(n % 2 ? 1 : -1, n);
  GroupLawReport r = group_law(L, 6, 3);
  EXPECT_TRUE(r.pass());
  MultiSeries expected = MultiSeries::variable(2, 6, 0) + MultiSeries::variable(2, 6, 1) +
                         MultiSeries::variable(2, 6, 0) * MultiSeries::variable(2, 6, 1);
  EXPECT_EQ(r.law[0], expected);
}

TEST(GroupLaw, CurveLogarithmsGiveIntegralLaws) {
  for (long a3 : {0L, 3L}) {
    EulerData E = curve(a3);
    GroupLawReport ge = group_law(ell_series_for_group_law(E, 9), 9, 3);
    EXPECT_TRUE(ge.integral) << a3;
    EXPECT_TRUE(ge.commutative);
    EXPECT_TRUE(ge.associative);
    EXPECT_TRUE(ge.homomorphism);
    EXPECT_TRUE(group_law(log_A(E, 9), 9, 3).pass());
    auto iso = logarithm_isomorphism(log_A(E, 9), ell_series_for_group_law(E, 9), 9, 3);
    EXPECT_TRUE(iso.integral && iso.intertwines);
  }
}

TEST(GroupLaw, NonHondaLogarithmIsNotIntegral) {
  // L = x + x^2/3 gives F = x + y - 2xy/3 + ...
  SeparatedSeries L = identity_series(1, 5);
  L.coeff[2](0, 0) = Rational(1, 3);
  EXPECT_FALSE(group_law(L, 5, 3).integral);
}

TEST(GroupLaw, RankTwo) {
  EulerData E = iwg::testing::rank_two();
  GroupLawOptions opt;
  opt.assoc_degree = 4;
  EXPECT_TRUE(group_law(log_A(E, 6), 6, 3, opt).pass());
}
