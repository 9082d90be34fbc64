#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "iwg/local_points.hpp"

using namespace iwg;
using iwg::testing::curve;

namespace {

CycQ rational(long p, int N, const Rational& r) { return CycQ::scalar(p, N, r); }

}  // namespace

TEST(LocalPoints, EpsilonLogarithm) {
  EXPECT_EQ(LocalPoints(curve(0), 2).epsilon_log(), std::vector<Rational>{Rational(3, 4)});
  EXPECT_EQ(LocalPoints(curve(3), 2).epsilon_log(), std::vector<Rational>{Rational(3)});
  // (4 - 3 sqrt2)^{-1} * 3 (1 + sqrt2) = -15 - (21/2) sqrt2
  auto v = LocalPoints(iwg::testing::rank_two(), 2).epsilon_log();
  EXPECT_EQ(v, (std::vector<Rational>{Rational(-15), Rational(-21, 2)}));
}

TEST(LocalPoints, TraceOfUniformizer) {
  // Tr_{L_1/Q_p}(zeta_p - 1) = -1 - (p - 1) = -p.
  for (long p : {3L, 5L, 7L}) {
    CycQ e = CycQ::eps(p, 1, Rational(0));
    EXPECT_EQ(trace(e, TowerField::L(1), TowerField::L(0)), CycQ::scalar(p, 1, Rational(-p)).embed(1)) << p;
  }
}

TEST(LocalPoints, FirstTracedPoint) {
  // ell(d_0) = 2 * 3/4 + Tr(e_1) = 3/2 - 3.
  LocalPoints lp(curve(0), 3);
  CycVector d0 = lp.ell_d(0);
  ASSERT_EQ(d0.size(), 1u);
  EXPECT_EQ(d0[0], rational(3, 3, Rational(-3, 2)));
}

TEST(LocalPoints, SystemRelationsHold) {
  for (const EulerData& E : {curve(0), curve(3), iwg::testing::rank_two()}) {
    QSystemReport r = verify_q_system(E, 2, 6);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.rows.size(), 8u);  // trace-c for n = 1..4, (i), (ii), (iii) for n = 1, 2
    for (const auto& row : r.rows) EXPECT_TRUE(row.residual.is_infinite()) << row.condition << " n=" << row.n;
  }
}

TEST(LocalPoints, RelationFailsWithWrongMatrix) {
  // ell(d_0) of the a_3 = 3 system is 3; the a_3 = 0 relation predicts -6.
  LocalPoints lp(curve(3), 3);
  MatQ wrong = to_rational(curve(0).cp()) - Rational(2) * MatQ::identity(1, Rational(0));
  CycVector predicted = wrong * lp.ell_c(0).flat;
  EXPECT_EQ(lp.ell_d(0)[0], rational(3, 3, Rational(3)));
  EXPECT_NE(predicted[0], lp.ell_d(0)[0]);
  EXPECT_FALSE(vector_valuation(predicted - lp.ell_d(0)).is_infinite());
}

TEST(LocalPoints, LevelBoundsAreChecked) {
  LocalPoints lp(curve(0), 2);
  EXPECT_THROW(lp.ell_c(3), InputError);
  EXPECT_THROW(lp.ell_d(2), InputError);
  EXPECT_THROW(verify_q_system(curve(0), 0, 6), InputError);
}
