#include <gtest/gtest.h>

#include "iwg/coleman.hpp"
#include "iwg/config.hpp"
#include "iwg/growth.hpp"

using namespace iwg;

namespace {

GrowthParams example() {
  GrowthParams g;
  g.p = 3;
  g.d = 2;
  g.r_p = Rational(1);
  g.odd_signs = g.even_signs = {Sign::sharp, Sign::flat};
  g.lambda = 3;
  g.r_inf = 1;
  g.n_min = 1;
  g.n_max = 6;
  g.e_baseline = Integer(0);
  return g;
}

}  // namespace

TEST(Growth, SingleSignValues) {
  std::optional<Rational> r = Rational(1);
  EXPECT_EQ(f_v(1, 0, 1, 3, r), 2);
  EXPECT_EQ(f_v(0, 1, 1, 3, r), 0);
  EXPECT_EQ(f_v(1, 0, 2, 3, r), 2);
  EXPECT_EQ(f_v(0, 1, 2, 3, r), 6);
  EXPECT_EQ(f_v(1, 0, 3, 3, r), 20);
  EXPECT_EQ(f_v(0, 1, 3, 3, r), 6);
  EXPECT_THROW(f_v(1, 0, 0, 3, r), InputError);
}

TEST(Growth, ZeroTraceSequence) {
  const long expected[] = {0, 2, 6, 20};
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(f_v(1, 0, n, 3, std::nullopt), expected[n - 1]) << n;
}

TEST(Growth, ZeroTraceGeometricClosedForm) {
  // (p^n - 1)/(p + 1) for even n and (p^n - p)/(p + 1) for odd n, per prime.
  for (long p : {3L, 5L, 7L})
    for (int n = 1; n <= 12; ++n)
      for (int d : {1, 3}) {
        Integer pn = ipow(p, static_cast<unsigned long>(n));
        Integer want = d * (n % 2 ? pn - p : pn - 1) / (p + 1);
        EXPECT_EQ(f_v(d, 0, n, p, std::nullopt), Rational(want)) << p << " " << n;
        EXPECT_EQ(f_v(0, d, n, p, std::nullopt), Rational(want)) << p << " " << n;
      }
}

TEST(Growth, MatchesColemanValuations) {
  // F_v for a single sign is ord H^s_n at zeta_{p^n}, with r_p = v(a_p).
  int compared = 0;
  for (long p : {3L, 5L})
    for (long ap : {p, p * p}) {
      int nmax = p == 3 ? 5 : 3;
      ColemanFamily<Integer> fam(p, Integer(ap), nmax);
      Rational r = vp(Integer(ap), p);
      for (int n = 1; n <= nmax; ++n)
        for (bool sharp : {true, false}) {
          ValuationComparison vc = h_valuation(fam, n, sharp);
          if (!vc.applicable) continue;
          Rational want = vc.computed.value();
          EXPECT_EQ(f_v(sharp ? 1 : 0, sharp ? 0 : 1, n, p, r), want) << p << " " << ap << " " << n << " " << sharp;
          ++compared;
        }
    }
  EXPECT_GE(compared, 24);
}

TEST(Growth, IntegralForIntegerSlopes) {
  for (long p : {3L, 5L, 7L})
    for (int n = 1; n <= 12; ++n)
      for (int a = 0; a <= 3; ++a)
        for (std::optional<Rational> r : {std::optional<Rational>(), std::optional<Rational>(1), std::optional<Rational>(2)})
          EXPECT_EQ(f_v(a, 3 - a, n, p, r).get_den(), 1) << p << " " << n << " " << a;
}

TEST(Growth, SlopeDerivative) {
  // Raising r_p by one adds phi(p^n) times the number of primes whose sign carries r_p.
  for (int n = 1; n <= 8; ++n)
    for (int a = 0; a <= 2; ++a) {
      Rational diff = f_v(a, 2 - a, n, 5, Rational(3)) - f_v(a, 2 - a, n, 5, Rational(2));
      EXPECT_EQ(diff, phi_pn(5, n) * (n % 2 ? a : 2 - a)) << n << " " << a;
    }
}

TEST(Growth, Table) {
  GrowthReport rep = emit_growth_table(example());
  ASSERT_EQ(rep.rows.size(), 6u);
  const long F[] = {2, 8, 26, 80, 242, 728};
  Integer running = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    const GrowthRow& r = rep.rows[i];
    EXPECT_EQ(r.F_v, F[i]);
    EXPECT_EQ(r.nabla_X, F[i] + 3);
    EXPECT_EQ(r.delta_e, F[i] + 2);
    running += r.delta_e;
    ASSERT_TRUE(r.cumulative_e.has_value());
    EXPECT_EQ(*r.cumulative_e, running);
    EXPECT_EQ(r.parity, i % 2 ? "even" : "odd");
    EXPECT_EQ(r.a_sharp, 1);
    EXPECT_EQ(r.a_flat, 1);
  }
  EXPECT_TRUE(rep.warnings.empty());
}

TEST(Growth, MuAndRamification) {
  GrowthParams g = example();
  g.mu = 1;
  g.e_v = 2;
  EXPECT_EQ(nabla_x(g, 2), 8 + 2 * 3 + 6);
  EXPECT_EQ(sha_delta(g, 2), 8 + 2 * 3 + 6 - 1);
}

TEST(Growth, NoBaselineMeansNoCumulative) {
  GrowthParams g = example();
  g.e_baseline.reset();
  for (const auto& r : emit_growth_table(g).rows) EXPECT_FALSE(r.cumulative_e.has_value());
}

TEST(Growth, Warnings) {
  GrowthParams g = example();
  g.r_inf = 20;
  GrowthReport rep = emit_growth_table(g);
  ASSERT_EQ(rep.warnings.size(), 2u);
  EXPECT_NE(rep.warnings[0].find("negative growth increment"), std::string::npos);
  EXPECT_NE(rep.warnings[1].find("negative cumulative"), std::string::npos);
}

TEST(Growth, NonIntegralTotalIsReported) {
  GrowthParams g = example();
  g.e_v = 3;
  g.r_p = Rational(1, 3);
  EXPECT_THROW(nabla_x(g, 1), VerificationError);
}

TEST(Growth, Validation) {
  GrowthParams g = example();
  g.p = 9;
  EXPECT_THROW(g.validate(), InputError);
  g = example();
  g.even_signs.pop_back();
  EXPECT_THROW(g.validate(), InputError);
  g = example();
  g.n_max = 0;
  EXPECT_THROW(g.validate(), InputError);
  g = example();
  g.r_p = Rational(1, 2);
  EXPECT_THROW(g.validate(), InputError);
}

TEST(GrowthConfig, ParsesAndNamesBadFields) {
  const char* good = R"({"p": 3, "d": 1, "r_p": "inf", "e_v": 1, "f_v": 1,
    "signs": {"odd": ["sharp"], "even": ["flat"]}, "mu": "0", "lambda": 0, "r_inf": 0, "n_min": 1, "n_max": 4})";
  Json j = parse_json(good);
  GrowthParams g = parse_growth_params(Field(j, ""));
  EXPECT_FALSE(g.r_p.has_value());
  EXPECT_EQ(g.n_max, 4);

  auto message = [](const std::string& text) {
    Json k = parse_json(text);
    try {
      parse_growth_params(Field(k, ""));
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  std::string bad_p = good;
  bad_p.replace(bad_p.find("\"p\": 3"), 6, "\"p\": \"three\"");
  EXPECT_NE(message(bad_p).find("field \"p\""), std::string::npos);
  std::string bad_sign = good;
  bad_sign.replace(bad_sign.find("\"flat\""), 6, "\"flit\"");
  EXPECT_NE(message(bad_sign).find("signs.even[0]"), std::string::npos);
  std::string missing = good;
  missing.replace(missing.find("\"lambda\": 0, "), 13, "");
  EXPECT_NE(message(missing).find("field \"lambda\": missing"), std::string::npos);
  EXPECT_THROW(parse_json("{\"p\": 3,"), InputError);
}
