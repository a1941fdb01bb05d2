#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qwalk/asymptotics.hpp"
#include "qwalk/enumerate.hpp"
#include "qwalk/error.hpp"

using namespace qwalk;

TEST(Asymptotics, Geometric) {
  std::vector<mpz_class> c;
  mpz_class v = 3;
  for (int n = 0; n < 64; ++n, v *= 2) c.push_back(v);
  const SeriesAnalysis a = growth_estimate(c);
  EXPECT_NEAR(a.rho, 2.0, 1e-12);
  EXPECT_NEAR(a.alpha, 0.0, 1e-8);
  EXPECT_NEAR(a.const_estimate, 3.0, 1e-8);
  EXPECT_EQ(a.stride, 1);
}

TEST(Asymptotics, CentralBinomial) {
  // binom(2n, n) ~ 4^n / sqrt(pi n).
  std::vector<mpz_class> c;
  for (unsigned n = 0; n < 200; ++n) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
    c.push_back(b);
  }
  const SeriesAnalysis a = growth_estimate(c);
  EXPECT_NEAR(a.rho, 4.0, 1e-9);
  EXPECT_NEAR(a.alpha, -0.5, 1e-5);
  EXPECT_NEAR(a.const_estimate, 1.0 / std::sqrt(std::numbers::pi), 1e-4);
  EXPECT_TRUE(a.converged);
}

TEST(Asymptotics, StrideDetection) {
  std::vector<mpz_class> c(200, 0);
  mpz_class v = 1;
  for (int n = 0; n < 200; n += 2, v *= 9) c[n] = v;
  const SeriesAnalysis a = growth_estimate(c);
  EXPECT_EQ(a.stride, 2);
  EXPECT_NEAR(a.rho, 9.0, 1e-10);
}

TEST(Asymptotics, Errors) {
  std::vector<mpz_class> zeros(100, 0);
  try {
    growth_estimate(zeros);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroSequence);
  }
  std::vector<mpz_class> short_seq(20, 1);
  try {
    growth_estimate(short_seq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientData);
  }
}

TEST(Asymptotics, SimpleWalkPredictions) {
  const SeriesBundle b = series_bundle(*preset("simple"), 400);
  const PredictionTolerances tol;
  EXPECT_TRUE(verify_prediction(b.q00, 16, -3, 4 / std::numbers::pi, tol).passed());
  EXPECT_TRUE(verify_prediction(b.q10, 4, -2, 8 / std::numbers::pi, tol).passed());
  EXPECT_TRUE(verify_prediction(b.q11, 4, -1, 4 / std::numbers::pi, tol).passed());
  const PredictionReport wrong = verify_prediction(b.q11, 4, -1, 1.5, tol);
  EXPECT_FALSE(wrong.passed());
  EXPECT_FALSE(wrong.const_ok);
  EXPECT_GT(wrong.const_deviation, 0.1);
}

TEST(Asymptotics, PeriodFourOscillation) {
  // c_n = 3^n (n + 1) (3 + 2 Re i^n): four dominant singularities on |z| = 1/3.
  std::vector<mpz_class> c;
  mpz_class v = 1;
  const int wiggle[4] = {2, 0, -2, 0};
  for (int n = 0; n < 200; ++n, v *= 3) c.push_back(v * (3 + wiggle[n % 4]) * (n + 1));
  const SeriesAnalysis a = growth_estimate(c);
  EXPECT_EQ(a.stride, 1);
  EXPECT_EQ(a.ratio_period, 4);
  EXPECT_NEAR(a.rho, 3.0, 1e-8);
  EXPECT_NEAR(a.alpha, 1.0, 1e-5);
}
