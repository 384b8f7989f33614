#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cheb/combinat.hpp"
#include "cheb/error.hpp"
#include "cheb/frobgroup.hpp"
#include "cheb/limit_model.hpp"

using namespace cheb;
using namespace cheb::limit;

TEST(CounterRng, Deterministic) {
  CounterRng a(42, 0), b(42, 0), c(43, 0), s(42, 1);
  EXPECT_EQ(a.bits(17), b.bits(17));
  EXPECT_NE(a.bits(17), c.bits(17));
  EXPECT_NE(a.bits(17), s.bits(17));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = a.uniform(i);
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(CounterRng, NormalMoments) {
  CounterRng rng(7);
  const int n = 200000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(i);
    s1 += x;
    s2 += x * x;
    s4 += x * x * x * x;
  }
  EXPECT_NEAR(s1 / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(s4 / n, 3.0, 4.0 * std::sqrt(96.0 / n));
}

TEST(FrobeniusCoefficient, ExactValues) {
  EXPECT_EQ(frobenius_coefficient(2, 1), mpq_class(1));
  EXPECT_EQ(frobenius_coefficient(2, 2), mpq_class(9));
  EXPECT_EQ(frobenius_coefficient(6, 2), mpq_class(93));
  EXPECT_EQ(frobenius_coefficient(6, 1), mpq_class(1));
}

TEST(FrobeniusCoefficient, MatchesClassSumOfTheta) {
  // (1/|G|) sum_C |C| theta(C)^{2m} mu_{2m}, with the sum from the character table.
  for (std::uint64_t p : {3u, 5u, 7u, 11u}) {
    auto g = AffineGroup::build(p);
    const auto& theta = *g.table().theta();
    for (unsigned m = 1; m <= 4; ++m) {
      std::vector<Character> tuple(2 * m, theta);
      const auto cs = class_sum(g.table(), tuple);
      mpq_class want(combinat::mu(2 * m) * mpz_class(static_cast<long>(*cs.closed_form)),
                     mpz_class(static_cast<unsigned long>(g.order())));
      want.canonicalize();
      EXPECT_EQ(frobenius_coefficient(p - 1, m), want) << p << " " << m;
    }
  }
}

TEST(MonteCarlo, CenteredMomentsMatchH) {
  LimitModelConfig cfg;
  auto est = mc_centered_moments(cfg, 5);
  ASSERT_EQ(est.size(), 5u);
  const double want[] = {0, 2, 8, 60, 544};
  for (unsigned s = 0; s < 5; ++s) {
    EXPECT_EQ(est[s].target, want[s]);
    EXPECT_LT(est[s].z_score(), 4.0) << s + 1;
  }
}

TEST(MonteCarlo, VarianceScaleCancels) {
  LimitModelConfig cfg;
  cfg.v = 2.5;
  cfg.n_samples = 200000;
  auto est = mc_centered_moments(cfg, 3);
  for (const auto& e : est) EXPECT_LT(e.z_score(), 4.0);
}

TEST(MonteCarlo, FrobeniusMoments) {
  for (auto [d, m] : {std::pair<std::uint64_t, unsigned>{2, 1}, {2, 2}, {6, 2}, {4, 1}, {8, 2}}) {
    LimitModelConfig cfg;
    cfg.d = d;
    auto e = mc_frobenius_moment(cfg, m);
    EXPECT_NEAR(e.target, frobenius_coefficient(d, m).get_d(), 1e-12);
    EXPECT_LT(e.z_score(), 4.0) << d << " " << m;
  }
}

TEST(MonteCarlo, StandardErrorScaling) {
  LimitModelConfig small, large;
  small.n_samples = 100000;
  large.n_samples = 400000;
  const double r = mc_centered_moments(small, 2)[1].std_error / mc_centered_moments(large, 2)[1].std_error;
  EXPECT_NEAR(r, 2.0, 0.4);
}

TEST(MonteCarlo, ReproducibleAcrossWorkers) {
  LimitModelConfig a;
  a.n_samples = 300000;
  LimitModelConfig b = a;
  b.workers = 4;
  auto x = mc_centered_moments(a, 4), y = mc_centered_moments(b, 4);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].mean, y[i].mean);
    EXPECT_EQ(x[i].std_error, y[i].std_error);
  }
  a.d = b.d = 6;
  EXPECT_EQ(mc_frobenius_moment(a, 2).mean, mc_frobenius_moment(b, 2).mean);
}

TEST(MonteCarlo, AbelianNoiseHasNoTarget) {
  LimitModelConfig cfg;
  cfg.d = 4;
  cfg.n_samples = 10000;
  cfg.abelian_noise = true;
  auto e = mc_frobenius_moment(cfg, 1);
  EXPECT_TRUE(std::isnan(e.target));
  EXPECT_GT(e.mean, 0.0);
}

TEST(MonteCarlo, RejectsBadConfig) {
  LimitModelConfig cfg;
  cfg.d = 1;
  EXPECT_THROW(mc_frobenius_moment(cfg, 1), Error);
  cfg.d = 2;
  cfg.v = 0.0;
  EXPECT_THROW(mc_centered_moments(cfg, 2), Error);
  cfg.v = 1.0;
  EXPECT_THROW(mc_centered_moments(cfg, 9), Error);
}
