#include <gtest/gtest.h>

#include <cmath>

#include "cheb/conductor.hpp"
#include "cheb/error.hpp"
#include "cheb/sampler.hpp"
#include "cheb/verification.hpp"

using namespace cheb;

namespace {

std::vector<mpz_class> binomial_poly(std::uint64_t a, std::uint64_t p) {
  std::vector<mpz_class> c(p + 1, 0);
  c[0] = -static_cast<long>(a);
  c[p] = 1;
  return c;
}

// log of a positive mpz without overflow.
double mpz_log(const mpz_class& z) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

bool is_small_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST(Conductor, Example_2_3) {
  auto prof = conductor_profile(2, 3);
  EXPECT_EQ(prof.A_theta, 108);
  EXPECT_EQ(prof.d_L, 34992);
  // Q(2^{1/3}, zeta_3) has discriminant -2^4 3^7 in the number field tables.
  EXPECT_EQ(prof.d_L, mpz_class(16 * 2187));
  EXPECT_NEAR(prof.log_rd_L, std::log(34992.0) / 6.0, 1e-12);
  EXPECT_TRUE(prof.rd_bound_ok);
}

TEST(Conductor, ResultantOracle) {
  for (auto [a, p] : {std::pair<std::uint64_t, std::uint64_t>{2, 3}, {3, 5}, {2, 7}, {5, 3}, {2, 11}}) {
    auto prof = conductor_profile(a, p);
    EXPECT_EQ(prof.A_theta, oracle::abs_discriminant(binomial_poly(a, p))) << a << " " << p;
  }
  auto prof = conductor_profile(3, 5);
  mpz_class want;
  mpz_pow_ui(want.get_mpz_t(), mpz_class(3125 * 81).get_mpz_t(), 4);
  EXPECT_EQ(prof.d_L, want * 125);
}

TEST(Conductor, LogQuantitiesMatchExactIntegers) {
  for (std::uint64_t p = 3; p <= 47; ++p) {
    for (std::uint64_t a = 2; a <= 47; ++a) {
      if (!is_admissible(a, p)) continue;
      auto prof = conductor_profile(a, p);
      EXPECT_NEAR(prof.log_A_theta, mpz_log(prof.A_theta), 1e-10 * prof.log_A_theta);
      EXPECT_NEAR(prof.log_d_L, mpz_log(prof.d_L), 1e-10 * prof.log_d_L);
      // rd_L^{p(p-1)} = d_L
      EXPECT_NEAR(prof.log_rd_L * static_cast<double>(p * (p - 1)), mpz_log(prof.d_L), 1e-9 * prof.log_d_L);
    }
  }
}

TEST(Conductor, RejectsInadmissible) {
  try {
    conductor_profile(7, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AdmissibilityFailed);
  }
}

TEST(Conductor, LemmaChecks) {
  int pairs = 0;
  for (std::uint64_t p = 3; p <= 50; ++p) {
    if (!is_small_prime(p)) continue;
    for (std::uint64_t a = 2; a <= 50; ++a) {
      if (!is_admissible(a, p)) continue;
      auto prof = conductor_profile(a, p);
      EXPECT_TRUE(check_lemma_3_7(prof)) << a << " " << p;
      if (p >= 5) {
        auto br = check_lemma_2_1(prof);
        EXPECT_TRUE(br.pass) << a << " " << p << " " << br.lower << " " << br.value << " " << br.upper;
      }
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 100);
  try {
    check_lemma_2_1(conductor_profile(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionFailed);
  }
}

TEST(Lambda, Values) {
  for (std::uint64_t p : {3u, 5u, 7u, 13u}) {
    auto g = AffineGroup::build(p);
    const auto& t = g.table();
    const auto d = static_cast<std::int64_t>(p - 1);
    EXPECT_EQ(lambda_j(t, 0), static_cast<std::int64_t>(p));
    EXPECT_EQ(lambda_j(t, 1), 2 * d);
    EXPECT_EQ(lambda_j(t, 2), static_cast<std::int64_t>(g.order()));
    EXPECT_NEAR(lambda_11(t, 0), static_cast<double>(g.order()), 1e-12);
    EXPECT_NEAR(lambda_11(t, 1), 2.0 * d, 1e-12);
    EXPECT_NEAR(lambda_11(t, 2), static_cast<double>(d), 1e-12);
    EXPECT_NEAR(lambda_12(t, t.scaled_indicator(0)), static_cast<double>(d + d * d * d), 1e-9);
  }
}

TEST(St, ThetaGivesOneOverD) {
  for (std::uint64_t p : {3u, 5u, 7u, 11u, 13u}) {
    auto g = AffineGroup::build(p);
    const auto& theta = *g.table().theta();
    EXPECT_EQ(s_t(g.table(), ClassFunction::of(theta)), 1.0 / static_cast<double>(p - 1)) << p;
  }
}

TEST(St, ZeroFunctionRejected) {
  auto g = AffineGroup::build(5);
  try {
    s_t(g.table(), ClassFunction::zero(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroClassFunction);
  }
  // The trivial character: hat t is concentrated on 1, so s_t = 1.
  EXPECT_NEAR(s_t(g.table(), ClassFunction::constant(5, 1.0)), 1.0, 1e-12);
}
