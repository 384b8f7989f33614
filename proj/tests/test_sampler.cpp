#include <gtest/gtest.h>

#include <cstdio>
#include <functional>
#include <filesystem>
#include <fstream>

#include "cheb/error.hpp"
#include "cheb/sampler.hpp"
#include "cheb/verification.hpp"

using namespace cheb;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Admissibility, Pairs) {
  EXPECT_TRUE(is_admissible(2, 3));
  EXPECT_TRUE(is_admissible(2, 7));
  EXPECT_TRUE(is_admissible(3, 5));
  EXPECT_FALSE(is_admissible(3, 3));
  EXPECT_FALSE(is_admissible(4, 3));
  EXPECT_FALSE(is_admissible(2, 9));
  // 1093 is a Wieferich prime: 1093^2 divides 2^1092 - 1, but p <= 257 caps it first.
  EXPECT_FALSE(is_admissible(2, 1093));
  // 3^4 = 81 = 1 mod 5 but not mod 25; 7^4 = 2401 = 1 mod 25.
  EXPECT_TRUE(is_admissible(3, 5));
  EXPECT_FALSE(is_admissible(7, 5));
  EXPECT_EQ(code_of([] { require_admissible(7, 5); }), ErrorCode::AdmissibilityFailed);
}

TEST(FrobeniusClass, Examples) {
  EXPECT_EQ(frobenius_class(5, 2, 3), 2u);
  EXPECT_EQ(frobenius_class(31, 2, 3), 0u);
  EXPECT_EQ(frobenius_class(7, 2, 3), 1u);
  EXPECT_EQ(code_of([] { frobenius_class(3, 2, 3); }), ErrorCode::Ramified);
  EXPECT_EQ(code_of([] { frobenius_class(2, 2, 3); }), ErrorCode::Ramified);
}

TEST(FrobeniusClass, MatchesFactorizationPattern) {
  for (auto [a, p] : {std::pair<std::uint64_t, std::uint64_t>{2, 3}, {2, 7}, {3, 5}, {5, 3}, {2, 11}}) {
    for (std::uint64_t q = 2; q <= 10000; ++q) {
      if (!trial_prime(q) || q == a || q == p) continue;
      const auto c = frobenius_class(q, a, p);
      ASSERT_EQ(oracle::factor_degrees_binomial(q, a, p), oracle::expected_degrees(c, p))
          << "a=" << a << " p=" << p << " q=" << q;
    }
  }
}

TEST(Sieve, SmallRange) {
  auto ds = sieve({2, 3, 100});
  EXPECT_EQ(ds.size(), 23u);
  std::size_t i = 0;
  for (std::uint64_t q = 2; q <= 100; ++q) {
    if (!trial_prime(q) || q == 2 || q == 3) continue;
    ASSERT_LT(i, ds.size());
    EXPECT_EQ(ds.primes[i], q);
    EXPECT_EQ(ds.classes[i], frobenius_class(q, 2, 3));
    ++i;
  }
  std::uint64_t total = 0;
  for (auto c : ds.counts) total += c;
  EXPECT_EQ(total, ds.size());
}

TEST(Sieve, PrimeListMatchesTrialDivision) {
  auto ds = sieve({3, 5, 200000, 1000});
  std::size_t i = 0;
  for (std::uint64_t q = 2; q <= 200000; ++q) {
    if (q == 3 || q == 5 || !trial_prime(q)) continue;
    ASSERT_EQ(ds.primes.at(i++), q);
  }
  EXPECT_EQ(i, ds.size());
}

TEST(Sieve, IndependentOfWorkersAndSegment) {
  auto one = sieve({2, 7, 1000000, 1 << 16}, 1);
  auto four = sieve({2, 7, 1000000, 1 << 12}, 4);
  EXPECT_EQ(one, four);
  EXPECT_EQ(serialize(one), serialize(four));
}

TEST(Sieve, ClassFrequencies) {
  auto ds = sieve({2, 3, 1000000}, 2);
  const double n = static_cast<double>(ds.size());
  // |C|/|G| = 1/6, 2/6, 3/6
  EXPECT_NEAR(ds.counts[0] / n, 1.0 / 6, 0.02 / 6);
  EXPECT_NEAR(ds.counts[1] / n, 2.0 / 6, 0.02 * 2 / 6);
  EXPECT_NEAR(ds.counts[2] / n, 3.0 / 6, 0.02 * 3 / 6);
}

TEST(Sieve, RejectsBadConfig) {
  EXPECT_EQ(code_of([] { sieve({2, 3, 50}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { sieve({2, 3, kMaxSieveBound + 1}); }), ErrorCode::Overflow);
  EXPECT_EQ(code_of([] { sieve({4, 3, 1000}); }), ErrorCode::AdmissibilityFailed);
  EXPECT_EQ(code_of([] { sieve({2, 3, 1000, 8}); }), ErrorCode::InvalidArgument);
}

TEST(Dataset, RoundTrip) {
  auto ds = sieve({2, 3, 10000});
  auto text = serialize(ds);
  EXPECT_EQ(text.rfind("CHEBSET 1 a=2 p=3 xmax=10000\n", 0), 0u);
  EXPECT_EQ(parse_dataset(text), ds);

  auto path = std::filesystem::temp_directory_path() / "cheb_test_roundtrip.txt";
  store(ds, path);
  EXPECT_EQ(load(path), ds);
  std::filesystem::remove(path);
}

TEST(Dataset, TrailerChecksumIsCrc32OfBody) {
  auto text = serialize(sieve({2, 3, 1000}));
  auto pos = text.rfind("#count=");
  char want[16];
  std::snprintf(want, sizeof want, "%08x", crc32_of(std::string_view(text).substr(0, pos)));
  EXPECT_NE(text.find(want, pos), std::string::npos);
  // zlib reference value
  EXPECT_EQ(crc32_of("123456789"), 0xCBF43926u);
}

TEST(Dataset, CorruptionIsDetected) {
  const auto text = serialize(sieve({2, 3, 1000}));

  auto flipped = text;
  flipped[flipped.find(",1\n")] = ';';
  EXPECT_EQ(code_of([&] { parse_dataset(flipped); }), ErrorCode::ChecksumMismatch);

  auto truncated = text.substr(0, text.size() / 2);
  EXPECT_EQ(code_of([&] { parse_dataset(truncated); }), ErrorCode::TruncatedFile);

  auto no_trailer = text.substr(0, text.rfind("#count="));
  EXPECT_EQ(code_of([&] { parse_dataset(no_trailer); }), ErrorCode::TruncatedFile);

  auto magic = text;
  magic[0] = 'X';
  EXPECT_EQ(code_of([&] { parse_dataset(magic); }), ErrorCode::BadMagic);

  auto version = text;
  version[8] = '2';
  EXPECT_EQ(code_of([&] { parse_dataset(version); }), ErrorCode::VersionMismatch);

  EXPECT_EQ(code_of([] { load("/nonexistent/dir/file.txt"); }), ErrorCode::IoError);
}

TEST(Dataset, ExpectField) {
  auto ds = sieve({2, 3, 1000});
  EXPECT_NO_THROW(expect_field(ds, 2, 3));
  EXPECT_EQ(code_of([&] { expect_field(ds, 2, 7); }), ErrorCode::ConfigMismatch);
}
