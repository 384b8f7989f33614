#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cheb/frobgroup.hpp"

namespace cheb {

/// Parameters of L = Q(a^{1/p}, zeta_p) and the sieve range.
struct SieveConfig {
  std::uint64_t a = 2;
  std::uint64_t p = 3;
  std::uint64_t x_max = 100;
  std::uint64_t segment_size = std::uint64_t{1} << 20;

  // segment_size does not affect the output and is not compared.
  bool same_field_and_range(const SieveConfig& o) const noexcept {
    return a == o.a && p == o.p && x_max == o.x_max;
  }
};

/// Largest supported sieve bound; primes are stored in 32 bits.
inline constexpr std::uint64_t kMaxSieveBound = 0xFFFFFFFFull;

/// a, p distinct primes, p odd, p^2 not dividing a^{p-1} - 1, p <= 257.
bool is_admissible(std::uint64_t a, std::uint64_t p);
/// Throws AdmissibilityFailed with the reason.
void require_admissible(std::uint64_t a, std::uint64_t p);

/// Frobenius class of the unramified prime q in Gal(L/Q) = Aff(F_p):
/// q = 1 mod p gives 0 (split) or 1 (kernel) depending on whether a is a
/// p-th power residue mod q; otherwise the class is q mod p.
ClassId frobenius_class(std::uint64_t q, std::uint64_t a, std::uint64_t p);

/// Every unramified prime q <= x_max with its Frobenius class.
struct FrobeniusDataset {
  SieveConfig config;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint8_t> classes;
  std::vector<std::uint64_t> counts;  // indexed by class id

  std::size_t size() const noexcept { return primes.size(); }

  friend bool operator==(const FrobeniusDataset& x, const FrobeniusDataset& y) {
    return x.config.same_field_and_range(y.config) && x.primes == y.primes &&
           x.classes == y.classes && x.counts == y.counts;
  }
};

/// Segmented sieve; segments are processed on `workers` threads and merged
/// in ascending order, so the result does not depend on the worker count.
FrobeniusDataset sieve(const SieveConfig& config, unsigned workers = 1);

/// The on-disk text format: header, one "q,class" line per prime, trailer
/// with record count and CRC-32 of all preceding bytes.
std::string serialize(const FrobeniusDataset& dataset);
FrobeniusDataset parse_dataset(std::string_view bytes);

void store(const FrobeniusDataset& dataset, const std::filesystem::path& path);
FrobeniusDataset load(const std::filesystem::path& path);

/// Throws ConfigMismatch unless the dataset was built for (a, p).
void expect_field(const FrobeniusDataset& dataset, std::uint64_t a, std::uint64_t p);

std::uint32_t crc32_of(std::string_view bytes);

}  // namespace cheb
