#pragma once

#include <cstdint>
#include <vector>

namespace cheb {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Distinct prime factors in increasing order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Smallest primitive root modulo the prime p.
std::uint64_t primitive_root(std::uint64_t p);

/// Order of c in (Z/pZ)^x; c must be coprime to p.
std::uint64_t multiplicative_order(std::uint64_t c, std::uint64_t p);

}  // namespace cheb
