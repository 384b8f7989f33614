#include "cheb/arith.hpp"

#include <algorithm>
#include <string>

#include "cheb/error.hpp"

namespace cheb {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    if (std::all_of(factors.begin(), factors.end(),
                    [&](std::uint64_t q) { return powmod(g, (p - 1) / q, p) != 1; })) {
      return g;
    }
  }
  throw Error(ErrorCode::NotPrime, "no primitive root modulo " + std::to_string(p));
}

std::uint64_t multiplicative_order(std::uint64_t c, std::uint64_t p) {
  std::uint64_t order = p - 1;
  for (std::uint64_t q : prime_factors(p - 1)) {
    while (order % q == 0 && powmod(c, order / q, p) == 1) order /= q;
  }
  return order;
}

}  // namespace cheb
