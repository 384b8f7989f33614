#include "cheb/verification.hpp"

#include <algorithm>

#include "cheb/arith.hpp"
#include "cheb/error.hpp"

namespace cheb::oracle {

namespace {

using Poly = std::vector<std::uint64_t>;  // low to high, over F_q

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inverse(std::uint64_t x, std::uint64_t q) { return powmod(x, q - 2, q); }

Poly poly_mod(Poly f, const Poly& g, std::uint64_t q) {
  trim(f);
  const std::uint64_t inv = inverse(g.back(), q);
  while (f.size() >= g.size()) {
    const std::uint64_t coef = mulmod(f.back(), inv, q);
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
      f[shift + i] = (f[shift + i] + q - mulmod(coef, g[i], q)) % q;
    }
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& x, const Poly& y, const Poly& m, std::uint64_t q) {
  if (x.empty() || y.empty()) return {};
  Poly out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = (out[i + j] + mulmod(x[i], y[j], q)) % q;
  }
  return poly_mod(std::move(out), m, q);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t q) {
  Poly result{1};
  base = poly_mod(std::move(base), m, q);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, q);
    base = poly_mulmod(base, base, m, q);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly x, Poly y, std::uint64_t q) {
  trim(x);
  trim(y);
  while (!y.empty()) {
    Poly r = poly_mod(x, y, q);
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty()) {
    const std::uint64_t inv = inverse(x.back(), q);
    for (auto& c : x) c = mulmod(c, inv, q);
  }
  return x;
}

Poly poly_div(Poly f, const Poly& g, std::uint64_t q) {
  trim(f);
  const std::uint64_t inv = inverse(g.back(), q);
  Poly quot(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, 0);
  while (f.size() >= g.size()) {
    const std::uint64_t coef = mulmod(f.back(), inv, q);
    const std::size_t shift = f.size() - g.size();
    quot[shift] = coef;
    for (std::size_t i = 0; i < g.size(); ++i) {
      f[shift + i] = (f[shift + i] + q - mulmod(coef, g[i], q)) % q;
    }
    trim(f);
  }
  return quot;
}

}  // namespace

std::vector<unsigned> factor_degrees_binomial(std::uint64_t q, std::uint64_t a, std::uint64_t p) {
  if (q % p == 0 || q % a == 0) throw Error(ErrorCode::Ramified, "q divides a*p");
  Poly f(p + 1, 0);
  f[0] = (q - a % q) % q;
  f[p] = 1;
  std::vector<unsigned> degrees;
  Poly h{0, 1};
  for (unsigned i = 1; f.size() > 1; ++i) {
    if (2 * i > f.size() - 1) {
      degrees.push_back(static_cast<unsigned>(f.size() - 1));
      break;
    }
    h = poly_powmod(h, q, f, q);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + q - 1) % q;
    trim(diff);
    const Poly g = poly_gcd(f, diff, q);
    if (g.size() > 1) {
      const auto deg = static_cast<unsigned>(g.size() - 1);
      for (unsigned k = 0; k < deg / i; ++k) degrees.push_back(i);
      f = poly_div(f, g, q);
      h = poly_mod(h, f, q);
    }
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

std::vector<unsigned> expected_degrees(ClassId c, std::uint64_t p) {
  if (c == kIdentityClass) return std::vector<unsigned>(p, 1);
  if (c == kKernelClass) return {static_cast<unsigned>(p)};
  const auto r = static_cast<unsigned>(multiplicative_order(c, p));
  std::vector<unsigned> out{1};
  for (std::uint64_t k = 0; k < (p - 1) / r; ++k) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

mpz_class abs_discriminant(const std::vector<mpz_class>& coeffs) {
  const std::size_t n = coeffs.size() - 1;  // degree of f
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "discriminant needs degree >= 1");
  std::vector<mpz_class> deriv(n);
  for (std::size_t i = 1; i <= n; ++i) deriv[i - 1] = coeffs[i] * static_cast<unsigned long>(i);
  const std::size_t m = n - 1;  // degree of f'
  const std::size_t size = n + m;
  if (size == 1) return 1;

  // Sylvester matrix, rows of f shifted m times then rows of f' shifted n times,
  // coefficients from the leading term down.
  std::vector<std::vector<mpz_class>> mat(size, std::vector<mpz_class>(size, 0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k <= n; ++k) mat[r][r + k] = coeffs[n - k];
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k <= m; ++k) mat[m + r][r + k] = deriv[m - k];
  }

  // Fraction-free Bareiss elimination.
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < size && mat[swap][k] == 0) ++swap;
      if (swap == size) return 0;
      std::swap(mat[k], mat[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) / prev;
      }
    }
    prev = mat[k][k];
  }
  mpz_class res = mat[size - 1][size - 1] * sign;
  mpz_class disc = res / coeffs[n];
  return abs(disc);
}

ClassId affine_class(std::uint64_t c, std::uint64_t d, std::uint64_t p) {
  c %= p;
  d %= p;
  if (c != 1) return static_cast<ClassId>(c);
  return d == 0 ? kIdentityClass : kKernelClass;
}

}  // namespace cheb::oracle
