#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace cheb::combinat {

/// Largest s accepted by h_bruteforce (matchings of 2s points).
inline constexpr unsigned kBruteForceMaxS = 8;

/// r-th moment of the standard Gaussian: (r-1)!! for even r, 0 for odd r.
mpz_class mu(unsigned r);

/// H_s = sum_j C(s,j) (-1)^(s-j) mu_{2j}, the s-th moment of Z^2 - 1.
mpz_class h_formula(unsigned s);

/// H_s from H_{s+2} = 2(s+1)(H_{s+1} + H_s), H_0 = 1, H_1 = 0.
mpz_class h_recurrence(unsigned s);

/// H_0..H_{s_max} from the recurrence in one pass.
std::vector<mpz_class> h_sequence(unsigned s_max);

/// Counts fixed-point-free involutions of {1..s} x {1,2} with pi(j,1) != (j,2),
/// by enumerating perfect matchings. Throws BruteForceTooLarge for s > 8.
std::uint64_t h_bruteforce(unsigned s);

/// H_s / mu_{2s}; tends to exp(-1/2).
double h_asymptotic_ratio(unsigned s);

mpz_class binomial(unsigned n, unsigned k);

}  // namespace cheb::combinat
