#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "cheb/frobgroup.hpp"

// Independent oracles used by the `verify` subcommand and the test suites.
// Nothing here is used by the computational paths they check.
namespace cheb::oracle {

/// Degrees of the irreducible factors of X^p - a over F_q, sorted ascending,
/// by distinct-degree factorization. q must not divide a*p.
std::vector<unsigned> factor_degrees_binomial(std::uint64_t q, std::uint64_t a, std::uint64_t p);

/// The factorization pattern a Frobenius class forces on X^p - a mod q.
std::vector<unsigned> expected_degrees(ClassId c, std::uint64_t p);

/// |disc(f)| of an integer polynomial (coefficients low to high, monic or
/// not) via the Sylvester-matrix resultant Res(f, f').
mpz_class abs_discriminant(const std::vector<mpz_class>& coeffs);

/// Class of the element x -> cx + d of Aff(F_p), by definition.
ClassId affine_class(std::uint64_t c, std::uint64_t d, std::uint64_t p);

}  // namespace cheb::oracle
