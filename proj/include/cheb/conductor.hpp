#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "cheb/frobgroup.hpp"

namespace cheb {

struct Bracket {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  bool pass = false;
};

/// Conductor and discriminant data for K_{a,p}, the splitting field of X^p - a.
struct ConductorProfile {
  std::uint64_t a = 0;
  std::uint64_t p = 0;
  mpz_class A_theta;  // Artin conductor of theta, = |disc(X^p - a)| = p^p a^{p-1}
  mpz_class d_L;      // p^{p-2} A_theta^{p-1}
  double log_A_theta = 0.0;
  double log_d_L = 0.0;
  double log_rd_L = 0.0;
  double rd_L = 0.0;
  bool rd_bound_ok = false;  // log rd_L <= 3 log(ap)
};

ConductorProfile conductor_profile(std::uint64_t a, std::uint64_t p);

/// lambda_j(G) = sum_chi chi(1)^j.
std::int64_t lambda_j(const CharacterTable& table, unsigned j);
/// lambda_{1,1}(t_C) = sum_chi chi(1) |chi(C)|.
double lambda_11(const CharacterTable& table, ClassId c);
/// lambda_{1,2}(t) = sum_chi chi(1) |hat t(chi)|^2.
double lambda_12(const CharacterTable& table, const ClassFunction& t);

/// max_{a != 1} |sum_chi |hat t(chi)|^2 chi(a)| / lambda_{1,2}(t).
double s_t(const CharacterTable& table, const ClassFunction& t);

/// Checks 1 - eps <= log A(theta) / (theta(1) log rd_L) <= 1 + eps with
/// f(|G|) = |G| - theta(1)^2 = d and eps = (f/|G|)^{1/2} + 2 (f/|G|)^{3/2}.
/// Requires f <= |G|/4, i.e. p >= 5; also checks f >= d e >= |G|^{1/2} - 1/2.
Bracket check_lemma_2_1(const ConductorProfile& profile);

/// log A(theta) >= (d - 1) log rd_L.
bool check_lemma_3_7(const ConductorProfile& profile);

}  // namespace cheb
