#include "cheb/conductor.hpp"

#include <cmath>
#include <string>

#include "cheb/error.hpp"
#include "cheb/sampler.hpp"

namespace cheb {


ConductorProfile conductor_profile(std::uint64_t a, std::uint64_t p) {
  require_admissible(a, p);
  ConductorProfile prof;
  prof.a = a;
  prof.p = p;

  mpz_class pp, ap;
  mpz_ui_pow_ui(pp.get_mpz_t(), p, p);
  mpz_ui_pow_ui(ap.get_mpz_t(), a, p - 1);
  prof.A_theta = pp * ap;

  // Conductor-discriminant formula: the trivial character contributes 1,
  // each of the p-2 nontrivial abelian characters contributes p, and theta
  // (degree p-1) contributes A_theta^{p-1}.
  mpz_class abelian, theta_part;
  mpz_ui_pow_ui(abelian.get_mpz_t(), p, p - 2);
  mpz_pow_ui(theta_part.get_mpz_t(), prof.A_theta.get_mpz_t(), p - 1);
  prof.d_L = abelian * theta_part;

  const auto pd = static_cast<double>(p);
  const auto ad = static_cast<double>(a);
  prof.log_A_theta = pd * std::log(pd) + (pd - 1.0) * std::log(ad);
  prof.log_d_L = (pd - 2.0) * std::log(pd) + (pd - 1.0) * prof.log_A_theta;
  prof.log_rd_L = prof.log_d_L / (pd * (pd - 1.0));
  prof.rd_L = std::exp(prof.log_rd_L);
  prof.rd_bound_ok = prof.log_rd_L <= 3.0 * std::log(ad * pd);
  return prof;
}

std::int64_t lambda_j(const CharacterTable& table, unsigned j) {
  std::int64_t total = 0;
  for (const auto& chi : table.characters()) {
    std::int64_t term = 1;
    for (unsigned i = 0; i < j; ++i) term *= chi.degree;
    total += term;
  }
  return total;
}

double lambda_11(const CharacterTable& table, ClassId c) {
  double total = 0.0;
  for (const auto& chi : table.characters()) total += static_cast<double>(chi.degree) * std::abs(chi.values.at(c));
  return total;
}

double lambda_12(const CharacterTable& table, const ClassFunction& t) {
  double total = 0.0;
  for (const auto& chi : table.characters()) total += static_cast<double>(chi.degree) * std::norm(t_hat(table, t, chi));
  return total;
}

double s_t(const CharacterTable& table, const ClassFunction& t) {
  std::vector<double> weights;
  for (const auto& chi : table.characters()) weights.push_back(std::norm(t_hat(table, t, chi)));
  double lambda = 0.0;
  for (const auto& chi : table.characters()) lambda += static_cast<double>(chi.degree) * weights[chi.index];
  if (lambda == 0.0) throw Error(ErrorCode::ZeroClassFunction, "s_t needs a nonzero class function");

  double best = 0.0;
  for (const auto& cls : table.classes()) {
    // The identity class is the one of size 1 on which every character takes its degree.
    bool identity = cls.size == 1;
    for (const auto& chi : table.characters()) {
      identity = identity && chi.values[cls.id] == std::complex<double>(static_cast<double>(chi.degree), 0.0);
    }
    if (identity) continue;
    std::complex<double> s = 0.0;
    for (const auto& chi : table.characters()) s += weights[chi.index] * chi.values[cls.id];
    best = std::max(best, std::abs(s));
  }
  return best / lambda;
}

Bracket check_lemma_2_1(const ConductorProfile& profile) {
  const double d = static_cast<double>(profile.p - 1);
  const double order = d * (d + 1.0);
  const double f = order - d * d;
  if (f > order / 4.0) {
    throw Error(ErrorCode::PreconditionFailed,
                "f(|G|) = " + std::to_string(f) + " exceeds |G|/4 for p = " + std::to_string(profile.p));
  }
  const double r = f / order;
  const double eps = std::sqrt(r) + 2.0 * std::pow(r, 1.5);
  Bracket out;
  out.value = profile.log_A_theta / (d * profile.log_rd_L);
  out.lower = 1.0 - eps;
  out.upper = 1.0 + eps;
  const double e = 1.0;
  const bool remark = f >= d * e && d * e >= std::sqrt(order) - 0.5;
  out.pass = remark && out.lower <= out.value && out.value <= out.upper;
  return out;
}

bool check_lemma_3_7(const ConductorProfile& profile) {
  const double d = static_cast<double>(profile.p - 1);
  return profile.log_A_theta >= (d - 1.0) * profile.log_rd_L;
}

}  // namespace cheb
