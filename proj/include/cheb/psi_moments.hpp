#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "cheb/frobgroup.hpp"
#include "cheb/sampler.hpp"
#include "cheb/weights.hpp"

namespace cheb {

struct ErrorTermConfig {
  GaussianWeight weight{1.0};
  // ord_{s=1/2} L(s, chi) per character index of Aff(F_p); empty means all zero.
  std::vector<double> z_values;
  double tol = 1e-12;

  /// Half-width of the window in log(q^m) around u:
  /// sqrt(ln(1/tol)/a) + 2.
  double window() const;
};

/// Set when the lower edge of the window fell below log 2 and was clamped.
struct PsiFlags {
  bool window_below_range = false;
};

/// Default tuple budget for moment_n_chars.
inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000;

/// Smoothed prime sums psi_eta(e^u; L/Q, t) over a Frobenius dataset, and the
/// class-averaged moments of the Chebotarev error built from them. Holds a
/// reference to the dataset, which must outlive the engine. All const
/// methods are safe to call concurrently.
class MomentEngine {
 public:
  MomentEngine(const FrobeniusDataset& dataset, ErrorTermConfig config);

  const AffineGroup& group() const noexcept { return group_; }
  const CharacterTable& table() const noexcept { return group_.table(); }
  const ErrorTermConfig& config() const noexcept { return config_; }
  const FrobeniusDataset& dataset() const noexcept { return *dataset_; }

  double window() const noexcept { return window_; }
  /// Largest u whose window fits below log x_max.
  double max_u() const noexcept;

  /// psi_eta(e^u; t), summing t over the Frobenius class of each q^m.
  std::complex<double> psi(const ClassFunction& t, double u, PsiFlags* flags = nullptr) const;

  /// psi_eta(e^u; 1_C) for every class C from a single pass over the primes.
  std::vector<double> class_psi(double u, PsiFlags* flags = nullptr) const;

  /// z(L/K, t_C) = sum_chi conj(chi(C)) z(chi).
  double z_class(ClassId c) const;

  /// (|G|/|C|) psi(1_C) - e^{u/2} L_eta(1/2) - hat eta(0) z_C, for all C.
  std::vector<double> error_terms(double u, PsiFlags* flags = nullptr) const;
  double error_term(ClassId c, double u) const;

  /// M_n(u) = (1/|G|) sum_C |C| error_term(C, u)^n.
  double moment_n(double u, unsigned n) const;
  static double moment_from_errors(const CharacterTable& table, const std::vector<double>& errors,
                                   unsigned n);

  /// psi*(chi) = psi(chi) - [chi = 1] e^{u/2} L_eta(1/2) - hat eta(0) z(chi).
  std::complex<double> psi_star(const Character& chi, double u) const;

  /// M_n(u) through the character expansion
  /// (1/|G|) sum_{chi_1..chi_n} prod psi*(chi_j) * sum_C |C| conj(chi_1)...conj(chi_n)(C).
  double moment_n_chars(double u, unsigned n, std::uint64_t tuple_budget = kDefaultTupleBudget) const;

  /// e^{u/2} L_eta(1/2).
  double main_term(double u) const;

 private:
  void check_window(double u, PsiFlags* flags) const;

  template <typename Visit>
  void for_each_prime_power(double u, Visit&& visit) const;

  const FrobeniusDataset* dataset_;
  ErrorTermConfig config_;
  AffineGroup group_;
  double window_;
  double log_x_max_;
  std::vector<double> log_q_;
  // power_class_[m][c] = class of g^m for g in class c; grown on demand up to max m.
  std::vector<std::vector<ClassId>> power_class_;
};

/// Uniformly spaced grid on [lo, hi] with an even number of intervals, no
/// coarser than `step`.
std::vector<double> simpson_grid(double lo, double hi, double step);
/// Composite Simpson rule over samples on a grid from simpson_grid.
double simpson(const std::vector<double>& grid, const std::vector<double>& values);

/// (1/(U-2)) int_2^U M_2(u) du by composite Simpson.
double m2_estimate(const MomentEngine& engine, double U, double step = 0.05, unsigned workers = 1);

struct AveragingConfig {
  double U = 12.0;
  GaussianKernel kernel{1.0};
  double step = 0.05;
  unsigned workers = 1;
};

/// The u-range actually integrated for the Phi(u/U)-averages: from 0 up to
/// the point where Phi(u/U) < tol, clamped to the sieve depth.
struct AveragingWindow {
  double u_end = 0.0;
  bool clamped_by_sieve_depth = false;
  double mass = 0.0;  // int_0^{u_end} Phi(u/U) du
};
AveragingWindow averaging_window(const MomentEngine& engine, const AveragingConfig& cfg);

/// (1/mass) int Phi(u/U) (M_2(u) - m2)^s du over the averaging window.
double variance_moment(const MomentEngine& engine, const AveragingConfig& cfg, unsigned s, double m2);
/// (1/mass) int Phi(u/U) M_n(u) du over the averaging window.
double averaged_moment(const MomentEngine& engine, const AveragingConfig& cfg, unsigned n);

struct MomentRequest {
  AveragingConfig averaging;
  std::vector<unsigned> ns{2, 4};
  std::vector<unsigned> ss{2, 3};
};

struct MomentReport {
  std::vector<double> u_grid;
  std::map<unsigned, std::vector<double>> M;  // n -> M_n on u_grid
  double U = 0.0;
  double m2 = 0.0;
  double m2_upper = 0.0;  // upper limit actually used for m2
  std::map<unsigned, double> V;   // s -> V_{2,s}
  std::map<unsigned, double> M1;  // n -> M_{n,1}
  std::map<unsigned, double> ratios;  // 2m -> M_{2m,1} / M_{2,1}^m
  AveragingWindow window;
  bool window_below_range = false;
  bool m2_clamped = false;
};

MomentReport moment_report(const MomentEngine& engine, const MomentRequest& request);

}  // namespace cheb
