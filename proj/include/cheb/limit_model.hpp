#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace cheb::limit {

struct LimitModelConfig {
  std::uint64_t d = 2;
  double v = 1.0;
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  // Adds d-1 independent unit-variance abelian terms (exploratory, no target).
  bool abelian_noise = false;
};

void validate(const LimitModelConfig& cfg);

/// Counter-based generator: draw i of stream s depends only on (seed, s, i),
/// so a sample block can be regenerated on any thread.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept : seed_(seed), stream_(stream) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform in (0, 1).
  double uniform(std::uint64_t counter) const noexcept;
  /// Standard normal via Box-Muller on counters 2i and 2i+1.
  double normal(std::uint64_t index) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double target = 0.0;

  /// |mean - target| in units of the standard error.
  double z_score() const noexcept;
};

/// E[(X^2 - v)^s] / v^s for X ~ N(0, v), s = 1..s_max (s_max <= 8), with
/// targets H_s.
std::vector<Estimate> mc_centered_moments(const LimitModelConfig& cfg, unsigned s_max);

/// Per-class errors err_C = -theta(C) X, X ~ N(0, v); estimates
/// (1/|G|) sum_C |C| err_C^{2m} with target mu_{2m} v^m (d^{2m-1}+1)/(d+1). m <= 4.
Estimate mc_frobenius_moment(const LimitModelConfig& cfg, unsigned m);

/// mu_{2m} (d^{2m-1} + 1)/(d + 1), exactly.
mpq_class frobenius_coefficient(std::uint64_t d, unsigned m);

}  // namespace cheb::limit
