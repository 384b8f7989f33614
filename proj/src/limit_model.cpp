#include "cheb/limit_model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "cheb/arith.hpp"
#include "cheb/combinat.hpp"
#include "cheb/error.hpp"
#include "cheb/frobgroup.hpp"
#include "cheb/parallel.hpp"
#include "cheb/summation.hpp"

namespace cheb::limit {

namespace {

constexpr std::uint64_t kBlockSize = 1u << 16;

std::uint64_t splitmix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Power sums of one statistic per sample, accumulated per block and merged
// in block order.
struct Moments {
  CompensatedSum sum;
  CompensatedSum sum_sq;
};

struct ClassModel {
  std::vector<double> sizes;            // |C|
  std::vector<double> theta;            // theta(C)
  std::vector<std::vector<double>> abelian;  // Re psi_j(C), j = 1..d-1
  double order = 0.0;
};

ClassModel class_model(std::uint64_t d) {
  ClassModel model;
  model.order = static_cast<double>(d * (d + 1));
  if (is_prime(d + 1)) {
    const auto group = AffineGroup::build(d + 1);
    const auto& table = group.table();
    for (const auto& cls : table.classes()) {
      model.sizes.push_back(static_cast<double>(cls.size));
      model.theta.push_back(table.theta()->values[cls.id].real());
    }
    for (const auto& chi : table.characters()) {
      if (chi.kind != CharacterKind::Abelian || chi.abelian_index == 0) continue;
      std::vector<double> row;
      for (const auto& v : chi.values) row.push_back(v.real());
      model.abelian.push_back(std::move(row));
    }
  } else {
    // Generic doubly transitive Frobenius group: theta is d on the identity,
    // -1 on the d nontrivial kernel elements and zero elsewhere.
    model.sizes = {1.0, static_cast<double>(d), static_cast<double>(d * d - d)};
    model.theta = {static_cast<double>(d), -1.0, 0.0};
  }
  return model;
}

}  // namespace

void validate(const LimitModelConfig& cfg) {
  if (cfg.d < 2) throw Error(ErrorCode::InvalidArgument, "d must be >= 2");
  if (!(cfg.v > 0.0)) throw Error(ErrorCode::InvalidArgument, "variance scale v must be positive");
  if (cfg.n_samples < 1000) throw Error(ErrorCode::InvalidArgument, "n_samples must be >= 1000");
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  return splitmix(splitmix(seed_ ^ splitmix(stream_)) ^ counter);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t index) const noexcept {
  const double u1 = uniform(2 * index);
  const double u2 = uniform(2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Estimate::z_score() const noexcept {
  if (std_error == 0.0) return mean == target ? 0.0 : INFINITY;
  return std::fabs(mean - target) / std_error;
}

namespace {

// Runs stat(sample index) -> vector<double> of k statistics over all samples;
// returns mean and standard error of each.
template <typename Stat>
std::vector<Estimate> sample_means(const LimitModelConfig& cfg, std::size_t k, Stat&& stat) {
  const std::uint64_t blocks = (cfg.n_samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<Moments>> partial(blocks, std::vector<Moments>(k));
  parallel_for(blocks, cfg.workers, [&](std::size_t b) {
    const std::uint64_t lo = b * kBlockSize;
    const std::uint64_t hi = std::min(lo + kBlockSize, cfg.n_samples);
    std::vector<double> values(k);
    for (std::uint64_t i = lo; i < hi; ++i) {
      stat(i, values);
      for (std::size_t j = 0; j < k; ++j) {
        partial[b][j].sum.add(values[j]);
        partial[b][j].sum_sq.add(values[j] * values[j]);
      }
    }
  });
  std::vector<Estimate> out(k);
  const auto n = static_cast<double>(cfg.n_samples);
  for (std::size_t j = 0; j < k; ++j) {
    Moments total;
    for (const auto& block : partial) {
      total.sum.add(block[j].sum);
      total.sum_sq.add(block[j].sum_sq);
    }
    const double mean = total.sum.value() / n;
    const double var = std::max(0.0, (total.sum_sq.value() / n - mean * mean) * n / (n - 1.0));
    out[j].mean = mean;
    out[j].std_error = std::sqrt(var / n);
  }
  return out;
}

}  // namespace

std::vector<Estimate> mc_centered_moments(const LimitModelConfig& cfg, unsigned s_max) {
  validate(cfg);
  if (s_max < 1 || s_max > 8) throw Error(ErrorCode::InvalidArgument, "s_max must be in 1..8");
  const CounterRng rng(cfg.seed, 0);
  const double sd = std::sqrt(cfg.v);
  auto out = sample_means(cfg, s_max, [&](std::uint64_t i, std::vector<double>& vals) {
    const double x = sd * rng.normal(i);
    const double y = (x * x - cfg.v) / cfg.v;
    double pw = 1.0;
    for (unsigned s = 0; s < s_max; ++s) {
      pw *= y;
      vals[s] = pw;
    }
  });
  const auto h = combinat::h_sequence(s_max);
  for (unsigned s = 1; s <= s_max; ++s) out[s - 1].target = h[s].get_d();
  return out;
}

mpq_class frobenius_coefficient(std::uint64_t d, unsigned m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  mpz_class dp;
  mpz_ui_pow_ui(dp.get_mpz_t(), d, 2 * m - 1);
  mpq_class coef(combinat::mu(2 * m) * (dp + 1), mpz_class(d + 1));
  coef.canonicalize();
  return coef;
}

Estimate mc_frobenius_moment(const LimitModelConfig& cfg, unsigned m) {
  validate(cfg);
  if (m < 1 || m > 4) throw Error(ErrorCode::InvalidArgument, "m must be in 1..4");
  const auto model = class_model(cfg.d);
  if (cfg.abelian_noise && model.abelian.empty() && cfg.d > 1) {
    throw Error(ErrorCode::PreconditionFailed, "abelian noise needs d + 1 prime");
  }
  const CounterRng theta_rng(cfg.seed, 0);
  const double sd = std::sqrt(cfg.v);
  const unsigned power = 2 * m;
  std::vector<CounterRng> abelian_rng;
  if (cfg.abelian_noise) {
    for (std::size_t j = 0; j < model.abelian.size(); ++j) abelian_rng.emplace_back(cfg.seed, j + 1);
  }

  auto est = sample_means(cfg, 1, [&](std::uint64_t i, std::vector<double>& vals) {
    const double x = sd * theta_rng.normal(i);
    std::vector<double> ys(abelian_rng.size());
    for (std::size_t j = 0; j < ys.size(); ++j) ys[j] = sd * abelian_rng[j].normal(i);
    double acc = 0.0;
    for (std::size_t c = 0; c < model.sizes.size(); ++c) {
      double err = -model.theta[c] * x;
      for (std::size_t j = 0; j < ys.size(); ++j) err -= model.abelian[j][c] * ys[j];
      acc += model.sizes[c] * std::pow(err, power);
    }
    vals[0] = acc / model.order;
  });
  Estimate out = est[0];
  out.target = cfg.abelian_noise ? std::numeric_limits<double>::quiet_NaN()
                                  : frobenius_coefficient(cfg.d, m).get_d() * std::pow(cfg.v, m);
  return out;
}

}  // namespace cheb::limit
