#include "cheb/psi_moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cheb/error.hpp"
#include "cheb/parallel.hpp"
#include "cheb/summation.hpp"

namespace cheb {

namespace {

constexpr double kLog2 = std::numbers::ln2;
// Slack when comparing the window edge against log x_max.
constexpr double kEdgeEps = 1e-12;

double int_pow(double x, unsigned n) {
  double r = 1.0;
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

double ErrorTermConfig::window() const {
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "tol must lie in (0, 1)");
  return std::sqrt(std::log(1.0 / tol) / weight.shape()) + 2.0;
}

MomentEngine::MomentEngine(const FrobeniusDataset& dataset, ErrorTermConfig config)
    : dataset_(&dataset),
      config_(std::move(config)),
      group_(AffineGroup::build(dataset.config.p)),
      window_(config_.window()),
      log_x_max_(std::log(static_cast<double>(dataset.config.x_max))) {
  if (!config_.z_values.empty() && config_.z_values.size() != group_.table().characters().size()) {
    throw Error(ErrorCode::InvalidArgument, "z_values needs one entry per character");
  }
  log_q_.resize(dataset.primes.size());
  for (std::size_t i = 0; i < log_q_.size(); ++i) log_q_[i] = std::log(static_cast<double>(dataset.primes[i]));

  const auto max_m = static_cast<std::size_t>(std::floor((log_x_max_ + kEdgeEps) / kLog2)) + 1;
  power_class_.resize(max_m + 1);
  for (std::size_t m = 1; m <= max_m; ++m) {
    power_class_[m].resize(group_.p());
    for (ClassId c = 0; c < group_.p(); ++c) power_class_[m][c] = group_.class_power(c, m);
  }
}

double MomentEngine::max_u() const noexcept { return log_x_max_ - window_; }

double MomentEngine::main_term(double u) const { return std::exp(0.5 * u) * config_.weight.l_half(); }

void MomentEngine::check_window(double u, PsiFlags* flags) const {
  if (u + window_ > log_x_max_ + kEdgeEps) {
    throw Error(ErrorCode::InsufficientSieveDepth,
                "window [u - W, u + W] = [" + std::to_string(u - window_) + ", " + std::to_string(u + window_) +
                    "] exceeds log x_max = " + std::to_string(log_x_max_));
  }
  if (flags != nullptr && u - window_ < kLog2) flags->window_below_range = true;
}

// Calls visit(class id, weight) for every prime power q^m with
// |m log q - u| <= W, in ascending (m, q) order.
template <typename Visit>
void MomentEngine::for_each_prime_power(double u, Visit&& visit) const {
  const double a = config_.weight.shape();
  const double hi = u + window_;
  const double lo = std::max(u - window_, 0.0);
  const auto max_m = static_cast<std::size_t>(std::floor(hi / kLog2));
  for (std::size_t m = 1; m <= max_m && m < power_class_.size(); ++m) {
    const double md = static_cast<double>(m);
    const auto first = std::lower_bound(log_q_.begin(), log_q_.end(), lo / md);
    const auto last = std::upper_bound(first, log_q_.end(), hi / md);
    const auto& pc = power_class_[m];
    for (auto it = first; it != last; ++it) {
      const auto i = static_cast<std::size_t>(it - log_q_.begin());
      const double lq = *it;
      const double x = md * lq - u;
      const double w = lq * std::exp(-0.5 * md * lq - a * x * x);
      visit(pc[dataset_->classes[i]], w);
    }
  }
}

std::complex<double> MomentEngine::psi(const ClassFunction& t, double u, PsiFlags* flags) const {
  if (t.values.size() != table().num_classes()) {
    throw Error(ErrorCode::InvalidArgument, "class function has wrong length");
  }
  check_window(u, flags);
  CompensatedSum re, im;
  for_each_prime_power(u, [&](ClassId c, double w) {
    re.add(t.values[c].real() * w);
    im.add(t.values[c].imag() * w);
  });
  return {re.value(), im.value()};
}

std::vector<double> MomentEngine::class_psi(double u, PsiFlags* flags) const {
  check_window(u, flags);
  std::vector<CompensatedSum> sums(table().num_classes());
  for_each_prime_power(u, [&](ClassId c, double w) { sums[c].add(w); });
  std::vector<double> out(sums.size());
  for (std::size_t c = 0; c < sums.size(); ++c) out[c] = sums[c].value();
  return out;
}

double MomentEngine::z_class(ClassId c) const {
  if (config_.z_values.empty()) return 0.0;
  std::complex<double> z = 0.0;
  for (const auto& chi : table().characters()) z += std::conj(chi.values[c]) * config_.z_values[chi.index];
  return z.real();
}

std::vector<double> MomentEngine::error_terms(double u, PsiFlags* flags) const {
  const auto psi_c = class_psi(u, flags);
  const double main = main_term(u);
  const double eta0 = config_.weight.eta_hat_zero();
  const auto order = static_cast<double>(table().order());
  std::vector<double> out(psi_c.size());
  for (const auto& cls : table().classes()) {
    out[cls.id] = order / static_cast<double>(cls.size) * psi_c[cls.id] - main - eta0 * z_class(cls.id);
  }
  return out;
}

double MomentEngine::error_term(ClassId c, double u) const { return error_terms(u).at(c); }

double MomentEngine::moment_from_errors(const CharacterTable& table, const std::vector<double>& errors,
                                        unsigned n) {
  CompensatedSum sum;
  for (const auto& cls : table.classes()) sum.add(static_cast<double>(cls.size) * int_pow(errors[cls.id], n));
  return sum.value() / static_cast<double>(table.order());
}

double MomentEngine::moment_n(double u, unsigned n) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "moment order n must be >= 1");
  return moment_from_errors(table(), error_terms(u), n);
}

std::complex<double> MomentEngine::psi_star(const Character& chi, double u) const {
  if (chi.table_id != table().id()) throw Error(ErrorCode::MixedTables, "psi_star");
  std::complex<double> v = psi(ClassFunction::of(chi), u);
  if (chi.kind == CharacterKind::Abelian && chi.abelian_index == 0) v -= main_term(u);
  if (!config_.z_values.empty()) v -= config_.weight.eta_hat_zero() * config_.z_values[chi.index];
  return v;
}

double MomentEngine::moment_n_chars(double u, unsigned n, std::uint64_t tuple_budget) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "moment order n must be >= 1");
  const auto chars = table().characters();
  const std::size_t k = chars.size();
  std::uint64_t tuples = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (tuples > tuple_budget / k) {
      throw Error(ErrorCode::CombinatorialBlowup,
                  std::to_string(k) + "^" + std::to_string(n) + " tuples exceed the budget of " +
                      std::to_string(tuple_budget));
    }
    tuples *= k;
  }

  std::vector<std::complex<double>> star(k);
  std::vector<const Character*> conj(k);
  for (const auto& chi : chars) {
    star[chi.index] = psi_star(chi, u);
    conj[chi.index] = &table().conjugate(chi);
  }

  CompensatedSum re, im;
  std::vector<std::size_t> idx(n, 0);
  std::vector<const Character*> tuple(n);
  for (std::uint64_t t = 0; t < tuples; ++t) {
    std::complex<double> prod = 1.0;
    for (unsigned j = 0; j < n; ++j) {
      prod *= star[idx[j]];
      tuple[j] = conj[idx[j]];
    }
    const auto cs = class_sum_closed_form(table(), tuple);
    if (cs != 0) {
      const auto term = prod * static_cast<double>(cs);
      re.add(term.real());
      im.add(term.imag());
    }
    for (unsigned j = 0; j < n; ++j) {
      if (++idx[j] < k) break;
      idx[j] = 0;
    }
  }
  return re.value() / static_cast<double>(table().order());
}

// ---------------------------------------------------------------------------
// Grid integration

std::vector<double> simpson_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "empty integration range");
  auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-9));
  n = std::max<std::size_t>(n, 2);
  if (n % 2 == 1) ++n;
  std::vector<double> grid(n + 1);
  const double h = (hi - lo) / static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = lo + h * static_cast<double>(i);
  grid[n] = hi;
  return grid;
}

double simpson(const std::vector<double>& grid, const std::vector<double>& values) {
  const std::size_t n = grid.size() - 1;
  if (grid.size() < 3 || n % 2 != 0 || values.size() != grid.size()) {
    throw Error(ErrorCode::InvalidArgument, "Simpson needs an odd number of samples");
  }
  const double h = (grid.back() - grid.front()) / static_cast<double>(n);
  CompensatedSum s;
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    s.add(w * values[i]);
  }
  return s.value() * h / 3.0;
}

namespace {

// M_n(u) for each requested n on every grid point.
std::map<unsigned, std::vector<double>> moment_series(const MomentEngine& engine, const std::vector<double>& grid,
                                                      const std::vector<unsigned>& ns, unsigned workers,
                                                      bool* below_range) {
  std::map<unsigned, std::vector<double>> out;
  for (unsigned n : ns) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "moment order n must be >= 1");
    out[n].assign(grid.size(), 0.0);
  }
  std::vector<char> flagged(grid.size(), 0);
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    PsiFlags flags;
    const auto errors = engine.error_terms(grid[i], &flags);
    flagged[i] = flags.window_below_range;
    for (auto& [n, series] : out) series[i] = MomentEngine::moment_from_errors(engine.table(), errors, n);
  });
  if (below_range != nullptr) {
    *below_range = std::any_of(flagged.begin(), flagged.end(), [](char f) { return f != 0; });
  }
  return out;
}

double phi_average(const AveragingConfig& cfg, const AveragingWindow& win, const std::vector<double>& grid,
                   const std::vector<double>& f) {
  std::vector<double> weighted(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) weighted[i] = cfg.kernel.phi(grid[i] / cfg.U) * f[i];
  return simpson(grid, weighted) / win.mass;
}

}  // namespace

double m2_estimate(const MomentEngine& engine, double U, double step, unsigned workers) {
  if (U < 4.0) throw Error(ErrorCode::InvalidArgument, "m2_estimate needs U >= 4");
  const auto grid = simpson_grid(2.0, U, step);
  const auto series = moment_series(engine, grid, {2}, workers, nullptr);
  return simpson(grid, series.at(2)) / (U - 2.0);
}

AveragingWindow averaging_window(const MomentEngine& engine, const AveragingConfig& cfg) {
  if (!(cfg.U > 0.0)) throw Error(ErrorCode::InvalidArgument, "U must be positive");
  const double b = cfg.kernel.width();
  // Phi(u/U) < tol beyond this point.
  const double natural_end = cfg.U * std::sqrt(std::log(1.0 / engine.config().tol) / b);
  AveragingWindow win;
  win.u_end = natural_end;
  if (engine.max_u() < natural_end) {
    win.u_end = engine.max_u();
    win.clamped_by_sieve_depth = true;
  }
  if (!(win.u_end > 0.0)) {
    throw Error(ErrorCode::InsufficientSieveDepth, "sieve too shallow for any u >= 0");
  }
  win.mass = cfg.U * cfg.kernel.phi_mass() * std::erf(std::sqrt(b) * win.u_end / cfg.U);
  return win;
}

double variance_moment(const MomentEngine& engine, const AveragingConfig& cfg, unsigned s, double m2) {
  if (s < 1) throw Error(ErrorCode::InvalidArgument, "s must be >= 1");
  const auto win = averaging_window(engine, cfg);
  const auto grid = simpson_grid(0.0, win.u_end, cfg.step);
  auto m2_series = moment_series(engine, grid, {2}, cfg.workers, nullptr).at(2);
  for (auto& v : m2_series) v = int_pow(v - m2, s);
  return phi_average(cfg, win, grid, m2_series);
}

double averaged_moment(const MomentEngine& engine, const AveragingConfig& cfg, unsigned n) {
  const auto win = averaging_window(engine, cfg);
  const auto grid = simpson_grid(0.0, win.u_end, cfg.step);
  return phi_average(cfg, win, grid, moment_series(engine, grid, {n}, cfg.workers, nullptr).at(n));
}

MomentReport moment_report(const MomentEngine& engine, const MomentRequest& request) {
  const auto& cfg = request.averaging;
  MomentReport report;
  report.U = cfg.U;
  report.window = averaging_window(engine, cfg);
  report.u_grid = simpson_grid(0.0, report.window.u_end, cfg.step);

  std::vector<unsigned> ns = request.ns;
  ns.push_back(2);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const auto series = moment_series(engine, report.u_grid, ns, cfg.workers, &report.window_below_range);
  for (unsigned n : request.ns) report.M[n] = series.at(n);

  report.m2_upper = std::min(cfg.U, engine.max_u());
  report.m2_clamped = report.m2_upper < cfg.U;
  report.m2 = m2_estimate(engine, report.m2_upper, cfg.step, cfg.workers);

  for (unsigned n : ns) report.M1[n] = phi_average(cfg, report.window, report.u_grid, series.at(n));
  const auto& m2_series = series.at(2);
  for (unsigned s : request.ss) {
    if (s < 1) throw Error(ErrorCode::InvalidArgument, "s must be >= 1");
    std::vector<double> centered(m2_series.size());
    for (std::size_t i = 0; i < centered.size(); ++i) centered[i] = int_pow(m2_series[i] - report.m2, s);
    report.V[s] = phi_average(cfg, report.window, report.u_grid, centered);
  }
  const double m21 = report.M1.at(2);
  for (unsigned n : ns) {
    if (n % 2 == 0) report.ratios[n] = report.M1.at(n) / int_pow(m21, n / 2);
  }
  return report;
}

}  // namespace cheb
