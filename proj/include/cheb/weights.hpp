#pragma once

#include <concepts>

namespace cheb {

/// What the prime sums need from a test weight eta: pointwise values, its
/// Fourier transform hat(eta)(xi) = int e^{-2 pi i xi u} eta(u) du, the
/// Laplace value L_eta(1/2) = int e^{x/2} eta(x) dx and alpha(|hat eta|^2).
template <typename W>
concept TestWeight = requires(const W& w, double x) {
  { w.eta(x) } -> std::convertible_to<double>;
  { w.eta_hat(x) } -> std::convertible_to<double>;
  { w.l_half() } -> std::convertible_to<double>;
  { w.alpha_l2() } -> std::convertible_to<double>;
  { w.eta_hat_zero() } -> std::convertible_to<double>;
};

/// eta(t) = exp(-a t^2). Even, smooth, with a non-negative Gaussian transform;
/// it decays faster than any exp(-c|t|), so it lies in S_delta for every
/// delta > 0.
class GaussianWeight {
 public:
  explicit GaussianWeight(double a);

  double shape() const noexcept { return a_; }

  double eta(double t) const noexcept;
  double eta_hat(double xi) const noexcept;
  double eta_hat_zero() const noexcept;
  /// sqrt(pi/a) exp(1/(16a)); also equals L_eta(-1/2).
  double l_half() const noexcept;
  /// int eta_hat^2 = int eta^2 = sqrt(pi/(2a)).
  double alpha_l2() const noexcept;

 private:
  double a_;
};

/// Phi(u) = exp(-b u^2), an element of the averaging class (even, Phi >= 0,
/// hat Phi >= 0).
class GaussianKernel {
 public:
  explicit GaussianKernel(double b);

  double width() const noexcept { return b_; }

  double phi(double u) const noexcept;
  double phi_hat(double xi) const noexcept;
  /// int_0^inf Phi = sqrt(pi/b)/2.
  double phi_mass() const noexcept;

 private:
  double b_;
};

static_assert(TestWeight<GaussianWeight>);

}  // namespace cheb
