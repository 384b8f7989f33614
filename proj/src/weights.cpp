#include "cheb/weights.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cheb/error.hpp"

namespace cheb {

using std::numbers::pi;

GaussianWeight::GaussianWeight(double a) : a_(a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::NonPositiveShape, "weight shape a must be positive, got " + std::to_string(a));
  }
}

double GaussianWeight::eta(double t) const noexcept { return std::exp(-a_ * t * t); }

double GaussianWeight::eta_hat(double xi) const noexcept {
  return std::sqrt(pi / a_) * std::exp(-pi * pi * xi * xi / a_);
}

double GaussianWeight::eta_hat_zero() const noexcept { return std::sqrt(pi / a_); }

double GaussianWeight::l_half() const noexcept {
  return std::sqrt(pi / a_) * std::exp(1.0 / (16.0 * a_));
}

double GaussianWeight::alpha_l2() const noexcept { return std::sqrt(pi / (2.0 * a_)); }

GaussianKernel::GaussianKernel(double b) : b_(b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::NonPositiveShape, "kernel width b must be positive, got " + std::to_string(b));
  }
}

double GaussianKernel::phi(double u) const noexcept { return std::exp(-b_ * u * u); }

double GaussianKernel::phi_hat(double xi) const noexcept {
  return std::sqrt(pi / b_) * std::exp(-pi * pi * xi * xi / b_);
}

double GaussianKernel::phi_mass() const noexcept { return 0.5 * std::sqrt(pi / b_); }

}  // namespace cheb
