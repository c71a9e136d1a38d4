#include "hrl/window.hpp"

#include <cmath>

#include "hrl/quadrature.hpp"
#include "hrl/util.hpp"

namespace hrl {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kGaussianSigmas = 9.5;  // support half-width in sigmas
}  // namespace

WindowProfile window_profile_from_name(const std::string& name) {
  if (name == "gaussian") return WindowProfile::gaussian;
  if (name == "mollifier") return WindowProfile::mollifier;
  if (name == "cospower") return WindowProfile::cospower;
  throw DomainError("window: unknown profile '" + name +
                    "' (expected gaussian|mollifier|cospower)");
}

std::string window_profile_name(WindowProfile p) {
  switch (p) {
    case WindowProfile::gaussian: return "gaussian";
    case WindowProfile::mollifier: return "mollifier";
    case WindowProfile::cospower: return "cospower";
  }
  return "?";
}

double WindowFunction::operator()(double t) const {
  double u = (t - center) / width;
  if (!(std::abs(u) < 1.0)) return 0.0;
  switch (profile) {
    case WindowProfile::gaussian: {
      double s = width / kGaussianSigmas;
      double r = (t - center) / s;
      return std::exp(-0.5 * r * r);
    }
    case WindowProfile::mollifier:
      return std::exp(1.0 - 1.0 / (1.0 - u * u));
    case WindowProfile::cospower: {
      double c = std::cos(0.5 * kPi * u);
      double c2 = c * c;
      return c2 * c2 * c2 * c2;
    }
  }
  return 0.0;
}

std::complex<double> WindowFunction::eta_hat(double tau) const {
  if (profile == WindowProfile::gaussian) {
    double s = width / kGaussianSigmas;
    return (s / std::sqrt(2.0 * kPi)) * std::exp(-0.5 * s * s * tau * tau) *
           std::exp(std::complex<double>(0.0, center * tau));
  }
  auto f = [&](double t) {
    return (*this)(t)*std::exp(std::complex<double>(0.0, t * tau));
  };
  return adaptive_quadrature_c(f, support_lo(), support_hi(), 1e-13, 60000) /
         (2.0 * kPi);
}

}  // namespace hrl
