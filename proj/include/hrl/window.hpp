#pragma once

#include <complex>
#include <string>

namespace hrl {

enum class WindowProfile { gaussian, mollifier, cospower };

WindowProfile window_profile_from_name(const std::string& name);
std::string window_profile_name(WindowProfile p);

// Smooth time cutoff supported in [center-width, center+width] with values
// in [0,1] and peak 1 at the center.
//   gaussian  : exp(-(t-c)^2 / (2 sigma^2)), sigma = width/9.5 (edge ~ 3e-20)
//   mollifier : exp(1 - 1/(1-u^2)),  u = (t-c)/width
//   cospower  : cos^8(pi u / 2)
struct WindowFunction {
  double center = 0;
  double width = 0;
  WindowProfile profile = WindowProfile::gaussian;
  // C_n / width^n derivative growth contract, recorded for reporting.
  double derivative_bound_scale() const { return 1.0 / width; }

  double operator()(double t) const;
  double support_lo() const { return center - width; }
  double support_hi() const { return center + width; }

  // (2 pi)^{-1} integral eta(t) e^{i t tau} dt; analytic for the gaussian
  // profile, adaptive quadrature otherwise.
  std::complex<double> eta_hat(double tau) const;
};

}  // namespace hrl
