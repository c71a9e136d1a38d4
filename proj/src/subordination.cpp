#include "hrl/subordination.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "hrl/quadrature.hpp"
#include "hrl/util.hpp"

namespace hrl {
namespace {

// central stencils of order h^4 for the n-th derivative, n = 1..4
double stencil_derivative(const std::function<double(double)>& f, double t,
                          int n, double h) {
  switch (n) {
    case 1: {
      constexpr std::array<double, 5> c{1, -8, 0, 8, -1};
      double s = 0;
      for (int i = 0; i < 5; ++i) s += c[i] * f(t + (i - 2) * h);
      return s / (12 * h);
    }
    case 2: {
      constexpr std::array<double, 5> c{-1, 16, -30, 16, -1};
      double s = 0;
      for (int i = 0; i < 5; ++i) s += c[i] * f(t + (i - 2) * h);
      return s / (12 * h * h);
    }
    case 3: {
      constexpr std::array<double, 7> c{1, -8, 13, 0, -13, 8, -1};
      double s = 0;
      for (int i = 0; i < 7; ++i) s += c[i] * f(t + (i - 3) * h);
      return s / (8 * h * h * h);
    }
    case 4: {
      constexpr std::array<double, 7> c{-1, 12, -39, 56, -39, 12, -1};
      double s = 0;
      for (int i = 0; i < 7; ++i) s += c[i] * f(t + (i - 3) * h);
      return s / (6 * h * h * h * h);
    }
    default:
      throw DomainError("subordination: derivative order beyond 4");
  }
}

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double weyl_derivative(const WindowFunction& F, double nu, double t) {
  if (!(nu > 0)) throw DomainError("subordination: order must be positive");
  int n = static_cast<int>(std::ceil(nu - 1e-9));
  double mu = n - nu;

  if (mu < 1e-9) {
    double h = F.width * std::pow(2.2e-16, 1.0 / (4 + n));
    auto f = [&](double s) { return F(s); };
    return sign_pow(n) * stencil_derivative(f, t, n, h);
  }

  // G = Weyl integral of order mu in (0,1); the substitution u = (s-t)^mu
  // absorbs the endpoint singularity
  double hi = F.support_hi();
  auto G = [&](double s) {
    double span = hi - s;
    if (span <= 0) return 0.0;
    double cap = std::pow(span, mu);
    double inv = 1.0 / mu;
    double val = adaptive_quadrature(
        [&](double u) { return F(s + std::pow(u, inv)); }, 0.0, cap, 1e-13);
    return val / std::tgamma(mu + 1.0);
  };
  double h = F.width * std::pow(1e-13, 1.0 / (4 + n));
  return sign_pow(n) * stencil_derivative(G, t, n, h);
}

double riesz_subordination_residual(const WindowFunction& F, double delta,
                                    double lambda) {
  if (!(delta > -1)) throw DomainError("subordination: need delta > -1");
  if (!(F.support_lo() > 0))
    throw DomainError("subordination: profile must be supported in (0, inf)");
  if (!(lambda > 0))
    throw DomainError("subordination: threshold must be positive");

  double hi = F.support_hi();
  if (lambda >= hi) return std::abs(F(lambda));

  double nu = delta + 1.0;
  auto integrand = [&](double t) {
    if (t <= 0) return 0.0;
    double w = 1.0 - lambda / t;
    if (w <= 0) return 0.0;
    return weyl_derivative(F, nu, t) * std::pow(t, delta) * std::pow(w, delta);
  };
  double val =
      adaptive_quadrature(integrand, lambda, hi, 1e-11) / std::tgamma(nu);
  return std::abs(F(lambda) - val);
}

}  // namespace hrl
