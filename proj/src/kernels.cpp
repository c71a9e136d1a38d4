#include "hrl/kernels.hpp"

#include <cmath>
#include <vector>

#include "hrl/hermite.hpp"
#include "hrl/quadrature.hpp"
#include "hrl/spectral.hpp"
#include "hrl/util.hpp"

namespace hrl {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSingularMargin = 1e-3;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return dot(a, a); }

// |sin t|^{-d/2} e^{-i pi (d/2) floor(t/pi)}: the branch that continues the
// principal positive root on (0, pi) across each singular time
std::complex<double> half_power_branch(double t, int d) {
  double mag = std::pow(std::abs(std::sin(t)), -0.5 * d);
  double cell = std::floor(t / kPi);
  double angle = -0.5 * kPi * d * cell;
  return std::polar(mag, angle);
}

void require_dim_match(std::span<const double> a, std::span<const double> b,
                       const char* who) {
  if (a.size() != b.size() || a.empty())
    throw DomainError(std::string(who) + ": point dimension mismatch");
}

void require_margin(double t, double period, const char* who) {
  double r = std::remainder(t, period);
  if (std::abs(r) < kSingularMargin)
    throw SingularityError(std::string(who) +
                           ": time too close to a singular instant");
}

void require_window_clear(const WindowFunction& w, const char* who) {
  double lo = w.support_lo(), hi = w.support_hi();
  double first = std::ceil(lo / kPi - 0.5);  // candidate multiples of pi
  for (double m = first;; m += 1.0) {
    double s = m * kPi;
    if (s > hi + kSingularMargin) break;
    if (s >= lo - kSingularMargin && s <= hi + kSingularMargin)
      throw SingularityError(std::string(who) +
                             ": window touches a singular time");
  }
}

}  // namespace

double symplectic_form(std::span<const double> z, std::span<const double> zp) {
  require_dim_match(z, zp, "symplectic form");
  if (z.size() % 2 != 0)
    throw DomainError("symplectic form: phase-space dimension must be even");
  std::size_t d = z.size() / 2;
  double s = 0;
  for (std::size_t i = 0; i < d; ++i)
    s += z[i] * zp[d + i] - z[d + i] * zp[i];
  return s;
}

double hermite_phase(double t, std::span<const double> x,
                     std::span<const double> y) {
  require_dim_match(x, y, "oscillator phase");
  double st = std::sin(t), ct = std::cos(t);
  return 0.5 * t + 0.5 * (norm2(x) + norm2(y)) * ct / st - dot(x, y) / st;
}

double twisted_phase(double t, std::span<const double> z,
                     std::span<const double> zp) {
  double sigma = symplectic_form(z, zp);
  double v2 = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double d = z[i] - zp[i];
    v2 += d * d;
  }
  return t + 0.25 * v2 * std::cos(t) / std::sin(t) + 0.5 * sigma;
}

std::complex<double> mehler_kernel(double t, std::span<const double> x,
                                   std::span<const double> y) {
  require_dim_match(x, y, "propagator");
  require_margin(t, 0.5 * kPi, "propagator");
  int d = static_cast<int>(x.size());
  double s = 2.0 * t;
  std::complex<double> amp =
      std::pow(2.0 * kPi, -0.5 * d) * half_power_branch(s, d) *
      std::polar(1.0, -0.25 * kPi * d);
  double phase = 0.5 * (norm2(x) + norm2(y)) * std::cos(s) / std::sin(s) -
                 dot(x, y) / std::sin(s);
  return amp * std::polar(1.0, phase);
}

std::complex<double> twisted_propagator_kernel(double t,
                                               std::span<const double> z,
                                               std::span<const double> zp) {
  require_dim_match(z, zp, "twisted propagator");
  require_margin(t, kPi, "twisted propagator");
  if (z.size() % 2 != 0)
    throw DomainError("twisted propagator: phase-space dimension must be even");
  int d = static_cast<int>(z.size() / 2);
  double v2 = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double dd = z[i] - zp[i];
    v2 += dd * dd;
  }
  std::complex<double> denom(0.0, 4.0 * kPi * std::sin(t));
  std::complex<double> amp = std::pow(denom, -d);
  double phase =
      0.25 * v2 * std::cos(t) / std::sin(t) + 0.5 * symplectic_form(z, zp);
  return amp * std::polar(1.0, phase);
}

std::complex<double> scaled_hermite_kernel(const WindowFunction& w,
                                           double lambda,
                                           std::span<const double> x,
                                           std::span<const double> y) {
  require_dim_match(x, y, "scaled kernel");
  if (!(lambda > 0)) throw DomainError("scaled kernel: lambda must be > 0");
  require_window_clear(w, "scaled kernel");
  int d = static_cast<int>(x.size());

  std::complex<double> c_d = std::pow(2.0 * kPi, -0.5 * d) / (4.0 * kPi) *
                             std::polar(1.0, -0.25 * kPi * d);
  OscillatoryIntegrand I;
  I.t0 = w.support_lo();
  I.t1 = w.support_hi();
  I.lambda = lambda;
  I.phase = [&, x, y](double t) { return hermite_phase(t, x, y); };
  I.amplitude = [&, d](double t) {
    double v = w(t);
    if (v == 0.0) return std::complex<double>(0.0);
    return v * half_power_branch(t, d);
  };
  return c_d * oscillatory_quadrature(I, 1e-10).value;
}

std::complex<double> scaled_twisted_kernel(const WindowFunction& w,
                                           double lambda,
                                           std::span<const double> z,
                                           std::span<const double> zp) {
  require_dim_match(z, zp, "scaled twisted kernel");
  if (z.size() % 2 != 0)
    throw DomainError("scaled twisted kernel: dimension must be even");
  if (!(lambda > 0))
    throw DomainError("scaled twisted kernel: lambda must be > 0");
  require_window_clear(w, "scaled twisted kernel");
  int d = static_cast<int>(z.size() / 2);

  std::complex<double> c_l =
      std::pow(std::complex<double>(0.0, 4.0 * kPi), -d) / (2.0 * kPi);
  OscillatoryIntegrand I;
  I.t0 = w.support_lo();
  I.t1 = w.support_hi();
  I.lambda = lambda;
  I.phase = [&, z, zp](double t) { return twisted_phase(t, z, zp); };
  I.amplitude = [&, d](double t) {
    double v = w(t);
    if (v == 0.0) return std::complex<double>(0.0);
    return std::complex<double>(v * std::pow(std::sin(t), -d));
  };
  return c_l * oscillatory_quadrature(I, 1e-10).value;
}

std::complex<double> smoothed_spectral_sum(
    const std::function<std::complex<double>(double)>& eta_hat, double lambda,
    std::span<const double> x, std::span<const double> y, int d,
    int level_cap) {
  require_dim_match(x, y, "smoothed sum");
  if (static_cast<int>(x.size()) != d)
    throw DomainError("smoothed sum: point dimension mismatch");
  if (level_cap <= 0) level_cap = 4096;

  std::vector<std::vector<double>> hx(d), hy(d);
  for (int a = 0; a < d; ++a) {
    HermiteBank bx(level_cap, x[a]), by(level_cap, y[a]);
    hx[a].resize(level_cap + 1);
    hy[a].resize(level_cap + 1);
    for (int j = 0; j <= level_cap; ++j) {
      hx[a][j] = bx.value(j);
      hy[a][j] = by.value(j);
    }
  }

  std::complex<double> acc = 0;
  int tiny_streak = 0;
  for (int k = 0; k <= level_cap; ++k) {
    int lam = 2 * k + d;
    std::complex<double> weight = eta_hat(0.5 * (lambda - lam));
    if (lam > lambda) {
      tiny_streak = (std::abs(weight) < 1e-14) ? tiny_streak + 1 : 0;
      if (tiny_streak >= 3) return 0.5 * acc;
    }
    if (std::abs(weight) < 1e-14) continue;
    EigenLevel level = enumerate_eigen_multiindices(lam, d);
    double pk = 0;
    for (const MultiIndex& alpha : level.indices) {
      double term = 1;
      for (int a = 0; a < d; ++a) term *= hx[a][alpha[a]] * hy[a][alpha[a]];
      pk += term;
    }
    acc += weight * pk;
  }
  throw ConvergenceError("smoothed sum: weights never fell below threshold",
                         std::abs(acc), std::abs(acc));
}

}  // namespace hrl
