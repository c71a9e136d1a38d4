#include "hrl/hermite.hpp"

#include <algorithm>
#include <cmath>

#include "hrl/util.hpp"

namespace hrl {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;
}  // namespace

std::vector<double> hermite_eval(int k_max, double t) {
  if (k_max < 0) throw DomainError("hermite_eval: k_max < 0");
  if (!std::isfinite(t)) throw DomainError("hermite_eval: non-finite abscissa");
  std::vector<double> h(k_max + 1);
  h[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * t * t);
  if (k_max >= 1) h[1] = std::sqrt(2.0) * t * h[0];
  for (int k = 1; k < k_max; ++k)
    h[k + 1] = std::sqrt(2.0 / (k + 1)) * t * h[k] -
               std::sqrt(k / (k + 1.0)) * h[k - 1];
  return h;
}

std::vector<double> hermite_derivatives(std::span<const double> values, double t) {
  std::vector<double> d(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    double lower = k == 0 ? 0.0 : std::sqrt(2.0 * k) * values[k - 1];
    d[k] = lower - t * values[k];
  }
  return d;
}

HermiteBank::HermiteBank(int k_max, double t) : k_max_(k_max), t_(t) {
  if (k_max < 0) throw DomainError("hermite bank: k_max < 0");
  if (!std::isfinite(t)) throw DomainError("hermite bank: non-finite abscissa");
  mant_.resize(k_max + 1);
  exp2_.resize(k_max + 1);
  // log2 of h_0, split into integer exponent and [1,2) mantissa territory.
  double e = (-0.5 * t * t - 0.25 * std::log(kPi)) / kLn2;
  long E = static_cast<long>(std::floor(e));
  double a = std::exp2(e - E);  // h_0 mantissa at exponent E
  mant_[0] = a;
  exp2_[0] = E;
  if (k_max == 0) return;
  double b = std::sqrt(2.0) * t * a;  // h_1 at the same exponent
  // Keep the live pair (a,b) on one shared exponent; renormalize in steps of
  // 2^{+-256} so the mantissas stay comfortably inside double range.
  auto renorm = [&](double& x, double& y, long& Ecur) {
    double m = std::max(std::abs(x), std::abs(y));
    while (m > 0x1p+256) {
      x *= 0x1p-256;
      y *= 0x1p-256;
      Ecur += 256;
      m *= 0x1p-256;
    }
    while (m != 0.0 && m < 0x1p-256) {
      x *= 0x1p+256;
      y *= 0x1p+256;
      Ecur -= 256;
      m *= 0x1p+256;
    }
  };
  renorm(a, b, E);
  mant_[1] = b;
  exp2_[1] = E;
  for (int k = 1; k < k_max; ++k) {
    double c = std::sqrt(2.0 / (k + 1)) * t * b - std::sqrt(k / (k + 1.0)) * a;
    a = b;
    b = c;
    renorm(a, b, E);
    mant_[k + 1] = b;
    exp2_[k + 1] = E;
  }
}

double HermiteBank::value(int k) const {
  if (k < 0 || k > k_max_) throw DomainError("hermite bank: index out of range");
  long e = exp2_[k];
  if (e < -1100) return 0.0;  // far below subnormal range
  return std::ldexp(mant_[k], static_cast<int>(e));
}

double HermiteBank::derivative(int k) const {
  double lower = k == 0 ? 0.0 : std::sqrt(2.0 * k) * value(k - 1);
  return lower - t_ * value(k);
}

double hermite_tensor_eval(std::span<const int> alpha, std::span<const double> x) {
  if (alpha.size() != x.size())
    throw DomainError("hermite tensor: dimension mismatch");
  double prod = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    HermiteBank bank(alpha[i], x[i]);
    prod *= bank.value(alpha[i]);
  }
  return prod;
}

double turning_phase_s(double mu, double t, bool plus_side) {
  if (!(mu > 0)) throw DomainError("turning phase: mu must be positive");
  if (plus_side) {
    if (t < mu) throw DomainError("turning phase: plus side needs t >= mu");
    double r = std::sqrt(t * t - mu * mu);
    return 0.5 * (t * r - mu * mu * std::log((t + r) / mu));
  }
  if (std::abs(t) > mu)
    throw DomainError("turning phase: minus side needs |t| <= mu");
  double r = std::sqrt(mu * mu - t * t);
  return 0.5 * (t * r + mu * mu * std::asin(t / mu));
}

AsymptoticRegime asymptotic_regime(int k, double t) {
  if (k < 0) throw DomainError("asymptotic regime: k < 0");
  double mu = std::sqrt(2.0 * k + 1.0);
  double a = std::abs(t);
  double band = std::pow(mu, -1.0 / 3.0);
  if (a < mu - band) {
    double mag = std::pow(mu * mu - a * a, -0.25);
    return {RegimeTag::oscillatory, mag, turning_phase_s(mu, a, false)};
  }
  if (a > mu + band) {
    double s = turning_phase_s(mu, a, true);
    double mag = std::pow(a * a - mu * mu, -0.25) * std::exp(-s);
    return {RegimeTag::decay, mag, s};
  }
  return {RegimeTag::transition, std::pow(mu, -1.0 / 6.0), 0.0};
}

double hermite_orthonormality_residual(int k_max, double points_per_osc) {
  double mu = std::sqrt(2.0 * k_max + 1.0);
  double L = mu + 10.0;
  // Highest local frequency is mu; one oscillation spans 2 pi / mu.
  double step = 2.0 * kPi / (mu * points_per_osc);
  int n = static_cast<int>(std::ceil(2.0 * L / step));
  double h = 2.0 * L / n;

  // Gram matrix accumulated from rank-1 updates per node (trapezoid weights).
  int m = k_max + 1;
  std::vector<double> gram(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<double> vals(m);
  for (int i = 0; i <= n; ++i) {
    double t = -L + i * h;
    double w = (i == 0 || i == n) ? 0.5 * h : h;
    HermiteBank bank(k_max, t);  // plain recurrence underflows past |t| ~ 38
    for (int j = 0; j < m; ++j) vals[j] = bank.value(j);
    for (int j = 0; j < m; ++j) {
      double wj = w * vals[j];
      if (wj == 0.0) continue;
      double* row = gram.data() + static_cast<std::size_t>(j) * m;
      for (int k = j; k < m; ++k) row[k] += wj * vals[k];
    }
  }
  double worst = 0.0;
  for (int j = 0; j < m; ++j)
    for (int k = j; k < m; ++k) {
      double target = (j == k) ? 1.0 : 0.0;
      worst = std::max(worst,
                       std::abs(gram[static_cast<std::size_t>(j) * m + k] - target));
    }
  return worst;
}

double hermite_envelope_constant(int k_max, int k_stride) {
  double C = 0.0;
  for (int k = 1; k <= k_max; k += std::max(1, k_stride)) {
    double mu = std::sqrt(2.0 * k + 1.0);
    double hi = mu + 5.0;
    int n = 800;
    for (int i = 0; i <= n; ++i) {
      double t = hi * i / n;
      HermiteBank bank(k, t);
      double mag = asymptotic_regime(k, t).predicted_magnitude;
      if (mag <= 0.0) continue;
      C = std::max(C, std::abs(bank.value(k)) / mag);
    }
  }
  return C;
}

}  // namespace hrl
