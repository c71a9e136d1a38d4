#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "hrl/hermite.hpp"
#include "hrl/kernels.hpp"
#include "hrl/spectral.hpp"
#include "hrl/util.hpp"
#include "hrl/window.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

// polynomial extrapolation of f(eps) to eps = 0 through eps_j = eps0 / 2^j
template <typename F>
cplx richardson_to_zero(F f, double eps0, int levels) {
  std::vector<cplx> row(levels);
  std::vector<double> eps(levels);
  for (int j = 0; j < levels; ++j) {
    eps[j] = eps0 / std::pow(2.0, j);
    row[j] = f(eps[j]);
  }
  for (int m = 1; m < levels; ++m)
    for (int j = levels - 1; j >= m; --j)
      row[j] = row[j] + (row[j] - row[j - 1]) * eps[j] / (eps[j - m] - eps[j]);
  return row[levels - 1];
}

// damped free-oscillator eigensum, d = 1
cplx mehler_eigensum(double t, double x, double y) {
  int k_max = 4000;
  hrl::HermiteBank bx(k_max, x), by(k_max, y);
  return richardson_to_zero(
      [&](double eps) {
        cplx acc = 0;
        for (int k = 0; k <= k_max; ++k) {
          double e = 2.0 * k + 1.0;
          acc += std::exp(cplx(-eps * e, -t * e)) * bx.value(k) * by.value(k);
        }
        return acc;
      },
      0.2, 6);
}

// damped twisted eigensum, d = 1, via the Laguerre recurrence
cplx twisted_eigensum(double t, std::array<double, 2> z,
                      std::array<double, 2> zp) {
  double v2 = 0;
  for (int i = 0; i < 2; ++i) v2 += (z[i] - zp[i]) * (z[i] - zp[i]);
  double u = 0.5 * v2;
  double sigma = z[0] * zp[1] - z[1] * zp[0];
  int k_max = 4000;
  std::vector<double> lag(k_max + 1);
  lag[0] = 1.0;
  lag[1] = 1.0 - u;
  for (int k = 1; k < k_max; ++k)
    lag[k + 1] = ((2.0 * k + 1.0 - u) * lag[k] - k * lag[k - 1]) / (k + 1.0);
  double gauss = std::exp(-0.25 * v2) / (2.0 * kPi);
  cplx twist = std::polar(1.0, 0.5 * sigma);
  return richardson_to_zero(
      [&](double eps) {
        cplx acc = 0;
        for (int k = 0; k <= k_max; ++k) {
          double e = 2.0 * k + 1.0;
          acc += std::exp(cplx(-eps * e, -t * e)) * lag[k];
        }
        return acc * gauss * twist;
      },
      0.2, 6);
}
}  // namespace

TEST_CASE("propagator modulus, symmetry, and singular margins") {
  std::vector<double> x{0.3, -1.2}, y{0.7, 0.4};
  for (double t : {0.3, 1.1, 2.0, -0.9}) {
    cplx k = hrl::mehler_kernel(t, x, y);
    double expect = std::pow(2.0 * kPi * std::abs(std::sin(2.0 * t)), -1.0);
    CHECK(std::abs(k) == doctest::Approx(expect).epsilon(1e-13));
    cplx swapped = hrl::mehler_kernel(t, y, x);
    CHECK(std::abs(k - swapped) < 1e-13 * std::abs(k));
  }
  CHECK_THROWS_AS((void)hrl::mehler_kernel(kPi / 2 + 1e-4, x, y),
                  hrl::SingularityError);
  CHECK_THROWS_AS((void)hrl::mehler_kernel(1e-4, x, y),
                  hrl::SingularityError);
}

TEST_CASE("propagator matches the damped eigensum") {
  double t = kPi / 8, x = 0.3, y = -0.2;
  std::vector<double> xs{x}, ys{y};
  cplx direct = hrl::mehler_kernel(t, xs, ys);
  cplx oracle = mehler_eigensum(t, x, y);
  CHECK(std::abs(direct - oracle) < 1e-5 * std::abs(direct));
}

TEST_CASE("twisted propagator modulus and eigensum") {
  std::vector<double> z{0.4, -0.3}, zp{0.1, 0.5};
  for (double t : {0.5, 1.3, 2.6}) {
    cplx k = hrl::twisted_propagator_kernel(t, z, zp);
    CHECK(std::abs(k) ==
          doctest::Approx(std::pow(4.0 * kPi * std::abs(std::sin(t)), -1.0))
              .epsilon(1e-13));
  }
  // no symplectic twist on the diagonal
  CHECK(hrl::symplectic_form(z, z) == 0.0);
  CHECK_THROWS_AS((void)hrl::twisted_propagator_kernel(kPi + 5e-4, z, zp),
                  hrl::SingularityError);

  double t = kPi / 6;
  cplx direct = hrl::twisted_propagator_kernel(t, z, zp);
  cplx oracle = twisted_eigensum(t, {z[0], z[1]}, {zp[0], zp[1]});
  CHECK(std::abs(direct - oracle) < 1e-4 * std::abs(direct));
}

TEST_CASE("scaled kernel equals the smoothed spectral sum") {
  hrl::WindowFunction w{kPi / 2, 9.5 * kPi / 20, hrl::WindowProfile::gaussian};
  std::vector<double> x{0.3}, y{-0.2};
  for (double lambda : {21.0, 41.0, 81.0}) {
    cplx quad = hrl::scaled_hermite_kernel(w, lambda, x, y);
    double r = std::sqrt(lambda);
    std::vector<double> sx{r * x[0]}, sy{r * y[0]};
    cplx sum = hrl::smoothed_spectral_sum(
        [&](double tau) { return w.eta_hat(tau); }, lambda, sx, sy, 1);
    CHECK(std::abs(quad - sum) < 1e-6 * std::abs(sum));
  }
}

TEST_CASE("window reflection and shift leave the kernel modulus intact") {
  hrl::WindowFunction w{kPi / 2, 1.2, hrl::WindowProfile::cospower};
  hrl::WindowFunction reflected{-kPi / 2, 1.2, hrl::WindowProfile::cospower};
  hrl::WindowFunction shifted{-kPi / 2, 1.2, hrl::WindowProfile::cospower};
  double lambda = 41;
  auto rng = hrl::item_rng(11, 0);
  std::uniform_real_distribution<double> unif(-0.9, 0.9);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<double> x{unif(rng)}, y{unif(rng)}, neg_y{0.0};
    neg_y[0] = -y[0];
    double base = std::abs(hrl::scaled_hermite_kernel(w, lambda, x, y));
    // time reversal
    double refl = std::abs(hrl::scaled_hermite_kernel(reflected, lambda, x, y));
    CHECK(refl == doctest::Approx(base).epsilon(1e-8));
    // shift by a half period sends y to -y; shifted window = w(. + pi)
    double shft =
        std::abs(hrl::scaled_hermite_kernel(shifted, lambda, x, neg_y));
    CHECK(shft == doctest::Approx(base).epsilon(1e-8));
  }
}

TEST_CASE("scaled twisted kernel: eigensum, shift, translation") {
  hrl::WindowFunction w{kPi / 2, 9.5 * kPi / 20, hrl::WindowProfile::gaussian};
  double lambda = 22;
  std::vector<double> z{0.2, -0.1}, zp{0.3, 0.15};

  cplx quad = hrl::scaled_twisted_kernel(w, lambda, z, zp);
  double r = std::sqrt(lambda);
  std::vector<double> sz{r * z[0], r * z[1]}, szp{r * zp[0], r * zp[1]};
  // independent eigensum with the same window transform
  cplx sum = 0;
  {
    double v2 = 0;
    for (int i = 0; i < 2; ++i) v2 += (sz[i] - szp[i]) * (sz[i] - szp[i]);
    double u = 0.5 * v2;
    int cap = 600;
    std::vector<double> lag(cap + 1);
    lag[0] = 1.0;
    lag[1] = 1.0 - u;
    for (int k = 1; k < cap; ++k)
      lag[k + 1] = ((2.0 * k + 1.0 - u) * lag[k] - k * lag[k - 1]) / (k + 1.0);
    double gauss = std::exp(-0.25 * v2) / (2.0 * kPi);
    cplx twist = std::polar(1.0, 0.5 * hrl::symplectic_form(sz, szp));
    for (int k = 0; k <= cap; ++k)
      sum += w.eta_hat(lambda - (2.0 * k + 1.0)) * lag[k] * gauss * twist;
  }
  CHECK(std::abs(quad - sum) < 1e-6 * std::abs(sum));

  // window shifted by the period changes only the phase
  hrl::WindowFunction back{kPi / 2 - kPi, 9.5 * kPi / 20,
                           hrl::WindowProfile::gaussian};
  cplx shifted = hrl::scaled_twisted_kernel(back, lambda, z, zp);
  CHECK(std::abs(shifted) ==
        doctest::Approx(std::abs(quad)).epsilon(1e-8));

  // joint translation leaves the modulus alone
  std::vector<double> z0{0.7, -0.4};
  std::vector<double> tz{z[0] + z0[0], z[1] + z0[1]},
      tzp{zp[0] + z0[0], zp[1] + z0[1]};
  cplx moved = hrl::scaled_twisted_kernel(w, lambda, tz, tzp);
  CHECK(std::abs(moved) == doctest::Approx(std::abs(quad)).epsilon(1e-8));
}

TEST_CASE("smoothed sum corner cases") {
  std::vector<double> x{0.4}, y{0.4};
  // concentration at a single level
  auto spike = [](double tau) {
    return cplx(std::exp(-1e4 * tau * tau), 0.0);
  };
  cplx val = hrl::smoothed_spectral_sum(spike, 9.0, x, y, 1);
  double half_pi = 0.5 * hrl::hermite_projection_kernel(9, 1, x, y);
  CHECK(std::abs(val - half_pi) < 1e-10);

  std::vector<double> u{0.3}, v{-0.6};
  cplx a = hrl::smoothed_spectral_sum(spike, 9.0, u, v, 1);
  cplx b = hrl::smoothed_spectral_sum(spike, 9.0, v, u, 1);
  CHECK(std::abs(a - b) < 1e-15);

  auto flat = [](double) { return cplx(1.0, 0.0); };
  CHECK_THROWS_AS((void)hrl::smoothed_spectral_sum(flat, 9.0, x, y, 1, 50),
                  hrl::ConvergenceError);
}

TEST_CASE("scaled kernel input validation") {
  hrl::WindowFunction touching{kPi - 0.1, 0.2, hrl::WindowProfile::gaussian};
  std::vector<double> x{0.1}, y{0.2};
  CHECK_THROWS_AS((void)hrl::scaled_hermite_kernel(touching, 21, x, y),
                  hrl::SingularityError);
  hrl::WindowFunction w{kPi / 2, 1.0, hrl::WindowProfile::gaussian};
  CHECK_THROWS_AS((void)hrl::scaled_hermite_kernel(w, 0.0, x, y),
                  hrl::DomainError);
  std::vector<double> z{0.1, 0.2, 0.3};
  CHECK_THROWS_AS((void)hrl::scaled_twisted_kernel(w, 21, z, z),
                  hrl::DomainError);
}
