#include <cmath>
#include <complex>

#include "doctest.h"
#include "hrl/quadrature.hpp"
#include "hrl/util.hpp"
#include "hrl/window.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gauss-hermite integrates hermite-weighted polynomials exactly") {
  auto rule = hrl::gauss_hermite(12);
  double m0 = 0, m2 = 0, m4 = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double x = rule.nodes[i], w = rule.weights[i];
    m0 += w;
    m2 += w * x * x;
    m4 += w * x * x * x * x;
  }
  CHECK(m0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-13));
  CHECK(m4 == doctest::Approx(0.75 * std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("gauss-laguerre moments match gamma function") {
  auto rule = hrl::gauss_laguerre(20, 1.0);  // weight x e^{-x}
  double m0 = 0, m1 = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    m0 += rule.weights[i];
    m1 += rule.weights[i] * rule.nodes[i];
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));           // Gamma(2)
  CHECK(m1 == doctest::Approx(2.0).epsilon(1e-13));           // Gamma(3)
}

TEST_CASE("gauss-legendre on smooth integrand") {
  auto rule = hrl::gauss_legendre(24);
  double acc = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * std::cos(rule.nodes[i]);
  CHECK(acc == doctest::Approx(2.0 * std::sin(1.0)).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature hits analytic values and reports budget exhaustion") {
  double v = hrl::adaptive_quadrature([](double x) { return std::exp(-x * x); },
                                      -8.0, 8.0);
  CHECK(v == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  CHECK_THROWS_AS(
      (void)hrl::adaptive_quadrature(
          [](double x) { return std::cos(4000.0 * x); }, 0.0, 1.0, 1e-13, 8),
      hrl::ConvergenceError);
}

TEST_CASE("oscillatory quadrature: trivial cases") {
  hrl::OscillatoryIntegrand I;
  I.phase = [](double t) { return t * t; };
  I.amplitude = [](double) { return std::complex<double>(0.0, 0.0); };
  I.t0 = 0.0;
  I.t1 = 1.0;
  I.lambda = 300.0;
  auto r = hrl::oscillatory_quadrature(I);
  CHECK(std::abs(r.value) == 0.0);

  // phase == 0 reduces to plain quadrature of the amplitude
  I.phase = [](double) { return 0.0; };
  I.amplitude = [](double t) { return std::complex<double>(t, 0.0); };
  r = hrl::oscillatory_quadrature(I);
  CHECK(r.value.real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("oscillatory quadrature reproduces the gaussian window transform") {
  hrl::WindowFunction w{1.0, 0.8, hrl::WindowProfile::gaussian};
  double lambda = 37.0;
  hrl::OscillatoryIntegrand I;
  I.phase = [](double t) { return t; };
  I.amplitude = [&](double t) { return std::complex<double>(w(t), 0.0); };
  I.t0 = w.support_lo();
  I.t1 = w.support_hi();
  I.lambda = lambda;
  auto r = hrl::oscillatory_quadrature(I, 1e-12);
  std::complex<double> expected = 2.0 * kPi * w.eta_hat(lambda);
  CHECK(std::abs(r.value - expected) <= 1e-8 * std::abs(expected) + 1e-15);
}

TEST_CASE("stationary phase leading term on the fresnel model") {
  hrl::OscillatoryIntegrand I;
  I.phase = [](double t) { return 0.5 * t * t; };
  I.amplitude = [](double) { return std::complex<double>(1.0, 0.0); };
  I.t0 = -1.0;
  I.t1 = 1.0;
  I.lambda = 50.0;
  auto lead = hrl::stationary_phase_leading(I, 0.0);
  std::complex<double> expected =
      std::sqrt(2.0 * kPi / I.lambda) *
      std::exp(std::complex<double>(0.0, kPi / 4.0));
  CHECK(std::abs(lead - expected) <= 1e-6 * std::abs(expected));

  I.phase = [](double t) { return t * t * t; };  // degenerate at 0
  CHECK_THROWS_AS((void)hrl::stationary_phase_leading(I, 0.0), hrl::DomainError);
}

TEST_CASE("window profiles: support, range, peak") {
  for (auto prof : {hrl::WindowProfile::gaussian, hrl::WindowProfile::mollifier,
                    hrl::WindowProfile::cospower}) {
    hrl::WindowFunction w{2.0, 0.5, prof};
    CHECK(w(2.0) == doctest::Approx(1.0));
    CHECK(w(2.51) == 0.0);
    CHECK(w(1.49) == 0.0);
    for (double t = 1.4; t < 2.6; t += 0.01) {
      CHECK(w(t) >= 0.0);
      CHECK(w(t) <= 1.0);
    }
  }
  CHECK(hrl::window_profile_from_name("mollifier") == hrl::WindowProfile::mollifier);
  CHECK_THROWS_AS((void)hrl::window_profile_from_name("box"), hrl::DomainError);
}

TEST_CASE("gaussian eta_hat matches direct quadrature") {
  hrl::WindowFunction w{0.7, 1.2, hrl::WindowProfile::gaussian};
  for (double tau : {0.0, 1.5, -6.0, 20.0}) {
    auto direct = hrl::adaptive_quadrature_c(
        [&](double t) {
          return w(t) * std::exp(std::complex<double>(0.0, t * tau));
        },
        w.support_lo(), w.support_hi(), 1e-13);
    direct /= 2.0 * kPi;
    CHECK(std::abs(w.eta_hat(tau) - direct) <= 1e-12);
  }
}
