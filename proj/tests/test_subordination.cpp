#include <cmath>

#include "doctest.h"
#include "hrl/subordination.hpp"
#include "hrl/util.hpp"
#include "hrl/window.hpp"

namespace {
const hrl::WindowFunction kBump{6.0, 4.0, hrl::WindowProfile::gaussian};
}

TEST_CASE("integer-order decaying-side derivative matches analytic form") {
  double sigma = kBump.width / 9.5;
  for (double t : {4.5, 6.0, 7.2}) {
    double analytic = (t - kBump.center) / (sigma * sigma) * kBump(t);
    CHECK(hrl::weyl_derivative(kBump, 1.0, t) ==
          doctest::Approx(analytic).epsilon(1e-8));
  }
}

TEST_CASE("subordination identity at whole-number orders") {
  for (double lam : {5.0, 6.3, 7.5}) {
    CHECK(hrl::riesz_subordination_residual(kBump, 0.0, lam) < 1e-8);
    CHECK(hrl::riesz_subordination_residual(kBump, 1.0, lam) < 1e-8);
    CHECK(hrl::riesz_subordination_residual(kBump, 2.0, lam) < 1e-6);
  }

  for (auto profile :
       {hrl::WindowProfile::mollifier, hrl::WindowProfile::cospower}) {
    hrl::WindowFunction f{6.0, 4.0, profile};
    for (double delta : {0.0, 1.0, 2.0})
      CHECK(hrl::riesz_subordination_residual(f, delta, 6.3) < 1e-6);
  }
}

TEST_CASE("thresholds outside the support") {
  CHECK(hrl::riesz_subordination_residual(kBump, 1.0, 20.0) == 0.0);
  CHECK(hrl::riesz_subordination_residual(kBump, 1.0, 0.5) < 1e-8);
}

TEST_CASE("fractional orders") {
  CHECK(hrl::riesz_subordination_residual(kBump, 0.5, 6.3) < 1e-5);
  CHECK(hrl::riesz_subordination_residual(kBump, 1.5, 6.3) < 1e-3);
}

TEST_CASE("rejects ill-posed inputs") {
  hrl::WindowFunction touches_zero{1.0, 2.0, hrl::WindowProfile::gaussian};
  CHECK_THROWS_AS(
      (void)hrl::riesz_subordination_residual(touches_zero, 1.0, 1.0),
      hrl::DomainError);
  CHECK_THROWS_AS((void)hrl::riesz_subordination_residual(kBump, -1.0, 6.0),
                  hrl::DomainError);
  CHECK_THROWS_AS((void)hrl::riesz_subordination_residual(kBump, 1.0, -2.0),
                  hrl::DomainError);
  CHECK_THROWS_AS((void)hrl::riesz_subordination_residual(kBump, 3.5, 6.0),
                  hrl::DomainError);
  CHECK_THROWS_AS((void)hrl::weyl_derivative(kBump, 0.0, 6.0),
                  hrl::DomainError);
}
