#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "hrl/grid.hpp"
#include "hrl/kernels.hpp"
#include "hrl/quadrature.hpp"
#include "hrl/twisted.hpp"
#include "hrl/util.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

double binom(int n, int k) {
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(n - k + 1.0)));
}

// coefficient series: L_k^a(t) = sum_i (-1)^i binom(k+a, k-i) t^i / i!
double laguerre_series(int k, int a, double t) {
  double acc = 0.0, tp = 1.0, fact = 1.0, sign = 1.0;
  for (int i = 0; i <= k; ++i) {
    acc += sign * binom(k + a, k - i) * tp / fact;
    tp *= t;
    fact *= i + 1.0;
    sign = -sign;
  }
  return acc;
}

hrl::GridFunction sample_wigner(const hrl::Grid& grid, int a, int b) {
  hrl::GridFunction f;
  f.grid = grid;
  f.values.resize(grid.size());
  hrl::MultiIndex alpha{a}, beta{b};
  for (std::size_t i = 0; i < grid.size(); ++i)
    f.values[i] = hrl::fourier_wigner(alpha, beta, grid.point(i));
  return f;
}

hrl::GridFunction sample_phi(const hrl::Grid& grid, int k, int d) {
  hrl::GridFunction f;
  f.grid = grid;
  f.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    f.values[i] = hrl::phi_k(k, d, grid.point(i));
  return f;
}

}  // namespace

TEST_CASE("twisted context invariants") {
  for (int d : {1, 2, 3}) {
    hrl::TwistedKernelContext ctx{d, 4};
    ctx.validate();
    CHECK(ctx.lambda() == 8 + d);
    Eigen::MatrixXd S = ctx.S();
    CHECK((S + S.transpose()).norm() == 0.0);
    CHECK((S * S + Eigen::MatrixXd::Identity(2 * d, 2 * d)).norm() == 0.0);

    std::mt19937_64 rng(17 + d);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::vector<double> z(2 * d), zp(2 * d);
    for (auto& c : z) c = unif(rng);
    for (auto& c : zp) c = unif(rng);
    CHECK(hrl::symplectic_form(z, z) == 0.0);
    Eigen::Map<const Eigen::VectorXd> vz(z.data(), 2 * d);
    Eigen::Map<const Eigen::VectorXd> vzp(zp.data(), 2 * d);
    CHECK(hrl::symplectic_form(z, zp) ==
          doctest::Approx(vz.dot(S * vzp)).epsilon(1e-14));
  }
  CHECK_THROWS_AS((hrl::TwistedKernelContext{0, 1}).validate(),
                  hrl::DomainError);
  CHECK_THROWS_AS((hrl::TwistedKernelContext{1, -1}).validate(),
                  hrl::DomainError);
}

TEST_CASE("laguerre recurrence matches the coefficient series") {
  CHECK(hrl::laguerre_eval(0, 7, 3.3) == 1.0);
  CHECK(hrl::laguerre_eval(1, 3, 2.2) == doctest::Approx(1.0 + 3.0 - 2.2));
  for (auto [k, a, t] : {std::tuple{5, 2, 1.3}, {10, 0, 3.7}, {8, 4, 0.25}}) {
    double rec = hrl::laguerre_eval(k, a, t);
    double ser = laguerre_series(k, a, t);
    CHECK(rec == doctest::Approx(ser).epsilon(1e-12));
  }
  // the alternating series cancels ~4 digits here, so it only certifies 1e-9
  CHECK(hrl::laguerre_eval(12, 1, 7.9) ==
        doctest::Approx(laguerre_series(12, 1, 7.9)).epsilon(1e-9));
  CHECK_THROWS_AS(hrl::laguerre_eval(-1, 0, 1.0), hrl::DomainError);
  CHECK_THROWS_AS(hrl::laguerre_eval(2, -1, 1.0), hrl::DomainError);
}

TEST_CASE("phi_k closed forms at the origin and ground level") {
  std::vector<double> z{0.7, -0.4};
  double u = (0.49 + 0.16) / 2.0;
  CHECK(hrl::phi_k(0, 1, z) ==
        doctest::Approx(std::exp(-0.5 * u) / (2.0 * kPi)).epsilon(1e-14));

  std::vector<double> zero4(4, 0.0), zero6(6, 0.0);
  CHECK(hrl::phi_k(5, 2, zero4) ==
        doctest::Approx(binom(6, 5) * std::pow(2.0 * kPi, -2)).epsilon(1e-13));
  CHECK(hrl::phi_k(4, 3, zero6) ==
        doctest::Approx(binom(6, 4) * std::pow(2.0 * kPi, -3)).epsilon(1e-13));

  CHECK_THROWS_AS(hrl::phi_k(2, 2, z), hrl::DomainError);
  CHECK_THROWS_AS(hrl::phi_k(-1, 1, z), hrl::DomainError);
}

TEST_CASE("phi_k L2 norm: radial quadrature against the binomial value") {
  // |phi_k|_2^2 reduces to the weighted Laguerre norm over the radial
  // profile; the sphere factor is 2 pi^d / (d-1)!.
  auto norm_sq = [](int k, int d) {
    double nu = 4.0 * k + 2.0 * d + 2.0;
    double umax = nu + 40.0 * std::cbrt(nu);
    auto integrand = [k, d](double u) {
      double damped = hrl::laguerre_eval(k, d - 1, u) * std::exp(-0.5 * u);
      return damped * damped * std::pow(u, d - 1);
    };
    double quad = hrl::adaptive_quadrature(integrand, 0.0, umax, 1e-9);
    double sphere = 2.0 * std::pow(kPi, d) / std::tgamma(d);
    return std::pow(2.0 * kPi, -2 * d) * sphere * std::pow(2.0, d - 1) * quad;
  };

  for (int d : {1, 2, 3})
    for (int k : {3, 10}) {
      double expected = std::pow(2.0 * kPi, -d) * binom(k + d - 1, d - 1);
      CHECK(norm_sq(k, d) == doctest::Approx(expected).epsilon(1e-8));
    }

  // d = 2 ladder: |phi_k|_2 = (2 pi)^{-1} sqrt(k+1) grows like lambda^{1/2}
  std::vector<std::pair<double, double>> points;
  for (int k : {12, 25, 50, 100, 200})
    points.emplace_back(2.0 * k + 2.0, std::sqrt(norm_sq(k, 2)));
  hrl::RateFit fit = hrl::fit_power_law(points);
  CHECK(fit.slope == doctest::Approx(0.5).epsilon(0.05));
  CHECK(fit.r2 > 0.999);
}

TEST_CASE("fourier-wigner transform: ground state, gram matrix, identity") {
  std::vector<double> origin{0.0, 0.0};
  cplx g0 = hrl::fourier_wigner({0}, {0}, origin);
  CHECK(std::abs(g0 - std::pow(2.0 * kPi, -0.5)) < 1e-12);

  // orthonormality of the first 16 functions on a box that contains their
  // mass; trapezoid error dominates the 1e-5 budget
  hrl::Grid grid{{-8.0, -8.0}, {8.0, 8.0}, {64, 64}};
  std::vector<hrl::GridFunction> fam;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) fam.push_back(sample_wigner(grid, a, b));
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i; j < fam.size(); ++j) {
      cplx g = hrl::grid_inner(fam[i], fam[j]);
      double expect = i == j ? 1.0 : 0.0;
      CHECK(std::abs(g - expect) < 1e-5);
    }

  // diagonal sums collapse to phi_k
  std::vector<double> z1{0.55, -0.35};
  for (int k = 0; k <= 10; ++k) {
    cplx diag = hrl::fourier_wigner({k}, {k}, z1);
    CHECK(std::abs(std::pow(2.0 * kPi, -0.5) * diag - hrl::phi_k(k, 1, z1)) <
          1e-8);
  }
  std::vector<double> z2{0.3, -0.2, 0.1, 0.4};
  cplx diag2 = hrl::fourier_wigner({1, 0}, {1, 0}, z2) +
               hrl::fourier_wigner({0, 1}, {0, 1}, z2);
  CHECK(std::abs(diag2 / (2.0 * kPi) - hrl::phi_k(1, 2, z2)) < 1e-8);

  CHECK_THROWS_AS(hrl::fourier_wigner({0, 1}, {0}, z2), hrl::DomainError);
  CHECK_THROWS_AS(hrl::fourier_wigner({0}, {0}, z2), hrl::DomainError);
  CHECK_THROWS_AS(hrl::fourier_wigner({-1}, {0}, z1), hrl::DomainError);
}

TEST_CASE("twisted laplacian eigenvalue rides the first index") {
  // L = -Delta - i(x d_y - y d_x) + |z|^2/4 applied by central differences;
  // the grade of the first index sets the eigenvalue, which pins the twist
  // orientation used by the projection kernel and the convolution below.
  double x = 0.3, y = -0.2, h = 1e-4;
  for (auto [a, b] : {std::pair{1, 2}, {2, 1}, {0, 3}}) {
    hrl::MultiIndex ma{a}, mb{b};
    auto F = [&](double u, double v) {
      return hrl::fourier_wigner(ma, mb, std::vector<double>{u, v});
    };
    cplx f0 = F(x, y);
    cplx fxp = F(x + h, y), fxm = F(x - h, y);
    cplx fyp = F(x, y + h), fym = F(x, y - h);
    cplx lap = (fxp + fxm + fyp + fym - 4.0 * f0) / (h * h);
    cplx dx = (fxp - fxm) / (2.0 * h), dy = (fyp - fym) / (2.0 * h);
    cplx Lf = -lap - cplx(0.0, 1.0) * (x * dy - y * dx) +
              0.25 * (x * x + y * y) * f0;
    CHECK(std::abs(Lf / f0 - (2.0 * a + 1.0)) < 1e-5);
  }
}

TEST_CASE("projection kernel: eigensum, diagonal, translation of modulus") {
  std::vector<double> z{0.4, -0.3}, zp{-0.2, 0.5};
  for (int k = 0; k <= 5; ++k) {
    int lambda = 2 * k + 1;
    cplx kernel = hrl::special_projection_kernel(lambda, 1, z, zp);
    cplx sum = 0.0;
    for (int b = 0; b <= 60; ++b)
      sum += hrl::fourier_wigner({k}, {b}, z) *
             std::conj(hrl::fourier_wigner({k}, {b}, zp));
    CHECK(std::abs(kernel - sum) < 1e-4);

    std::vector<double> zero{0.0, 0.0};
    cplx diag = hrl::special_projection_kernel(lambda, 1, z, z);
    CHECK(diag.real() == doctest::Approx(hrl::phi_k(k, 1, zero)).epsilon(1e-14));
    CHECK(diag.imag() == 0.0);

    std::vector<double> diff{z[0] - zp[0], z[1] - zp[1]};
    CHECK(std::abs(kernel) ==
          doctest::Approx(std::abs(hrl::phi_k(k, 1, diff))).epsilon(1e-13));
    std::vector<double> w{0.8, -1.1};
    std::vector<double> zs{z[0] + w[0], z[1] + w[1]};
    std::vector<double> zps{zp[0] + w[0], zp[1] + w[1]};
    cplx shifted = hrl::special_projection_kernel(lambda, 1, zs, zps);
    CHECK(std::abs(shifted) == doctest::Approx(std::abs(kernel)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(hrl::special_projection_kernel(4, 1, z, zp),
                  hrl::ParityError);
  CHECK_THROWS_AS(hrl::special_projection_kernel(0, 1, z, zp),
                  hrl::ParityError);
  std::vector<double> z4(4, 0.1);
  CHECK_THROWS_AS(hrl::special_projection_kernel(3, 1, z4, z4),
                  hrl::DomainError);
}

TEST_CASE("twisted convolution with phi_k projects onto the eigenspace") {
  hrl::Grid grid{{-8.0, -8.0}, {8.0, 8.0}, {41, 41}};
  hrl::GridFunction proj = sample_phi(grid, 2, 1);

  // eigen-reproduction: the first index of f must sit at the level of proj
  hrl::GridFunction f = sample_wigner(grid, 2, 1);
  hrl::GridFunction conv = hrl::twisted_convolution(f, proj);
  cplx c = hrl::grid_inner(f, conv) / hrl::grid_inner(f, f);
  CHECK(std::abs(c - 1.0) < 1e-2);
  double fn = hrl::grid_norm(f), rn = 0.0;
  {
    hrl::GridFunction resid = conv;
    for (std::size_t i = 0; i < resid.values.size(); ++i)
      resid.values[i] -= c * f.values[i];
    rn = hrl::grid_norm(resid);
  }
  CHECK(rn < 1e-3 * fn);

  hrl::GridFunction fm = sample_wigner(grid, 1, 2);
  hrl::GridFunction off = hrl::twisted_convolution(fm, proj);
  CHECK(hrl::grid_norm(off) < 1e-3 * hrl::grid_norm(fm));

  hrl::GridFunction idem = hrl::twisted_convolution(proj, proj);
  hrl::GridFunction diff = idem;
  for (std::size_t i = 0; i < diff.values.size(); ++i)
    diff.values[i] -= proj.values[i];
  CHECK(hrl::grid_norm(diff) < 1e-3 * hrl::grid_norm(proj));

  hrl::GridFunction zerof = proj;
  std::fill(zerof.values.begin(), zerof.values.end(), cplx{0.0});
  hrl::GridFunction z = hrl::twisted_convolution(proj, zerof);
  for (const auto& v : z.values) CHECK(v == cplx{0.0});

  hrl::GridFunction other = proj;
  other.grid.n = {43, 43};
  other.values.resize(other.grid.size());
  CHECK_THROWS_AS(hrl::twisted_convolution(f, other), hrl::DomainError);

  hrl::Grid odd{{-8.0}, {8.0}, {41}};
  hrl::GridFunction fo;
  fo.grid = odd;
  fo.values.assign(odd.size(), cplx{1.0});
  CHECK_THROWS_AS(hrl::twisted_convolution(fo, fo), hrl::DomainError);

  hrl::Grid shifted{{0.1, -8.0}, {8.1, 8.0}, {41, 41}};
  hrl::GridFunction fs;
  fs.grid = shifted;
  fs.values.assign(shifted.size(), cplx{1.0});
  CHECK_THROWS_AS(hrl::twisted_convolution(fs, fs), hrl::DomainError);
}

TEST_CASE("riesz kernel sums the spectrum strictly below lambda") {
  std::vector<double> z{0.4, -0.3}, zp{-0.2, 0.5};
  auto direct = [&](double lambda, double delta) {
    cplx acc = 0.0;
    for (int kp = 0; 2 * kp + 1 < lambda; ++kp) {
      std::vector<double> diff{z[0] - zp[0], z[1] - zp[1]};
      acc += std::pow(1.0 - (2.0 * kp + 1.0) / lambda, delta) *
             hrl::phi_k(kp, 1, diff) *
             std::polar(1.0, 0.5 * hrl::symplectic_form(z, zp));
    }
    return acc;
  };
  for (double lambda : {10.0, 9.7, 21.0})
    for (double delta : {0.0, 1.0, 2.5}) {
      cplx got = hrl::bochner_riesz_kernel_L(lambda, delta, 1, z, zp);
      CHECK(std::abs(got - direct(lambda, delta)) < 1e-14);
    }

  CHECK(hrl::bochner_riesz_kernel_L(1.0, 1.0, 1, z, zp) == cplx{0.0});
  CHECK(hrl::bochner_riesz_kernel_L(0.3, 1.0, 1, z, zp) == cplx{0.0});
  cplx on_diag = hrl::bochner_riesz_kernel_L(15.0, 0.5, 1, z, z);
  CHECK(on_diag.imag() == doctest::Approx(0.0));
  CHECK(on_diag.real() > 0.0);
  CHECK_THROWS_AS(hrl::bochner_riesz_kernel_L(10.0, -0.1, 1, z, zp),
                  hrl::DomainError);
}

TEST_CASE("sup of the projection kernel grows like lambda^{d-1}") {
  std::vector<double> flat{21.0, 41.0, 81.0, 161.0};
  hrl::RateFit f1 = hrl::sup_kernel_bound_L(flat, 1);
  CHECK(std::abs(f1.slope) < 0.05);

  std::vector<double> plane{22.0, 42.0, 82.0, 162.0};
  hrl::RateFit f2 = hrl::sup_kernel_bound_L(plane, 2);
  CHECK(f2.slope == doctest::Approx(1.0).epsilon(0.1));
  CHECK(f2.r2 > 0.99);

  std::vector<double> single{21.0};
  CHECK_THROWS_AS(hrl::sup_kernel_bound_L(single, 1), hrl::DomainError);
  std::vector<double> decreasing{41.0, 21.0};
  CHECK_THROWS_AS(hrl::sup_kernel_bound_L(decreasing, 1), hrl::DomainError);
  std::vector<double> off_parity{21.0, 40.0};
  CHECK_THROWS_AS(hrl::sup_kernel_bound_L(off_parity, 1), hrl::ParityError);
}
