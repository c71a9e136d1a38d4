#include "hrl/twisted.hpp"

#include <cmath>

#include "hrl/hermite.hpp"
#include "hrl/kernels.hpp"
#include "hrl/util.hpp"

namespace hrl {
namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

// One coordinate of the transform: (2 pi)^{-1/2} Int e^{i x s}
// h_a(s - y/2) h_b(s + y/2) ds.  Trapezoid on the damped integrand: it is
// Schwartz, so the error is aliasing past pi/h plus the tail beyond the
// truncation radius, both pushed under 1e-12 by the fixed margins.  Quadrature
// against the undamped polynomial part is not an option here: weights below
// ~1e-32 come out as eigenvector noise and get amplified by e^{s^2}.
cplx wigner_factor_1d(int a, int b, double x, double y) {
  double band = std::sqrt(2.0 * a + 1.0) + std::sqrt(2.0 * b + 1.0) +
                std::abs(x) + 12.0;
  double radius =
      std::sqrt(2.0 * std::max(a, b) + 1.0) + 0.5 * std::abs(y) + 9.0;
  double h = kPi / band;
  int m = static_cast<int>(std::ceil(radius / h));
  cplx acc = 0.0;
  for (int i = -m; i <= m; ++i) {
    double s = i * h;
    double ha = hermite_eval(a, s - 0.5 * y)[a];
    double hb = hermite_eval(b, s + 0.5 * y)[b];
    acc += ha * hb * std::polar(1.0, x * s);
  }
  return acc * h / std::sqrt(2.0 * kPi);
}

int half_dimension(std::span<const double> z) {
  if (z.empty() || z.size() % 2 != 0)
    throw DomainError("twisted point must lie in R^{2d}");
  return static_cast<int>(z.size() / 2);
}

}  // namespace

void TwistedKernelContext::validate() const {
  if (d < 1) throw DomainError("TwistedKernelContext: d must be >= 1");
  if (k < 0) throw DomainError("TwistedKernelContext: k must be >= 0");
  Eigen::MatrixXd s = S();
  if ((s + s.transpose()).norm() != 0.0)
    throw Error("TwistedKernelContext: S is not skew");
  if ((s * s + Eigen::MatrixXd::Identity(2 * d, 2 * d)).norm() != 0.0)
    throw Error("TwistedKernelContext: S^2 is not -I");
}

Eigen::MatrixXd TwistedKernelContext::S() const {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    s(i, d + i) = 1.0;
    s(d + i, i) = -1.0;
  }
  return s;
}

double laguerre_eval(int k, int alpha, double t) {
  if (k < 0 || alpha < 0)
    throw DomainError("laguerre_eval: k and alpha must be >= 0");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 + alpha - t;
  for (int j = 1; j < k; ++j) {
    double next = ((2.0 * j + 1.0 + alpha - t) * cur - (j + alpha) * prev) /
                  (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double phi_k(int k, int d, std::span<const double> z) {
  if (k < 0) throw DomainError("phi_k: k must be >= 0");
  if (d < 1) throw DomainError("phi_k: d must be >= 1");
  if (z.size() != static_cast<std::size_t>(2 * d))
    throw DomainError("phi_k: point must lie in R^{2d}");
  double u = 0.0;
  for (double c : z) u += c * c;
  u *= 0.5;
  return std::pow(2.0 * kPi, -d) * laguerre_eval(k, d - 1, u) *
         std::exp(-0.5 * u);
}

cplx fourier_wigner(const MultiIndex& alpha, const MultiIndex& beta,
                    std::span<const double> z) {
  if (alpha.empty() || alpha.size() != beta.size())
    throw DomainError("fourier_wigner: index lengths must match and be positive");
  int d = static_cast<int>(alpha.size());
  if (z.size() != static_cast<std::size_t>(2 * d))
    throw DomainError("fourier_wigner: point must lie in R^{2d}");
  cplx out = 1.0;
  for (int j = 0; j < d; ++j) {
    if (alpha[j] < 0 || beta[j] < 0)
      throw DomainError("fourier_wigner: indices must be >= 0");
    out *= wigner_factor_1d(alpha[j], beta[j], z[j], z[d + j]);
  }
  return out;
}

GridFunction twisted_convolution(const GridFunction& f, const GridFunction& g) {
  f.validate();
  g.validate();
  const Grid& grid = f.grid;
  if (grid.lo != g.grid.lo || grid.hi != g.grid.hi || grid.n != g.grid.n)
    throw DomainError("twisted_convolution: grids differ");
  int dim2 = static_cast<int>(grid.dim());
  if (dim2 % 2 != 0)
    throw DomainError("twisted_convolution: grid dimension must be even");
  int d = dim2 / 2;

  std::vector<std::ptrdiff_t> zero_idx(dim2);
  for (int a = 0; a < dim2; ++a) {
    double pos = -grid.lo[a] / grid.step(a);
    auto idx = static_cast<std::ptrdiff_t>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(idx)) > 1e-9 || idx < 0 ||
        idx >= static_cast<std::ptrdiff_t>(grid.n[a]))
      throw DomainError("twisted_convolution: grid must contain 0 per axis");
    zero_idx[a] = idx;
  }

  std::size_t total = grid.size();
  std::vector<std::vector<int>> multi(total);
  std::vector<std::vector<double>> pts(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    grid.unflatten(flat, multi[flat]);
    pts[flat] = grid.point(flat);
  }
  std::vector<double> wts(total);
  for (std::size_t flat = 0; flat < total; ++flat) wts[flat] = grid.weight(flat);

  GridFunction out;
  out.grid = grid;
  out.values.assign(total, 0.0);
  parallel_for(total, [&](std::size_t zi) {
    const auto& za = multi[zi];
    const auto& zpt = pts[zi];
    cplx acc = 0.0;
    for (std::size_t wi = 0; wi < total; ++wi) {
      if (f.values[wi] == 0.0) continue;
      const auto& wb = multi[wi];
      std::size_t diff_flat = 0;
      bool inside = true;
      for (int a = 0; a < dim2; ++a) {
        auto c = static_cast<std::ptrdiff_t>(za[a]) -
                 static_cast<std::ptrdiff_t>(wb[a]) + zero_idx[a];
        if (c < 0 || c >= static_cast<std::ptrdiff_t>(grid.n[a])) {
          inside = false;
          break;
        }
        diff_flat = diff_flat * grid.n[a] + static_cast<std::size_t>(c);
      }
      if (!inside) continue;
      double twist = 0.0;
      const auto& wpt = pts[wi];
      for (int i = 0; i < d; ++i)
        twist += zpt[i] * wpt[d + i] - zpt[d + i] * wpt[i];
      acc += f.values[wi] * g.values[diff_flat] * wts[wi] *
             std::polar(1.0, 0.5 * twist);
    }
    out.values[zi] = acc;
  });
  return out;
}

cplx special_projection_kernel(int lambda, int d, std::span<const double> z,
                               std::span<const double> zp) {
  if (d < 1) throw DomainError("special_projection_kernel: d must be >= 1");
  if (lambda < d || (lambda - d) % 2 != 0)
    throw ParityError("special_projection_kernel: lambda must lie in 2N+d");
  if (z.size() != zp.size() || z.size() != static_cast<std::size_t>(2 * d))
    throw DomainError("special_projection_kernel: points must lie in R^{2d}");
  int k = (lambda - d) / 2;
  std::vector<double> diff(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) diff[i] = z[i] - zp[i];
  return phi_k(k, d, diff) * std::polar(1.0, 0.5 * symplectic_form(z, zp));
}

cplx bochner_riesz_kernel_L(double lambda, double delta, int d,
                            std::span<const double> z,
                            std::span<const double> zp) {
  if (delta < 0.0) throw DomainError("bochner_riesz_kernel_L: delta must be >= 0");
  if (d < 1) throw DomainError("bochner_riesz_kernel_L: d must be >= 1");
  cplx acc = 0.0;
  for (int lam = d; lam < lambda; lam += 2)
    acc += std::pow(1.0 - lam / lambda, delta) *
           special_projection_kernel(lam, d, z, zp);
  return acc;
}

RateFit sup_kernel_bound_L(std::span<const double> lambda_list, int d) {
  if (lambda_list.size() < 2)
    throw DomainError("sup_kernel_bound_L: need at least 2 lambda values");
  for (std::size_t i = 1; i < lambda_list.size(); ++i)
    if (lambda_list[i] <= lambda_list[i - 1])
      throw DomainError("sup_kernel_bound_L: lambda_list must increase");

  std::vector<std::pair<double, double>> points;
  std::vector<double> z(static_cast<std::size_t>(2 * d), 0.0);
  std::vector<double> zero(static_cast<std::size_t>(2 * d), 0.0);
  for (double lam : lambda_list) {
    int ilam = static_cast<int>(std::llround(lam));
    double mu = std::sqrt(lam);
    double step = kPi / (12.0 * mu);
    double rmax = 6.0 * kPi / mu;
    double sup = 0.0;
    for (double r = 0.0; r <= rmax; r += step) {
      z[0] = r;
      sup = std::max(sup, std::abs(special_projection_kernel(ilam, d, z, zero)));
    }
    points.emplace_back(lam, sup);
  }
  return fit_power_law(points);
}

}  // namespace hrl
