#include "hrl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "hrl/hermite.hpp"
#include "hrl/util.hpp"

namespace hrl {
namespace {

constexpr double kPi = 3.14159265358979323846;

void compositions_desc(int k, int parts, MultiIndex& prefix,
                       std::vector<MultiIndex>& out) {
  if (parts == 1) {
    prefix.push_back(k);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = k; first >= 0; --first) {
    prefix.push_back(first);
    compositions_desc(k - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

// h_0..h_k at each coordinate of p, one bank row per axis.
std::vector<std::vector<double>> bank_rows(std::span<const double> p, int k) {
  std::vector<std::vector<double>> rows(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) {
    HermiteBank bank(k, p[a]);
    rows[a].resize(k + 1);
    for (int j = 0; j <= k; ++j) rows[a][j] = bank.value(j);
  }
  return rows;
}

double level_kernel(const EigenLevel& level,
                    const std::vector<std::vector<double>>& hx,
                    const std::vector<std::vector<double>>& hy) {
  double acc = 0;
  for (const MultiIndex& alpha : level.indices) {
    double term = 1;
    for (int a = 0; a < level.d; ++a)
      term *= hx[a][alpha[a]] * hy[a][alpha[a]];
    acc += term;
  }
  return acc;
}

}  // namespace

std::int64_t eigen_multiplicity(int k, int d) {
  // binomial(k + d - 1, d - 1); d stays small so the product form is exact
  std::int64_t m = 1;
  for (int j = 1; j < d; ++j) m = m * (k + j) / j;
  return m;
}

EigenLevel enumerate_eigen_multiindices(int lambda, int d) {
  if (d < 1) throw DomainError("eigen level: dimension must be positive");
  if (lambda < d || (lambda - d) % 2 != 0)
    throw ParityError("eigen level: eigenvalue must lie in 2N0 + d");
  EigenLevel level;
  level.lambda = lambda;
  level.d = d;
  level.k = (lambda - d) / 2;
  level.indices.reserve(static_cast<std::size_t>(eigen_multiplicity(level.k, d)));
  MultiIndex prefix;
  compositions_desc(level.k, d, prefix, level.indices);
  return level;
}

double hermite_projection_kernel(int lambda, int d, std::span<const double> x,
                                 std::span<const double> y) {
  if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d)
    throw DomainError("projection kernel: point dimension mismatch");
  EigenLevel level = enumerate_eigen_multiindices(lambda, d);
  auto hx = bank_rows(x, level.k);
  auto hy = bank_rows(y, level.k);
  return level_kernel(level, hx, hy);
}

ProjectionResult apply_projection(const EigenLevel& level,
                                  const GridFunction& f) {
  f.validate();
  if (f.grid.dim() != level.d)
    throw DomainError("projection: grid dimension does not match level");

  ProjectionResult result;
  result.projected.grid = f.grid;
  result.projected.values.assign(f.values.size(), 0.0);

  // the local wavenumber peaks at sqrt(lambda); flag grids that cannot
  // resolve that oscillation
  double nyquist = kPi / std::sqrt(static_cast<double>(level.lambda));
  for (int a = 0; a < f.grid.dim(); ++a)
    if (f.grid.step(a) > nyquist) result.undersampled = true;

  // per-axis tables of h_j at the grid coordinates
  std::vector<std::vector<std::vector<double>>> table(level.d);
  for (int a = 0; a < level.d; ++a) {
    auto coords = f.grid.axis_coords(a);
    table[a].resize(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      HermiteBank bank(level.k, coords[i]);
      table[a][i].resize(level.k + 1);
      for (int j = 0; j <= level.k; ++j) table[a][i][j] = bank.value(j);
    }
  }

  std::size_t total = f.grid.size();
  std::vector<double> phi(total);
  std::vector<int> idx;
  for (const MultiIndex& alpha : level.indices) {
    std::complex<double> coeff = 0;
    for (std::size_t i = 0; i < total; ++i) {
      f.grid.unflatten(i, idx);
      double v = 1;
      for (int a = 0; a < level.d; ++a) v *= table[a][idx[a]][alpha[a]];
      phi[i] = v;
      coeff += f.grid.weight(i) * f.values[i] * v;
    }
    for (std::size_t i = 0; i < total; ++i)
      result.projected.values[i] += coeff * phi[i];
  }
  return result;
}

double bochner_riesz_kernel_H(const RieszWeighting& w, int d,
                              std::span<const double> x,
                              std::span<const double> y) {
  if (w.delta < 0) throw DomainError("riesz weighting: order must be >= 0");
  if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d)
    throw DomainError("riesz kernel: point dimension mismatch");
  if (w.lambda <= d) return 0.0;

  int k_cap = static_cast<int>(std::floor((w.lambda - d) / 2));
  if (2 * k_cap + d >= w.lambda) k_cap -= 1;  // strictly below threshold
  if (k_cap < 0) return 0.0;

  auto hx = bank_rows(x, k_cap);
  auto hy = bank_rows(y, k_cap);

  double acc = 0;
  for (int k = 0; k <= k_cap; ++k) {
    int lam = 2 * k + d;
    double weight = std::pow(1.0 - lam / w.lambda, w.delta);
    EigenLevel level = enumerate_eigen_multiindices(lam, d);
    acc += weight * level_kernel(level, hx, hy);
  }
  return acc;
}

double cross_hermite_integral(int u, int v, double l) {
  if (u == v) throw DomainError("cross integral: equal orders are undefined");
  if (u < 0 || v < 0 || !(l > 0))
    throw DomainError("cross integral: need u,v >= 0 and l > 0");
  if ((u + v) % 2 != 0) return 0.0;

  int top = std::max(u, v) + 1;
  HermiteBank bank(top, l);
  double hu = bank.value(u), hv = bank.value(v);
  double hu1 = bank.value(u + 1), hv1 = bank.value(v + 1);
  double bracket =
      std::sqrt(u + 1.0) * hu1 * hv - std::sqrt(v + 1.0) * hu * hv1;
  return 2.0 / (std::sqrt(2.0) * (u - v)) * bracket;
}

double projection_parseval(int lambda, int d, const Grid& grid) {
  grid.validate();
  if (grid.dim() != d)
    throw DomainError("parseval: grid dimension does not match level");
  EigenLevel level = enumerate_eigen_multiindices(lambda, d);

  // 1D Gram matrices per axis under the grid's trapezoid rule
  std::vector<std::vector<double>> gram(d);
  for (int a = 0; a < d; ++a) {
    auto coords = grid.axis_coords(a);
    double h = grid.step(a);
    int m = level.k + 1;
    gram[a].assign(static_cast<std::size_t>(m) * m, 0.0);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      HermiteBank bank(level.k, coords[i]);
      double w = (i == 0 || i + 1 == coords.size()) ? 0.5 * h : h;
      std::vector<double> row(m);
      for (int j = 0; j < m; ++j) row[j] = bank.value(j);
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
          gram[a][static_cast<std::size_t>(p) * m + q] += w * row[p] * row[q];
    }
  }

  int m = level.k + 1;
  double acc = 0;
  for (const MultiIndex& alpha : level.indices)
    for (const MultiIndex& beta : level.indices) {
      double g = 1;
      for (int a = 0; a < d; ++a)
        g *= gram[a][static_cast<std::size_t>(alpha[a]) * m + beta[a]];
      acc += g * g;
    }
  return acc;
}

}  // namespace hrl
