#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hrl/grid.hpp"

namespace hrl {

using MultiIndex = std::vector<int>;

// One eigenspace of the harmonic oscillator: eigenvalue lambda = 2k + d with
// every multi-index alpha, |alpha| = k, listed in descending lexicographic
// order starting from (k, 0, ..., 0).
struct EigenLevel {
  int lambda = 0;
  int d = 0;
  int k = 0;
  std::vector<MultiIndex> indices;
};

struct RieszWeighting {
  double lambda = 0;
  double delta = 0;
};

std::int64_t eigen_multiplicity(int k, int d);

EigenLevel enumerate_eigen_multiindices(int lambda, int d);

double hermite_projection_kernel(int lambda, int d, std::span<const double> x,
                                 std::span<const double> y);

struct ProjectionResult {
  GridFunction projected;
  bool undersampled = false;
};

ProjectionResult apply_projection(const EigenLevel& level,
                                  const GridFunction& f);

double bochner_riesz_kernel_H(const RieszWeighting& w, int d,
                              std::span<const double> x,
                              std::span<const double> y);

// Integral of h_u h_v over [-l, l] in closed form; undefined at u = v.
double cross_hermite_integral(int u, int v, double l);

// Grid-quadrature value of the double integral of the squared projection
// kernel, which factorizes through per-axis Gram matrices on a tensor grid.
// Equals the eigenspace dimension up to quadrature error.
double projection_parseval(int lambda, int d, const Grid& grid);

}  // namespace hrl
